#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sda {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RatMatrix = Matrix<Rational>;
using IntMatrix = Matrix<Integer>;
using FloatMatrix = Eigen::MatrixXd;
using RatVector = Vector<Rational>;
using IntVector = Vector<Integer>;
using FloatVector = Eigen::VectorXd;

inline constexpr double kDefaultTol = 1e-8;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Invalid arguments that are not shape problems (wrong parameters, non-homomorphisms, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A configurable size limit was exceeded; `guard()` names it.
class GuardError : public Error {
 public:
  GuardError(std::string guard, const std::string& detail)
      : Error("guard '" + guard + "' violated: " + detail), guard_(std::move(guard)) {}
  const std::string& guard() const { return guard_; }

 private:
  std::string guard_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& detail)
      : Error("line " + std::to_string(line) + ": " + detail), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Parses "a" or "a/b" into a canonical rational.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

Integer binomial(long n, long k);
Integer factorial(long n);

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(const Integer& z) { return z.convert_to<double>(); }
inline double to_double(double x) { return x; }

// Exact conversion of a finite double.
Rational exact_rational(double x);

template <typename Scalar>
FloatMatrix to_float(const Matrix<Scalar>& m) {
  FloatMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
  return out;
}

inline RatMatrix to_rational(const IntMatrix& m) { return m.cast<Rational>(); }

}  // namespace sda
