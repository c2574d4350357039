#pragma once

#include "sda/types.hpp"

#include <optional>
#include <stop_token>
#include <vector>

namespace sda {

template <typename DA, typename DB>
Matrix<typename DA::Scalar> kron(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using Scalar = typename DA::Scalar;
  Matrix<Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b.template cast<Scalar>();
  return out;
}

template <typename DA, typename DB>
Matrix<typename DA::Scalar> schur(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("schur: operand shapes differ");
  return a.cwiseProduct(b.template cast<typename DA::Scalar>());
}

// supp(a) contained in supp(b).
template <typename DA, typename DB>
bool support_subset(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("support_subset: operand shapes differ");
  using SA = typename DA::Scalar;
  using SB = typename DB::Scalar;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != SA(0) && b(i, j) == SB(0)) return false;
  return true;
}

struct EigenCluster {
  double value;
  std::size_t multiplicity;
};

struct Spectrum {
  std::vector<double> values;  // descending, repeated by multiplicity
  std::vector<EigenCluster> clusters;
};

struct SymmetricEigen {
  FloatVector values;    // descending
  FloatMatrix vectors;   // column k belongs to values(k)
};

// Cyclic Jacobi; throws DimensionError for non-square or non-symmetric input.
SymmetricEigen jacobi_eigen(const FloatMatrix& m, double tol = kDefaultTol);
Spectrum eig_sym(const FloatMatrix& m, double tol = kDefaultTol);
std::vector<EigenCluster> cluster_values(const std::vector<double>& descending, double tol);
bool psd_check(const FloatMatrix& m, double tol = kDefaultTol);
double min_eigenvalue(const FloatMatrix& m, double tol = kDefaultTol);

struct ColumnHermiteForm {
  IntMatrix h;  // lower echelon: h = a * u
  IntMatrix u;  // unimodular
  std::vector<Eigen::Index> pivot_rows;  // pivot row of column k, k < rank
  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivot_rows.size()); }
};

ColumnHermiteForm column_hermite_form(const IntMatrix& a);

// Integer solution of a x = b, or nullopt when none exists.
std::optional<IntVector> hnf_solve(const IntMatrix& a, const IntVector& b);

struct SparseEntry {
  Eigen::Index row, col;
  Integer value;
};

// Same as hnf_solve for a rows x cols matrix given by its entries; duplicates add up.
std::optional<IntVector> hnf_solve_sparse(Eigen::Index rows, Eigen::Index cols,
                                          const std::vector<SparseEntry>& entries, const IntVector& b);

struct LinearConstraint {
  std::vector<Rational> coeffs;
  Rational rhs;
};

struct LpProblem {
  std::size_t variables = 0;
  std::vector<LinearConstraint> equalities;    // coeffs . x == rhs
  std::vector<LinearConstraint> inequalities;  // coeffs . x >= rhs
  std::vector<bool> nonnegative;               // empty means every variable is nonnegative

  void validate() const;
  bool satisfied_by(const std::vector<Rational>& x) const;
};

// Exact Phase-I simplex with Bland's rule. Returns a feasible point or nullopt.
// A stop request yields nullopt as well; callers that pass a token must check it.
std::optional<std::vector<Rational>> lp_feasible(const LpProblem& problem,
                                                 std::stop_token stop = {});

}  // namespace sda
