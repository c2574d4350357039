#pragma once

#include "sda/exactmat.hpp"
#include "sda/schemes.hpp"

#include <map>
#include <optional>
#include <set>
#include <stop_token>
#include <string>
#include <vector>

namespace sda {

enum class Decision { Yes, No, Unknown };
std::string to_string(Decision d);

struct RelaxReport {
  bool r1 = false;  // diagonal blocks are diagonal
  bool r2 = false;  // edge blocks vanish off the edges of A
  bool r3 = false;  // equal block row sums
  bool r4 = false;  // equal block column sums
  bool r5 = false;  // total sum p^2
  bool r6 = false;  // every block sums to 1
  bool nonnegative = false;
  bool symmetric = false;
  bool psd = false;
  bool integral = false;
  std::vector<std::string> witnesses;

  bool relaxation() const { return r1 && r2 && r3 && r4 && r5; }
  bool sdp_matrix() const { return relaxation() && nonnegative && psd; }
  bool aip_matrix() const { return relaxation() && integral; }
};

namespace detail {

inline bool near(const Rational& a, const Rational& b, double, double) { return a == b; }
inline bool near(const Integer& a, const Integer& b, double, double) { return a == b; }
inline bool near(double a, double b, double tol, double scale) {
  return std::abs(a - b) <= tol * std::max(1.0, scale);
}
inline bool is_integral(const Rational& q, double) { return denominator(q) == 1; }
inline bool is_integral(const Integer&, double) { return true; }
inline bool is_integral(double x, double tol) { return std::abs(x - std::round(x)) <= tol; }

}  // namespace detail

template <typename Scalar>
RelaxReport check_relaxation(const Matrix<Scalar>& m, const Digraph& x, const Digraph& a,
                             double tol = kDefaultTol, bool check_psd = true) {
  const std::size_t p = x.size(), n = a.size();
  if (static_cast<std::size_t>(m.rows()) != p * n || static_cast<std::size_t>(m.cols()) != p * n)
    throw DimensionError("check_relaxation: matrix is not pn x pn");
  RelaxReport r;
  auto at = [&](std::size_t xi, std::size_t ai, std::size_t yi, std::size_t bi) -> const Scalar& {
    return m(xi * n + ai, yi * n + bi);
  };
  auto entry = [](std::size_t xi, std::size_t ai, std::size_t yi, std::size_t bi) {
    return "((" + std::to_string(xi) + "," + std::to_string(ai) + "),(" + std::to_string(yi) + "," +
           std::to_string(bi) + "))";
  };
  const Scalar zero(0);
  const double scale = static_cast<double>(p * p);

  r.r1 = true;
  for (std::size_t xi = 0; xi < p && r.r1; ++xi)
    for (std::size_t ai = 0; ai < n && r.r1; ++ai)
      for (std::size_t bi = 0; bi < n; ++bi)
        if (ai != bi && !detail::near(at(xi, ai, xi, bi), zero, tol, 1)) {
          r.r1 = false;
          r.witnesses.push_back("r1: nonzero off-diagonal entry " + entry(xi, ai, xi, bi));
          break;
        }

  r.r2 = true;
  for (auto [xi, yi] : x.edges()) {
    for (std::size_t ai = 0; ai < n && r.r2; ++ai)
      for (std::size_t bi = 0; bi < n; ++bi)
        if (!a.has_edge(ai, bi) && !detail::near(at(xi, ai, yi, bi), zero, tol, 1)) {
          r.r2 = false;
          r.witnesses.push_back("r2: nonzero non-edge entry " + entry(xi, ai, yi, bi));
          break;
        }
    if (!r.r2) break;
  }

  // rowsum(x)[k] = sum_b M(k, (x,b)); colsum(x)[k] = sum_b M((x,b), k)
  std::vector<Vector<Scalar>> rowsum(p, Vector<Scalar>::Zero(p * n)), colsum(p, Vector<Scalar>::Zero(p * n));
  for (std::size_t xi = 0; xi < p; ++xi)
    for (std::size_t bi = 0; bi < n; ++bi) {
      rowsum[xi] += m.col(xi * n + bi);
      colsum[xi] += m.row(xi * n + bi).transpose();
    }
  auto all_equal = [&](const std::vector<Vector<Scalar>>& sums, const char* tag, bool& flag) {
    flag = true;
    for (std::size_t xi = 1; xi < p && flag; ++xi)
      for (std::size_t k = 0; k < p * n; ++k)
        if (!detail::near(sums[xi](k), sums[0](k), tol, 1)) {
          flag = false;
          r.witnesses.push_back(std::string(tag) + ": block sums of x=0 and x=" + std::to_string(xi) +
                                " differ at index " + std::to_string(k));
          break;
        }
  };
  all_equal(rowsum, "r3", r.r3);
  all_equal(colsum, "r4", r.r4);

  const Scalar total = m.sum();
  r.r5 = detail::near(total, Scalar(static_cast<long>(p * p)), tol, scale);
  if (!r.r5) r.witnesses.push_back("r5: total sum differs from p^2");

  r.r6 = true;
  for (std::size_t xi = 0; xi < p && r.r6; ++xi)
    for (std::size_t yi = 0; yi < p; ++yi)
      if (!detail::near(m.block(xi * n, yi * n, n, n).sum(), Scalar(1), tol, 1)) {
        r.r6 = false;
        r.witnesses.push_back("r6: block (" + std::to_string(xi) + "," + std::to_string(yi) + ") sum differs from 1");
        break;
      }

  r.nonnegative = true;
  r.integral = true;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (r.nonnegative && m(i, j) < zero && !detail::near(m(i, j), zero, tol, 1)) {
        r.nonnegative = false;
        r.witnesses.push_back("negative entry at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
      if (r.integral && !detail::is_integral(m(i, j), tol)) r.integral = false;
    }

  r.symmetric = true;
  for (Eigen::Index i = 0; i < m.rows() && r.symmetric; ++i)
    for (Eigen::Index j = i + 1; j < m.cols(); ++j)
      if (!detail::near(m(i, j), m(j, i), tol, 1)) {
        r.symmetric = false;
        break;
      }
  if (check_psd) {
    r.psd = r.symmetric && psd_check(to_float(m), tol);
    if (!r.psd) r.witnesses.push_back(r.symmetric ? "not positive semidefinite" : "not symmetric");
  }
  return r;
}

RatMatrix hom_to_sdp_matrix(const VertexMap& f, const Digraph& x, const Digraph& a);
IntMatrix hom_to_aip_matrix(const VertexMap& f, const Digraph& x, const Digraph& a);

// (Q_f (x) Q_g^T) m (Q_f^T (x) Q_g) for f: x' -> x and g: a -> a'.
template <typename Scalar>
Matrix<Scalar> transport(const Matrix<Scalar>& m, const VertexMap& f, const Digraph& xprime,
                         const Digraph& x, const VertexMap& g, const Digraph& a, const Digraph& aprime) {
  if (!is_homomorphism(f, xprime, x)) throw PreconditionError("transport: f is not a homomorphism x' -> x");
  if (!is_homomorphism(g, a, aprime)) throw PreconditionError("transport: g is not a homomorphism a -> a'");
  const std::size_t p = x.size(), n = a.size();
  if (static_cast<std::size_t>(m.rows()) != p * n || static_cast<std::size_t>(m.cols()) != p * n)
    throw DimensionError("transport: matrix is not pn x pn");
  const Matrix<Scalar> qf = q_matrix<Scalar>(f);
  const Matrix<Scalar> qg = q_matrix<Scalar>(g);
  const Matrix<Scalar> left = kron(qf, qg.transpose());
  const Matrix<Scalar> right = kron(qf.transpose(), qg);
  return left * m * right;
}

// ------------------------------------------------------------ orbital LP

struct OrbitalLpResult {
  Decision decision = Decision::Unknown;
  std::optional<OrbitalMatrix> v;
  bool exact = false;
  std::string note;
};

// Builds the LP in the variables v (row-major over orbital pairs).
LpProblem orbital_lp(const OrbitalStructure& ox, const RatMatrix& px, const OrbitalStructure& oa,
                     const RatMatrix& pa, const Rational& c1_slack = 0);

OrbitalLpResult sdp_accepts_orbital(const OrbitalStructure& ox, const CharacterTable& px,
                                    const OrbitalStructure& oa, const CharacterTable& pa,
                                    double tol = kDefaultTol);

// Like sdp_accepts_orbital on exact tables, but the returned V has maximal
// support among all feasible orbital matrices.
OrbitalLpResult sdp_max_support_orbital(const OrbitalStructure& ox, const CharacterTable& px,
                                        const OrbitalStructure& oa, const CharacterTable& pa);

// P V P~^T, the spectrum pattern of the balanced matrix with orbital matrix V.
FloatMatrix orbital_spectrum(const FloatMatrix& v, const CharacterTable& px, const CharacterTable& pa);
RatMatrix orbital_spectrum_exact(const OrbitalMatrix& v, const CharacterTable& px, const CharacterTable& pa);

// ------------------------------------------------------------ numeric SDP

struct NumericSdpOptions {
  double tol = kDefaultTol;
  std::size_t max_iter = 100000;
  std::size_t max_dim = 400;
};

struct NumericSdpResult {
  std::optional<FloatMatrix> m;  // nullopt means UNKNOWN
  double residual = 0;
  std::size_t iterations = 0;
};

NumericSdpResult sdp_feasible_numeric(const Digraph& x, const Digraph& a, NumericSdpOptions options = {},
                                      std::stop_token stop = {});

// ------------------------------------------------------------ AIP

struct AipAssignment {
  IntMatrix vertex;  // p x n, mu_{x,a}
  IntMatrix edge;    // |E(X)| x |E(A)|, mu_{e,f}
};

struct ForcedZeros {
  std::set<std::pair<std::size_t, std::size_t>> vertex;  // (x, a)
  std::set<std::pair<std::size_t, std::size_t>> edge;    // (edge index in X, edge index in A)
};

std::optional<AipAssignment> aip_solve(const Digraph& x, const Digraph& a, const ForcedZeros& zeros = {});
bool aip_satisfied(const AipAssignment& mu, const Digraph& x, const Digraph& a);
IntMatrix assemble_aip_matrix(const AipAssignment& mu, const Digraph& x, const Digraph& a);
// N restricted to the diagonal blocks and the edge blocks of X, i.e. N o ((I + adj X) (x) J).
IntMatrix refinement_mask(const IntMatrix& n, const Digraph& x, std::size_t target_size);

// ------------------------------------------------------------ SDA

struct SdaOptions {
  double tol = kDefaultTol;
  NumericSdpOptions numeric;
  HomSearchGuard hom_guard;
  std::size_t materialize_limit = 2000;  // pn above which M is kept in orbital form only
};

struct SdaWitness {
  std::optional<RatMatrix> m_exact;
  std::optional<FloatMatrix> m_numeric;
  std::optional<OrbitalMatrix> v;
  std::optional<AipAssignment> mu;
  std::optional<IntMatrix> n;
  bool refinement = false;
};

struct SdaResult {
  Decision decision = Decision::Unknown;
  std::string path;  // "exact" or "numeric"
  std::string route;  // which construction produced the answer
  std::optional<SdaWitness> witness;
  std::optional<double> residual;
  std::string note;
};

SdaResult sda_accepts(const Digraph& x, const Digraph& a, SdaOptions options = {}, std::stop_token stop = {});

struct SdpDecision {
  Decision decision = Decision::Unknown;
  std::string path;
  std::string route;
  std::optional<OrbitalMatrix> v;
  std::optional<RatMatrix> m_exact;
  std::optional<FloatMatrix> m_numeric;
  std::optional<double> residual;
  std::string note;
};

SdpDecision sdp_decide(const Digraph& x, const Digraph& a, SdaOptions options = {}, std::stop_token stop = {});

}  // namespace sda
