#include "sda/exactmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace sda {

Integer parse_integer(std::string_view text) {
  std::size_t start = (!text.empty() && (text[0] == '-' || text[0] == '+')) ? 1 : 0;
  if (start == text.size()) throw PreconditionError("malformed integer '" + std::string(text) + "'");
  for (std::size_t i = start; i < text.size(); ++i)
    if (text[i] < '0' || text[i] > '9')
      throw PreconditionError("malformed integer '" + std::string(text) + "'");
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return Integer(digits);
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw PreconditionError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);  // canonicalized by the two-argument constructor
}

std::string to_string(const Rational& q) { return q.str(); }
std::string to_string(const Integer& z) { return z.str(); }

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return Integer(0);
  Integer out = 1;
  k = std::min(k, n - k);
  for (long i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

Integer factorial(long n) {
  Integer out = 1;
  for (long i = 2; i <= n; ++i) out *= i;
  return out;
}

Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw PreconditionError("non-finite value");
  return Rational(x);
}

// ---------------------------------------------------------------- eigen

SymmetricEigen jacobi_eigen(const FloatMatrix& m, double tol) {
  if (m.rows() != m.cols()) throw DimensionError("eig_sym: matrix is not square");
  const Eigen::Index n = m.rows();
  const double scale = std::max(1.0, m.norm());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol * scale)
    throw DimensionError("eig_sym: matrix is not symmetric within tolerance");

  FloatMatrix a = 0.5 * (m + m.transpose());
  FloatMatrix v = FloatMatrix::Identity(n, n);
  const double frob = std::max(a.norm(), 1e-300);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(2 * off) <= 1e-15 * frob) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double tau = (a(q, q) - a(p, p)) / (2 * apq);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
        const double c = 1 / std::sqrt(1 + t * t);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i) > a(j, j); });
  SymmetricEigen out{FloatVector(n), FloatMatrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[k], order[k]);
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

std::vector<EigenCluster> cluster_values(const std::vector<double>& descending, double tol) {
  std::vector<EigenCluster> clusters;
  std::size_t i = 0;
  while (i < descending.size()) {
    std::size_t j = i + 1;
    double sum = descending[i];
    while (j < descending.size() && descending[j - 1] - descending[j] <= tol) sum += descending[j++];
    clusters.push_back({sum / static_cast<double>(j - i), j - i});
    i = j;
  }
  return clusters;
}

Spectrum eig_sym(const FloatMatrix& m, double tol) {
  SymmetricEigen e = jacobi_eigen(m, tol);
  Spectrum out;
  out.values.assign(e.values.data(), e.values.data() + e.values.size());
  out.clusters = cluster_values(out.values, tol * std::max(1.0, m.norm()));
  return out;
}

double min_eigenvalue(const FloatMatrix& m, double tol) {
  if (m.rows() == 0) return 0;
  SymmetricEigen e = jacobi_eigen(m, tol);
  return e.values(e.values.size() - 1);
}

bool psd_check(const FloatMatrix& m, double tol) {
  return min_eigenvalue(m, tol) >= -tol * std::max(1.0, m.norm());
}

// ---------------------------------------------------------------- hermite

namespace {

// Column of the stacked matrix [H; U], sparse and sorted by row index.
// Rows [0, m) belong to H, rows [m, m + k) to U.
using SparseColumn = std::vector<std::pair<Eigen::Index, Integer>>;

void axpy(SparseColumn& target, const Integer& factor, const SparseColumn& source) {
  // target -= factor * source
  SparseColumn merged;
  merged.reserve(target.size() + source.size());
  std::size_t i = 0, j = 0;
  while (i < target.size() || j < source.size()) {
    if (j == source.size() || (i < target.size() && target[i].first < source[j].first)) {
      merged.push_back(std::move(target[i++]));
    } else if (i == target.size() || source[j].first < target[i].first) {
      merged.emplace_back(source[j].first, -factor * source[j].second);
      ++j;
    } else {
      Integer value = target[i].second - factor * source[j].second;
      if (value != 0) merged.emplace_back(target[i].first, std::move(value));
      ++i;
      ++j;
    }
  }
  target = std::move(merged);
}

void negate(SparseColumn& col) {
  for (auto& entry : col) entry.second = -entry.second;
}

const Integer* lookup(const SparseColumn& col, Eigen::Index row) {
  auto it = std::lower_bound(col.begin(), col.end(), row,
                             [](const auto& entry, Eigen::Index r) { return entry.first < r; });
  return (it != col.end() && it->first == row) ? &it->second : nullptr;
}

struct SparseHermite {
  Eigen::Index rows = 0;
  std::vector<SparseColumn> cols;
  std::vector<Eigen::Index> pivot_rows;
};

// Pivot entries whose left neighbours exceed this many bits get reduced.
constexpr unsigned kReductionBits = 96;

SparseHermite sparse_hermite(Eigen::Index m, std::vector<SparseColumn> columns) {
  const Eigen::Index k = static_cast<Eigen::Index>(columns.size());
  SparseHermite out;
  out.rows = m;
  out.cols = std::move(columns);
  for (Eigen::Index j = 0; j < k; ++j) out.cols[j].emplace_back(m + j, Integer(1));

  Eigen::Index c = 0;
  for (Eigen::Index i = 0; i < m && c < k; ++i) {
    // Active columns c..k-1 vanish on rows < i, so their first entry decides.
    auto nonzero_here = [&](Eigen::Index j) {
      return !out.cols[j].empty() && out.cols[j].front().first == i;
    };
    while (true) {
      std::vector<Eigen::Index> live;
      for (Eigen::Index j = c; j < k; ++j)
        if (nonzero_here(j)) live.push_back(j);
      if (live.size() <= 1) break;
      Eigen::Index best = live[0];
      for (Eigen::Index j : live)
        if (abs(out.cols[j].front().second) < abs(out.cols[best].front().second)) best = j;
      const Integer pivot = out.cols[best].front().second;
      for (Eigen::Index j : live) {
        if (j == best) continue;
        Integer q = out.cols[j].front().second / pivot;
        axpy(out.cols[j], q, out.cols[best]);
      }
    }
    Eigen::Index found = -1;
    for (Eigen::Index j = c; j < k; ++j)
      if (nonzero_here(j)) found = j;
    if (found < 0) continue;
    std::swap(out.cols[c], out.cols[found]);
    if (out.cols[c].front().second < 0) negate(out.cols[c]);
    const Integer& pivot = out.cols[c].front().second;
    const unsigned pivot_bits = static_cast<unsigned>(msb(pivot));
    for (Eigen::Index l = 0; l < c; ++l) {
      const Integer* entry = lookup(out.cols[l], i);
      if (entry && msb(abs(*entry)) > pivot_bits + kReductionBits) {
        Integer q = *entry / pivot;
        axpy(out.cols[l], q, out.cols[c]);
      }
    }
    out.pivot_rows.push_back(i);
    ++c;
  }
  return out;
}

std::vector<SparseColumn> dense_columns(const IntMatrix& a) {
  std::vector<SparseColumn> cols(a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (a(i, j) != 0) cols[j].emplace_back(i, a(i, j));
  return cols;
}

std::optional<IntVector> solve_with(const SparseHermite& form, Eigen::Index k, const IntVector& b) {
  const Eigen::Index m = form.rows;
  std::vector<Integer> residual(b.data(), b.data() + m);
  std::vector<Integer> y(form.pivot_rows.size());
  std::size_t next = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (next < form.pivot_rows.size() && form.pivot_rows[next] == i) {
      const SparseColumn& col = form.cols[next];
      const Integer& pivot = col.front().second;
      if (residual[i] % pivot != 0) return std::nullopt;
      y[next] = residual[i] / pivot;
      if (y[next] != 0)
        for (const auto& [row, value] : col)
          if (row < m) residual[row] -= y[next] * value;
      ++next;
    } else if (residual[i] != 0) {
      return std::nullopt;
    }
  }
  IntVector x = IntVector::Zero(k);
  for (std::size_t c = 0; c < y.size(); ++c) {
    if (y[c] == 0) continue;
    for (const auto& [row, value] : form.cols[c])
      if (row >= m) x(row - m) += y[c] * value;
  }
  return x;
}

}  // namespace

ColumnHermiteForm column_hermite_form(const IntMatrix& a) {
  SparseHermite sparse = sparse_hermite(a.rows(), dense_columns(a));
  const Eigen::Index m = a.rows(), k = a.cols();
  ColumnHermiteForm out{IntMatrix::Zero(m, k), IntMatrix::Zero(k, k), sparse.pivot_rows};
  for (Eigen::Index j = 0; j < k; ++j)
    for (const auto& [row, value] : sparse.cols[j]) {
      if (row < m)
        out.h(row, j) = value;
      else
        out.u(row - m, j) = value;
    }
  return out;
}

std::optional<IntVector> hnf_solve(const IntMatrix& a, const IntVector& b) {
  if (a.rows() != b.size()) throw DimensionError("hnf_solve: rhs length differs from row count");
  return solve_with(sparse_hermite(a.rows(), dense_columns(a)), a.cols(), b);
}

std::optional<IntVector> hnf_solve_sparse(Eigen::Index rows, Eigen::Index cols,
                                          const std::vector<SparseEntry>& entries, const IntVector& b) {
  if (rows != b.size()) throw DimensionError("hnf_solve: rhs length differs from row count");
  std::vector<std::vector<std::pair<Eigen::Index, Integer>>> columns(cols);
  for (const auto& e : entries) {
    if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols)
      throw DimensionError("hnf_solve: sparse entry out of range");
    columns[e.col].emplace_back(e.row, e.value);
  }
  for (auto& col : columns) {
    std::sort(col.begin(), col.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    std::vector<std::pair<Eigen::Index, Integer>> merged;
    for (auto& entry : col) {
      if (!merged.empty() && merged.back().first == entry.first)
        merged.back().second += entry.second;
      else
        merged.push_back(std::move(entry));
    }
    std::erase_if(merged, [](const auto& entry) { return entry.second == 0; });
    col = std::move(merged);
  }
  return solve_with(sparse_hermite(rows, std::move(columns)), cols, b);
}

// ---------------------------------------------------------------- simplex

void LpProblem::validate() const {
  auto check = [&](const std::vector<LinearConstraint>& rows) {
    for (const auto& row : rows)
      if (row.coeffs.size() != variables)
        throw DimensionError("LpProblem: constraint row length differs from variable count");
  };
  check(equalities);
  check(inequalities);
  if (!nonnegative.empty() && nonnegative.size() != variables)
    throw DimensionError("LpProblem: nonnegativity flags differ from variable count");
}

bool LpProblem::satisfied_by(const std::vector<Rational>& x) const {
  if (x.size() != variables) return false;
  auto dot = [&](const LinearConstraint& row) {
    Rational s = 0;
    for (std::size_t j = 0; j < variables; ++j)
      if (row.coeffs[j] != 0) s += row.coeffs[j] * x[j];
    return s;
  };
  for (const auto& row : equalities)
    if (dot(row) != row.rhs) return false;
  for (const auto& row : inequalities)
    if (dot(row) < row.rhs) return false;
  for (std::size_t j = 0; j < variables; ++j)
    if ((nonnegative.empty() || nonnegative[j]) && x[j] < 0) return false;
  return true;
}

std::optional<std::vector<Rational>> lp_feasible(const LpProblem& problem, std::stop_token stop) {
  problem.validate();
  const std::size_t nv = problem.variables;
  auto is_nonneg = [&](std::size_t j) { return problem.nonnegative.empty() || problem.nonnegative[j]; };

  // Standard form: columns for x+ (and x- for free variables), then surplus columns.
  std::vector<std::size_t> plus(nv), minus(nv, SIZE_MAX);
  std::size_t ncols = 0;
  for (std::size_t j = 0; j < nv; ++j) {
    plus[j] = ncols++;
    if (!is_nonneg(j)) minus[j] = ncols++;
  }
  const std::size_t surplus0 = ncols;
  ncols += problem.inequalities.size();
  const std::size_t m = problem.equalities.size() + problem.inequalities.size();
  const std::size_t total = ncols + m;  // plus artificial columns

  std::vector<std::vector<Rational>> tab(m, std::vector<Rational>(total + 1));
  std::size_t r = 0;
  auto load = [&](const LinearConstraint& row, long surplus) {
    auto& t = tab[r];
    for (std::size_t j = 0; j < nv; ++j) {
      if (row.coeffs[j] == 0) continue;
      t[plus[j]] = row.coeffs[j];
      if (minus[j] != SIZE_MAX) t[minus[j]] = -row.coeffs[j];
    }
    if (surplus >= 0) t[static_cast<std::size_t>(surplus)] = -1;
    t[total] = row.rhs;
    if (t[total] < 0)
      for (auto& value : t) value = -value;
    t[ncols + r] = 1;
    ++r;
  };
  for (const auto& row : problem.equalities) load(row, -1);
  for (std::size_t i = 0; i < problem.inequalities.size(); ++i)
    load(problem.inequalities[i], static_cast<long>(surplus0 + i));

  std::vector<std::size_t> basis(m);
  std::iota(basis.begin(), basis.end(), ncols);
  std::vector<Rational> cost(total);
  for (std::size_t j = 0; j < ncols; ++j)
    for (std::size_t i = 0; i < m; ++i)
      if (tab[i][j] != 0) cost[j] -= tab[i][j];

  while (true) {
    if (stop.stop_requested()) return std::nullopt;
    std::size_t enter = SIZE_MAX;
    for (std::size_t j = 0; j < total; ++j)
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    if (enter == SIZE_MAX) break;
    std::size_t leave = SIZE_MAX;
    Rational best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (tab[i][enter] <= 0) continue;
      Rational ratio = tab[i][total] / tab[i][enter];
      if (leave == SIZE_MAX || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == SIZE_MAX) break;  // unreachable: the Phase-I objective is bounded below

    auto& prow = tab[leave];
    const Rational pivot = prow[enter];
    for (auto& value : prow)
      if (value != 0) value /= pivot;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || tab[i][enter] == 0) continue;
      const Rational factor = tab[i][enter];
      for (std::size_t j = 0; j <= total; ++j)
        if (prow[j] != 0) tab[i][j] -= factor * prow[j];
    }
    if (cost[enter] != 0) {
      const Rational factor = cost[enter];
      for (std::size_t j = 0; j < total; ++j)
        if (prow[j] != 0) cost[j] -= factor * prow[j];
    }
    basis[leave] = enter;
  }

  std::vector<Rational> value(total);
  for (std::size_t i = 0; i < m; ++i) value[basis[i]] = tab[i][total];
  for (std::size_t j = ncols; j < total; ++j)
    if (value[j] != 0) return std::nullopt;

  std::vector<Rational> x(nv);
  for (std::size_t j = 0; j < nv; ++j) {
    x[j] = value[plus[j]];
    if (minus[j] != SIZE_MAX) x[j] -= value[minus[j]];
  }
  return x;
}

}  // namespace sda
