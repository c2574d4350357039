#include "sda/relax.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace sda {

std::string to_string(Decision d) {
  switch (d) {
    case Decision::Yes:
      return "YES";
    case Decision::No:
      return "NO";
    case Decision::Unknown:
      return "UNKNOWN";
  }
  return "UNKNOWN";
}

namespace {

template <typename Scalar>
Matrix<Scalar> hom_matrix(const VertexMap& f, const Digraph& x, const Digraph& a) {
  if (!is_homomorphism(f, x, a)) throw PreconditionError("map is not a homomorphism");
  const std::size_t p = x.size(), n = a.size();
  Matrix<Scalar> m = Matrix<Scalar>::Zero(p * n, p * n);
  for (std::size_t u = 0; u < p; ++u)
    for (std::size_t v = 0; v < p; ++v) m(u * n + f(u), v * n + f(v)) = Scalar(1);
  return m;
}

}  // namespace

RatMatrix hom_to_sdp_matrix(const VertexMap& f, const Digraph& x, const Digraph& a) {
  return hom_matrix<Rational>(f, x, a);
}

IntMatrix hom_to_aip_matrix(const VertexMap& f, const Digraph& x, const Digraph& a) {
  return hom_matrix<Integer>(f, x, a);
}

// ------------------------------------------------------------ orbital LP

namespace {

void check_table_shapes(const OrbitalStructure& ox, std::size_t px, const OrbitalStructure& oa, std::size_t pa) {
  if (px != ox.count() || pa != oa.count())
    throw DimensionError("character table size differs from orbital count");
}

// Rational copy of a float table on a 2^-40 grid.
RatMatrix grid_rational(const FloatMatrix& m) {
  const double scale = std::ldexp(1.0, 40);
  RatMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out(i, j) = Rational(Integer(static_cast<long long>(std::llround(m(i, j) * scale))),
                           Integer(static_cast<long long>(scale)));
  return out;
}

bool forced_zero(const OrbitalStructure& ox, const OrbitalStructure& oa, std::size_t w, std::size_t wa) {
  return (ox.diagonal[w] && !oa.diagonal[wa]) || (ox.edge[w] && !oa.edge[wa]);
}

OrbitalMatrix unflatten(const std::vector<Rational>& x, std::size_t rows, std::size_t cols) {
  OrbitalMatrix v(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) v(i, j) = x[i * cols + j];
  return v;
}

}  // namespace

LpProblem orbital_lp(const OrbitalStructure& ox, const RatMatrix& px, const OrbitalStructure& oa,
                     const RatMatrix& pa, const Rational& c1_slack) {
  check_table_shapes(ox, static_cast<std::size_t>(px.rows()), oa, static_cast<std::size_t>(pa.rows()));
  const std::size_t dx = ox.count(), da = oa.count();
  LpProblem lp;
  lp.variables = dx * da;
  for (std::size_t w = 0; w < dx; ++w) {
    LinearConstraint row{std::vector<Rational>(lp.variables), Rational(1)};
    for (std::size_t wa = 0; wa < da; ++wa) row.coeffs[w * da + wa] = Rational(oa.sizes[wa]);
    lp.equalities.push_back(std::move(row));
  }
  for (std::size_t w = 0; w < dx; ++w)
    for (std::size_t wa = 0; wa < da; ++wa)
      if (forced_zero(ox, oa, w, wa)) {
        LinearConstraint row{std::vector<Rational>(lp.variables), Rational(0)};
        row.coeffs[w * da + wa] = 1;
        lp.equalities.push_back(std::move(row));
      }
  for (std::size_t sx = 0; sx < dx; ++sx)
    for (std::size_t sa = 0; sa < da; ++sa) {
      LinearConstraint row{std::vector<Rational>(lp.variables), -c1_slack};
      for (std::size_t w = 0; w < dx; ++w)
        for (std::size_t wa = 0; wa < da; ++wa) row.coeffs[w * da + wa] = px(sx, w) * pa(sa, wa);
      lp.inequalities.push_back(std::move(row));
    }
  return lp;
}

FloatMatrix orbital_spectrum(const FloatMatrix& v, const CharacterTable& px, const CharacterTable& pa) {
  return px.numeric * v * pa.numeric.transpose();
}

RatMatrix orbital_spectrum_exact(const OrbitalMatrix& v, const CharacterTable& px, const CharacterTable& pa) {
  if (!px.exact || !pa.exact) throw PreconditionError("orbital_spectrum_exact needs exact tables");
  return (*px.exact) * v * pa.exact->transpose();
}

OrbitalLpResult sdp_accepts_orbital(const OrbitalStructure& ox, const CharacterTable& px,
                                    const OrbitalStructure& oa, const CharacterTable& pa, double tol) {
  check_table_shapes(ox, px.size(), oa, pa.size());
  OrbitalLpResult result;
  if (px.exact && pa.exact) {
    result.exact = true;
    auto x = lp_feasible(orbital_lp(ox, *px.exact, oa, *pa.exact));
    if (!x) {
      result.decision = Decision::No;
      result.note = "orbital LP infeasible over the rationals";
      return result;
    }
    result.decision = Decision::Yes;
    result.v = unflatten(*x, ox.count(), oa.count());
    return result;
  }
  // Float tables: solve exactly on a rational grid with slack, then verify in floats.
  auto x = lp_feasible(orbital_lp(ox, grid_rational(px.numeric), oa, grid_rational(pa.numeric),
                                  exact_rational(tol)));
  if (!x) {
    result.note = "orbital LP on rounded tables infeasible; inconclusive";
    return result;
  }
  OrbitalMatrix v = unflatten(*x, ox.count(), oa.count());
  FloatMatrix spectrum = orbital_spectrum(to_float(v), px, pa);
  if (spectrum.minCoeff() < -10 * tol) {
    result.note = "float verification of the spectrum failed";
    return result;
  }
  result.decision = Decision::Yes;
  result.v = std::move(v);
  result.note = "verified in floating point";
  return result;
}

OrbitalLpResult sdp_max_support_orbital(const OrbitalStructure& ox, const CharacterTable& px,
                                        const OrbitalStructure& oa, const CharacterTable& pa) {
  if (!px.exact || !pa.exact) throw PreconditionError("maximal support needs exact tables");
  OrbitalLpResult base = sdp_accepts_orbital(ox, px, oa, pa);
  if (base.decision != Decision::Yes) return base;

  const std::size_t dx = ox.count(), da = oa.count(), nv = dx * da;
  // Homogenized system in (v, lambda): V mu = lambda 1, c1..c4, v_k >= 1.
  LpProblem hom = orbital_lp(ox, *px.exact, oa, *pa.exact);
  hom.variables = nv + 1;
  for (auto& row : hom.equalities) row.coeffs.push_back(Rational(0));
  for (std::size_t w = 0; w < dx; ++w) {
    hom.equalities[w].coeffs[nv] = -1;
    hom.equalities[w].rhs = 0;
  }
  for (auto& row : hom.inequalities) row.coeffs.push_back(Rational(0));

  std::vector<OrbitalMatrix> witnesses{*base.v};
  std::vector<char> positive(nv, 0);
  auto mark = [&](const OrbitalMatrix& v) {
    for (std::size_t k = 0; k < nv; ++k)
      if (v(k / da, k % da) != 0) positive[k] = 1;
  };
  mark(*base.v);
  for (std::size_t k = 0; k < nv; ++k) {
    if (positive[k] || forced_zero(ox, oa, k / da, k % da)) continue;
    LpProblem probe = hom;
    LinearConstraint lower{std::vector<Rational>(nv + 1), Rational(1)};
    lower.coeffs[k] = 1;
    probe.inequalities.push_back(std::move(lower));
    auto x = lp_feasible(probe);
    if (!x) continue;
    const Rational lambda = (*x)[nv];
    std::vector<Rational> scaled(x->begin(), x->begin() + static_cast<long>(nv));
    for (auto& value : scaled) value /= lambda;
    witnesses.push_back(unflatten(scaled, dx, da));
    mark(witnesses.back());
  }
  OrbitalMatrix mean = OrbitalMatrix::Zero(dx, da);
  for (const auto& v : witnesses) mean += v;
  mean /= Rational(static_cast<long>(witnesses.size()));
  base.v = std::move(mean);
  base.note = "maximal-support orbital solution";
  return base;
}

// ------------------------------------------------------------ numeric SDP

namespace {

struct Pattern {
  std::size_t p, n;
  Eigen::Matrix<char, Eigen::Dynamic, Eigen::Dynamic> zero;  // forced zero positions
};

Pattern zero_pattern(const Digraph& x, const Digraph& a) {
  const std::size_t p = x.size(), n = a.size();
  Pattern pat{p, n, decltype(Pattern::zero)::Zero(p * n, p * n)};
  for (std::size_t u = 0; u < p; ++u)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) pat.zero(u * n + i, u * n + j) = 1;
  for (auto [u, v] : x.edges())
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!a.has_edge(i, j)) {
          pat.zero(u * n + i, v * n + j) = 1;
          pat.zero(v * n + j, u * n + i) = 1;
        }
  return pat;
}

// Projection onto symmetric matrices with equal block row sums and total p^2.
FloatMatrix project_affine(const FloatMatrix& m, std::size_t p, std::size_t n) {
  const Eigen::Index d = static_cast<Eigen::Index>(p * n);
  FloatMatrix s = 0.5 * (m + m.transpose());
  // pi(s) = (block row average) - (global row average), with pi = (I - J/p) (x) J/n.
  auto apply_left = [&](const FloatMatrix& z) {
    FloatMatrix out(d, d);
    Eigen::RowVectorXd global = z.colwise().sum() / static_cast<double>(d);
    for (std::size_t u = 0; u < p; ++u) {
      Eigen::RowVectorXd local = z.middleRows(u * n, n).colwise().sum() / static_cast<double>(n);
      for (std::size_t i = 0; i < n; ++i) out.row(u * n + i) = local - global;
    }
    return out;
  };
  FloatMatrix ps = apply_left(s);
  FloatMatrix psp = apply_left(ps.transpose()).transpose();
  FloatMatrix out = s - ps - ps.transpose() + psp;
  const double total = out.sum();
  out.array() += (static_cast<double>(p * p) - total) / static_cast<double>(d * d);
  return out;
}

FloatMatrix project_cone_pattern(const FloatMatrix& m, const Pattern& pat) {
  FloatMatrix out = m.cwiseMax(0.0);
  for (Eigen::Index i = 0; i < out.rows(); ++i)
    for (Eigen::Index j = 0; j < out.cols(); ++j)
      if (pat.zero(i, j)) out(i, j) = 0;
  return out;
}

FloatMatrix project_psd(const FloatMatrix& m) {
  Eigen::SelfAdjointEigenSolver<FloatMatrix> eig(0.5 * (m + m.transpose()));
  FloatVector values = eig.eigenvalues().cwiseMax(0.0);
  return eig.eigenvectors() * values.asDiagonal() * eig.eigenvectors().transpose();
}

double violation(const FloatMatrix& m, const Pattern& pat) {
  double worst = std::max(0.0, -m.minCoeff());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (pat.zero(i, j)) worst = std::max(worst, std::abs(m(i, j)));
  worst = std::max(worst, (m - project_affine(m, pat.p, pat.n)).cwiseAbs().maxCoeff());
  return worst;
}

}  // namespace

NumericSdpResult sdp_feasible_numeric(const Digraph& x, const Digraph& a, NumericSdpOptions options,
                                      std::stop_token stop) {
  const std::size_t p = x.size(), n = a.size(), d = p * n;
  if (d > options.max_dim)
    throw GuardError("numeric_sdp_dimension", "pn = " + std::to_string(d) + " exceeds " +
                                                  std::to_string(options.max_dim));
  NumericSdpResult result;
  if (d == 0) return result;
  const Pattern pat = zero_pattern(x, a);
  FloatMatrix cur = FloatMatrix::Zero(d, d);
  FloatMatrix inc_affine = FloatMatrix::Zero(d, d), inc_cone = inc_affine, inc_psd = inc_affine;
  for (std::size_t it = 1; it <= options.max_iter; ++it) {
    if (stop.stop_requested()) break;
    FloatMatrix y = cur + inc_affine;
    cur = project_affine(y, p, n);
    inc_affine = y - cur;
    y = cur + inc_cone;
    cur = project_cone_pattern(y, pat);
    inc_cone = y - cur;
    y = cur + inc_psd;
    cur = project_psd(y);
    inc_psd = y - cur;
    result.iterations = it;
    if (it % 10 == 0 || it == options.max_iter) {
      result.residual = violation(cur, pat);
      if (result.residual < options.tol) {
        result.m = cur;
        return result;
      }
    }
  }
  return result;
}

// ------------------------------------------------------------ AIP

std::optional<AipAssignment> aip_solve(const Digraph& x, const Digraph& a, const ForcedZeros& zeros) {
  if (!x.is_loopless()) throw PreconditionError("aip_solve: instance digraph has loops");
  const std::size_t p = x.size(), n = a.size(), ex = x.edge_count(), ea = a.edge_count();
  // Column numbering: vertex variables first, then edge variables; forced zeros get no column.
  std::vector<long> vcol(p * n, -1), ecol(ex * ea, -1);
  Eigen::Index cols = 0;
  for (std::size_t u = 0; u < p; ++u)
    for (std::size_t i = 0; i < n; ++i)
      if (!zeros.vertex.count({u, i})) vcol[u * n + i] = cols++;
  for (std::size_t e = 0; e < ex; ++e)
    for (std::size_t f = 0; f < ea; ++f)
      if (!zeros.edge.count({e, f})) ecol[e * ea + f] = cols++;

  std::vector<SparseEntry> entries;
  std::vector<Integer> rhs;
  Eigen::Index row = 0;
  for (std::size_t u = 0; u < p; ++u) {
    for (std::size_t i = 0; i < n; ++i)
      if (vcol[u * n + i] >= 0) entries.push_back({row, vcol[u * n + i], Integer(1)});
    rhs.push_back(Integer(1));
    ++row;
  }
  const auto& xe = x.edges();
  const auto& ae = a.edges();
  for (std::size_t e = 0; e < ex; ++e)
    for (int side = 0; side < 2; ++side) {
      const std::size_t u = side == 0 ? xe[e].first : xe[e].second;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t f = 0; f < ea; ++f) {
          const std::size_t end = side == 0 ? ae[f].first : ae[f].second;
          if (end == i && ecol[e * ea + f] >= 0) entries.push_back({row, ecol[e * ea + f], Integer(1)});
        }
        if (vcol[u * n + i] >= 0) entries.push_back({row, vcol[u * n + i], Integer(-1)});
        rhs.push_back(Integer(0));
        ++row;
      }
    }
  IntVector b(row);
  for (Eigen::Index r = 0; r < row; ++r) b(r) = rhs[r];
  auto sol = hnf_solve_sparse(row, cols, entries, b);
  if (!sol) return std::nullopt;

  AipAssignment mu{IntMatrix::Zero(p, n), IntMatrix::Zero(ex, ea)};
  for (std::size_t u = 0; u < p; ++u)
    for (std::size_t i = 0; i < n; ++i)
      if (vcol[u * n + i] >= 0) mu.vertex(u, i) = (*sol)(vcol[u * n + i]);
  for (std::size_t e = 0; e < ex; ++e)
    for (std::size_t f = 0; f < ea; ++f)
      if (ecol[e * ea + f] >= 0) mu.edge(e, f) = (*sol)(ecol[e * ea + f]);
  return mu;
}

bool aip_satisfied(const AipAssignment& mu, const Digraph& x, const Digraph& a) {
  const std::size_t p = x.size(), n = a.size();
  if (static_cast<std::size_t>(mu.vertex.rows()) != p || static_cast<std::size_t>(mu.vertex.cols()) != n ||
      static_cast<std::size_t>(mu.edge.rows()) != x.edge_count() ||
      static_cast<std::size_t>(mu.edge.cols()) != a.edge_count())
    return false;
  for (std::size_t u = 0; u < p; ++u)
    if (mu.vertex.row(u).sum() != 1) return false;
  const auto& ae = a.edges();
  for (std::size_t e = 0; e < x.edge_count(); ++e)
    for (int side = 0; side < 2; ++side) {
      const std::size_t u = side == 0 ? x.edges()[e].first : x.edges()[e].second;
      for (std::size_t i = 0; i < n; ++i) {
        Integer sum = 0;
        for (std::size_t f = 0; f < ae.size(); ++f)
          if ((side == 0 ? ae[f].first : ae[f].second) == i) sum += mu.edge(e, f);
        if (sum != mu.vertex(u, i)) return false;
      }
    }
  return true;
}

IntMatrix assemble_aip_matrix(const AipAssignment& mu, const Digraph& x, const Digraph& a) {
  const std::size_t p = x.size(), n = a.size();
  IntMatrix out = IntMatrix::Zero(p * n, p * n);
  for (std::size_t u = 0; u < p; ++u)
    for (std::size_t v = 0; v < p; ++v) {
      if (u == v) {
        for (std::size_t i = 0; i < n; ++i) out(u * n + i, u * n + i) = mu.vertex(u, i);
      } else if (auto e = x.edge_index(u, v)) {
        for (std::size_t f = 0; f < a.edge_count(); ++f) {
          auto [i, j] = a.edges()[f];
          out(u * n + i, v * n + j) = mu.edge(*e, f);
        }
      } else {
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) out(u * n + i, v * n + j) = mu.vertex(u, i) * mu.vertex(v, j);
      }
    }
  return out;
}

IntMatrix refinement_mask(const IntMatrix& n, const Digraph& x, std::size_t target_size) {
  const std::size_t p = x.size(), k = target_size;
  if (static_cast<std::size_t>(n.rows()) != p * k || static_cast<std::size_t>(n.cols()) != p * k)
    throw DimensionError("refinement_mask: matrix is not pn x pn");
  IntMatrix out = IntMatrix::Zero(p * k, p * k);
  for (std::size_t u = 0; u < p; ++u)
    for (std::size_t v = 0; v < p; ++v)
      if (u == v || x.has_edge(u, v)) out.block(u * k, v * k, k, k) = n.block(u * k, v * k, k, k);
  return out;
}

// ------------------------------------------------------------ SDA

namespace {

struct OrbitalSetup {
  OrbitalStructure ox, oa;
  CharacterTable px, pa;
};

std::optional<OrbitalSetup> orbital_setup(const Digraph& x, const Digraph& a, double tol) {
  try {
    OrbitalSetup s{orbitals(x), orbitals(a), {}, {}};
    if (!is_generously_transitive(s.ox) || !is_generously_transitive(s.oa)) return std::nullopt;
    s.px = character_table_for(s.ox, tol);
    s.pa = character_table_for(s.oa, tol);
    return s;
  } catch (const GuardError&) {
    return std::nullopt;
  }
}

// Forced zeros read off an SDP matrix given entrywise.
template <typename Entry>
ForcedZeros zeros_from(const Digraph& x, const Digraph& a, Entry&& is_zero) {
  ForcedZeros z;
  const std::size_t n = a.size();
  for (std::size_t u = 0; u < x.size(); ++u)
    for (std::size_t i = 0; i < n; ++i)
      if (is_zero(u, i, u, i)) z.vertex.insert({u, i});
  for (std::size_t e = 0; e < x.edge_count(); ++e) {
    auto [u, v] = x.edges()[e];
    for (std::size_t f = 0; f < a.edge_count(); ++f) {
      auto [i, j] = a.edges()[f];
      if (is_zero(u, i, v, j)) z.edge.insert({e, f});
    }
  }
  return z;
}

template <typename Entry>
bool refinement_holds(const IntMatrix& nmat, const Digraph& x, std::size_t n, Entry&& is_zero) {
  for (std::size_t u = 0; u < x.size(); ++u)
    for (std::size_t v = 0; v < x.size(); ++v) {
      if (u != v && !x.has_edge(u, v)) continue;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (nmat(u * n + i, v * n + j) != 0 && is_zero(u, i, v, j)) return false;
    }
  return true;
}

std::optional<VertexMap> try_homomorphism(const Digraph& x, const Digraph& a, HomSearchGuard guard) {
  try {
    return find_homomorphism(x, a, guard);
  } catch (const GuardError&) {
    return std::nullopt;
  }
}

}  // namespace

SdaResult sda_accepts(const Digraph& x, const Digraph& a, SdaOptions options, std::stop_token stop) {
  if (!x.is_loopless()) throw PreconditionError("sda_accepts: instance digraph has loops");
  const std::size_t p = x.size(), n = a.size();
  SdaResult result;
  std::string notes;

  if (auto setup = orbital_setup(x, a, options.tol)) {
    const bool exact = setup->px.is_exact() && setup->pa.is_exact();
    OrbitalLpResult lp = exact ? sdp_max_support_orbital(setup->ox, setup->px, setup->oa, setup->pa)
                               : sdp_accepts_orbital(setup->ox, setup->px, setup->oa, setup->pa, options.tol);
    if (lp.decision == Decision::No) {
      result.decision = Decision::No;
      result.path = "exact";
      result.route = "orbital-lp";
      result.note = "no SDP matrix exists: " + lp.note;
      return result;
    }
    if (lp.decision == Decision::Yes) {
      const OrbitalMatrix& v = *lp.v;
      auto is_zero = [&](std::size_t u, std::size_t i, std::size_t w, std::size_t j) {
        return v(setup->ox.at(u, w), setup->oa.at(i, j)) == 0;
      };
      auto mu = aip_solve(x, a, zeros_from(x, a, is_zero));
      if (!mu) {
        if (exact) {
          result.decision = Decision::No;
          result.path = "exact";
          result.route = "orbital-lp+aip";
          result.note = "AIP infeasible under the maximal SDP support";
          return result;
        }
        notes = "AIP infeasible under a non-maximal numeric support; ";
      } else {
        SdaWitness w;
        w.v = v;
        w.mu = *mu;
        IntMatrix nmat = assemble_aip_matrix(*mu, x, a);
        w.refinement = refinement_holds(nmat, x, n, is_zero);
        if (p * n <= options.materialize_limit) {
          w.m_exact = orbital_reconstruct(v, setup->ox, setup->oa);
          w.n = std::move(nmat);
        }
        result.decision = w.refinement ? Decision::Yes : Decision::Unknown;
        result.path = exact ? "exact" : "numeric";
        result.route = "orbital-lp+aip";
        result.witness = std::move(w);
        if (result.decision == Decision::Yes) return result;
      }
    } else {
      notes = lp.note + "; ";
    }
  }

  if (auto f = try_homomorphism(x, a, options.hom_guard)) {
    SdaWitness w;
    w.m_exact = hom_to_sdp_matrix(*f, x, a);
    w.n = hom_to_aip_matrix(*f, x, a);
    AipAssignment mu{IntMatrix::Zero(p, n), IntMatrix::Zero(x.edge_count(), a.edge_count())};
    for (std::size_t u = 0; u < p; ++u) mu.vertex(u, (*f)(u)) = 1;
    for (std::size_t e = 0; e < x.edge_count(); ++e)
      mu.edge(e, *a.edge_index((*f)(x.edges()[e].first), (*f)(x.edges()[e].second))) = 1;
    w.mu = std::move(mu);
    w.refinement = true;
    result.decision = Decision::Yes;
    result.path = "exact";
    result.route = "homomorphism";
    result.witness = std::move(w);
    result.note = notes;
    return result;
  }

  if (p * n > options.numeric.max_dim) {
    result.decision = Decision::Unknown;
    result.note = notes + "instance too large for the numeric SDP";
    return result;
  }
  NumericSdpOptions numeric = options.numeric;
  numeric.tol = options.tol;
  NumericSdpResult sdp = sdp_feasible_numeric(x, a, numeric, stop);
  result.path = "numeric";
  result.route = "dykstra";
  result.residual = sdp.residual;
  if (!sdp.m) {
    result.decision = Decision::Unknown;
    result.note = notes + "numeric SDP did not converge";
    return result;
  }
  const FloatMatrix& m = *sdp.m;
  auto is_zero = [&](std::size_t u, std::size_t i, std::size_t w, std::size_t j) {
    return std::abs(m(u * n + i, w * n + j)) < options.tol;
  };
  auto mu = aip_solve(x, a, zeros_from(x, a, is_zero));
  if (!mu) {
    result.decision = Decision::Unknown;
    result.note = notes + "AIP infeasible under the numeric support, which may not be maximal";
    return result;
  }
  SdaWitness w;
  w.m_numeric = m;
  w.mu = *mu;
  w.n = assemble_aip_matrix(*mu, x, a);
  w.refinement = refinement_holds(*w.n, x, n, is_zero);
  result.decision = w.refinement ? Decision::Yes : Decision::Unknown;
  result.witness = std::move(w);
  result.note = notes;
  return result;
}

SdpDecision sdp_decide(const Digraph& x, const Digraph& a, SdaOptions options, std::stop_token stop) {
  SdpDecision out;
  std::string notes;
  const std::size_t p = x.size(), n = a.size();
  if (auto setup = orbital_setup(x, a, options.tol)) {
    OrbitalLpResult lp = sdp_accepts_orbital(setup->ox, setup->px, setup->oa, setup->pa, options.tol);
    if (lp.decision != Decision::Unknown) {
      out.decision = lp.decision;
      out.path = lp.exact ? "exact" : "numeric";
      out.route = "orbital-lp";
      out.v = lp.v;
      if (lp.v && p * n <= options.materialize_limit) out.m_exact = orbital_reconstruct(*lp.v, setup->ox, setup->oa);
      out.note = lp.note;
      return out;
    }
    notes = lp.note + "; ";
  }
  if (auto f = try_homomorphism(x, a, options.hom_guard)) {
    out.decision = Decision::Yes;
    out.path = "exact";
    out.route = "homomorphism";
    out.m_exact = hom_to_sdp_matrix(*f, x, a);
    out.note = notes;
    return out;
  }
  out.path = "numeric";
  out.route = "dykstra";
  if (p * n > options.numeric.max_dim) {
    out.note = notes + "instance too large for the numeric SDP";
    return out;
  }
  NumericSdpOptions numeric = options.numeric;
  numeric.tol = options.tol;
  NumericSdpResult sdp = sdp_feasible_numeric(x, a, numeric, stop);
  out.residual = sdp.residual;
  if (sdp.m) {
    out.decision = Decision::Yes;
    out.m_numeric = sdp.m;
  } else {
    out.note = notes + "numeric SDP did not converge";
  }
  return out;
}

}  // namespace sda
