#include "sda/fooling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace sda {

IntMatrix cycle_integral_assignment(long n, long j) {
  if (n < 3 || n % 2 == 0) throw PreconditionError("cycle_integral_assignment needs odd n >= 3");
  if (j < 0 || j > (n - 1) / 2) throw PreconditionError("cycle_integral_assignment needs 0 <= j <= (n-1)/2");
  IntMatrix f = IntMatrix::Zero(n, n);
  if (j == 0) {
    f(0, 0) = 1;
    return f;
  }
  const long len = n / std::gcd(n, j);
  auto vertex = [&](long i) { return (i % len) * j % n; };
  for (long i = 0; i + 1 < len; i += 2) f(vertex(i), vertex(i + 1)) = 1;
  f(vertex(len - 1), vertex(0)) = 1;
  for (long i = 2; i < len; i += 2) f(vertex(i), vertex(i - 1)) = -1;
  return f;
}

double cycle_max_abs_z(long n) {
  double best = 0;
  for (long k = 1; k <= (n - 1) / 2; ++k)
    best = std::max(best, std::abs(2 * std::cos(2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n))));
  return best;
}

namespace {

void check_cycle(long n) {
  if (n < 3 || n % 2 == 0) throw PreconditionError("fooling construction needs an odd cycle, n >= 3");
}

Integer ceil_div(const Rational& q) {
  Integer num = numerator(q), den = denominator(q);
  Integer quot = num / den;
  if (quot * den < num) quot += 1;
  return quot;
}

}  // namespace

FoolingParams fooling_params(long n, long nprime) {
  check_cycle(n);
  if (nprime < 3) throw PreconditionError("fooling_params needs n' >= 3");
  FoolingParams best;
  bool found = false;
  const double z = cycle_max_abs_z(n);
  for (long den = 8; den <= (1L << 20) && !found; den *= 2) {
    for (long k = 1; k < 2 * den; ++k) {
      if (static_cast<double>(k) / static_cast<double>(den) <= z + 1e-6) continue;
      Rational delta(k, den);
      // t / delta integral  <=>  numerator(delta) divides t
      const Integer step = numerator(delta);
      Integer t = ceil_div(Rational(2 * nprime) / (Rational(2) - delta));
      if (t % step != 0) t += step - t % step;
      Rational s = Rational(2) * Rational(t) / delta + Rational(t);
      if (!found || s < best.s) {
        best.n = n;
        best.nprime = nprime;
        best.delta = delta;
        best.t = t.convert_to<long>();
        best.s = numerator(s).convert_to<long>();
        best.max_abs_z = z;
        found = true;
      }
    }
  }
  if (!found) throw Error("fooling_params: no admissible delta below 2");
  return best;
}

FoolingParams fooling_params_explicit(long n, long s, long t, std::optional<long> nprime) {
  check_cycle(n);
  if (t < 1 || s <= 2 * t) throw PreconditionError("fooling params need s > 2t >= 2");
  FoolingParams p;
  p.n = n;
  p.nprime = nprime;
  p.s = s;
  p.t = t;
  p.delta = Rational(2 * t, s - t);
  p.max_abs_z = cycle_max_abs_z(n);
  if (p.delta.convert_to<double>() <= p.max_abs_z || p.delta >= 2)
    throw PreconditionError("delta = 2t/(s-t) must lie strictly between max|z| and 2");
  if (denominator(Rational(t) / p.delta) != 1) throw PreconditionError("t / delta must be an integer");
  if (nprime && Rational(t) < Rational(2 * *nprime) / (Rational(2) - p.delta))
    throw PreconditionError("t must be at least 2n'/(2 - delta)");
  return p;
}

OrbitalMatrix fooling_orbital_matrix(const FoolingParams& params) {
  const long t = params.t, m = (params.n - 1) / 2;
  RatMatrix w = RatMatrix::Zero(t + 1, m + 1);
  for (long q = 0; q <= t; ++q) {
    w(q, 0) = Rational(1) - Rational(q, t);
    w(q, 1) = Rational(q, t);
  }
  RatMatrix k = RatMatrix::Zero(m + 1, m + 1);
  for (long j = 0; j <= m; ++j) k(j, j) = Rational(j == 0 ? 2 : 1, 2 * params.n);
  return w * k;
}

FloatMatrix fooling_spectrum_closed_form(const FoolingParams& params) {
  const long t = params.t, s = params.s, n = params.n, m = (n - 1) / 2;
  const CharacterTable cycle = cycle_character_table(n);
  const double scale = binomial(s, t).convert_to<double>() / static_cast<double>(2 * n);
  const double ds = static_cast<double>(s), dt = static_cast<double>(t);
  FloatMatrix out = FloatMatrix::Zero(t + 1, m + 1);
  out(0, 0) = 2 * scale;
  for (long k = 1; k <= m; ++k) {
    const double z = cycle.numeric(k, 1);
    out(0, k) = scale * (2 * dt / ds + (1 - dt / ds) * z);
    out(1, k) = scale * ((ds - dt) / (ds * ds - ds)) * (2 - z);
  }
  return out;
}

RatMatrix fooling_spectrum_closed_form_exact(const FoolingParams& params) {
  if (params.n != 3) throw PreconditionError("exact closed form needs n = 3");
  const long t = params.t, s = params.s;
  const Rational scale = Rational(binomial(s, t)) / Rational(2 * params.n);
  const Rational z = -1;
  RatMatrix out = RatMatrix::Zero(t + 1, 2);
  out(0, 0) = 2 * scale;
  out(0, 1) = scale * (Rational(2 * t, s) + (Rational(1) - Rational(t, s)) * z);
  out(1, 1) = scale * Rational(s - t, s * s - s) * (Rational(2) - z);
  return out;
}

FoolingCertificate verify_fooling_orbital(const FoolingParams& params, double tol) {
  check_cycle(params.n);
  FoolingCertificate cert;
  cert.params = params;
  cert.v = fooling_orbital_matrix(params);
  const OrbitalStructure ox = symbolic_orbitals(SymbolicTag::kneser(params.s, params.t));
  const OrbitalStructure oa = symbolic_orbitals(SymbolicTag::cycle(params.n));
  const CharacterTable px = johnson_character_table(params.s, params.t);
  const CharacterTable pa = cycle_character_table(params.n);
  const OrbitalMatrix& v = cert.v;
  const long rows = static_cast<long>(ox.count()), cols = static_cast<long>(oa.count());

  cert.c2 = true;
  for (long w = 0; w < rows; ++w) {
    Rational sum = 0;
    for (long k = 0; k < cols; ++k) sum += v(w, k) * Rational(oa.sizes[k]);
    cert.c2 = cert.c2 && sum == 1;
  }
  cert.c3 = true;
  cert.c4 = true;
  bool nonneg = true;
  cert.rows_nonvanishing = true;
  for (long w = 0; w < rows; ++w) {
    bool any = false;
    for (long k = 0; k < cols; ++k) {
      if (ox.diagonal[w] && !oa.diagonal[k] && v(w, k) != 0) cert.c3 = false;
      if (ox.edge[w] && !oa.edge[k] && v(w, k) != 0) cert.c4 = false;
      if (v(w, k) < 0) nonneg = false;
      any = any || v(w, k) != 0;
    }
    cert.rows_nonvanishing = cert.rows_nonvanishing && any;
  }

  cert.exact = pa.is_exact();
  if (cert.exact) {
    cert.spectrum_exact = orbital_spectrum_exact(v, px, pa);
    cert.spectrum = to_float(*cert.spectrum_exact);
    cert.c1 = nonneg && (cert.spectrum_exact->array() >= Rational(0)).all();
    cert.closed_form_match = *cert.spectrum_exact == fooling_spectrum_closed_form_exact(params);
  } else {
    cert.spectrum = orbital_spectrum(to_float(v), px, pa);
    const double scale = std::max(1.0, cert.spectrum.cwiseAbs().maxCoeff());
    cert.c1 = nonneg && cert.spectrum.minCoeff() >= -tol * scale;
    cert.closed_form_match =
        (cert.spectrum - fooling_spectrum_closed_form(params)).cwiseAbs().maxCoeff() <= tol * scale;
  }
  cert.chromatic = params.s - 2 * params.t + 2;
  cert.chromatic_gap = !params.nprime || cert.chromatic > *params.nprime;
  return cert;
}

FoolingWitness materialize_fooling_witness(const FoolingParams& params, double tol) {
  check_cycle(params.n);
  const Integer vertices = binomial(params.s, params.t);
  if (vertices * params.n > kFoolingMaterializeGuard)
    throw GuardError("fooling_materialize", "C(s,t) n = " + Integer(vertices * params.n).str() + " exceeds 2000");
  const OrbitalStructure ox = symbolic_orbitals(SymbolicTag::kneser(params.s, params.t), true);
  const OrbitalStructure oa = symbolic_orbitals(SymbolicTag::cycle(params.n), true);
  const Digraph x = make_kneser(params.s, params.t);
  const Digraph a = make_cycle(params.n);
  const OrbitalMatrix v = fooling_orbital_matrix(params);
  const std::size_t p = ox.order(), n = oa.order();

  FoolingWitness w;
  w.m = orbital_reconstruct(v, ox, oa);

  std::vector<IntMatrix> pieces;
  for (long j = 0; j <= (params.n - 1) / 2; ++j) pieces.push_back(cycle_integral_assignment(params.n, j));
  std::vector<std::size_t> choice(ox.count());
  for (std::size_t q = 0; q < ox.count(); ++q) {
    std::size_t k = 0;
    while (k < oa.count() && v(q, k) == 0) ++k;
    if (k == oa.count()) throw Error("fooling orbital matrix has a vanishing row");
    choice[q] = k;
  }
  w.n = IntMatrix(p * n, p * n);
  for (std::size_t u = 0; u < p; ++u)
    for (std::size_t y = 0; y < p; ++y) w.n.block(u * n, y * n, n, n) = pieces[choice[ox.at(u, y)]];

  w.m_report = check_relaxation(w.m, x, a, tol);
  w.n_report = check_relaxation(w.n, x, a, tol, false);
  w.refinement = support_subset(refinement_mask(w.n, x, n), w.m);

  const FloatMatrix mf = to_float(w.m);
  w.spectrum = eig_sym(mf, tol);
  w.min_eigenvalue = w.spectrum.values.back();

  const CharacterTable px = johnson_character_table(params.s, params.t);
  const CharacterTable pa = cycle_character_table(params.n);
  const FloatMatrix pattern = orbital_spectrum(to_float(v), px, pa);
  for (Eigen::Index i = 0; i < pattern.rows(); ++i)
    for (Eigen::Index k = 0; k < pattern.cols(); ++k) {
      const std::size_t mult = (px.multiplicities[i] * pa.multiplicities[k]).convert_to<std::size_t>();
      w.predicted.insert(w.predicted.end(), mult, pattern(i, k));
    }
  std::sort(w.predicted.begin(), w.predicted.end(), std::greater<>());
  w.spectrum_match = w.predicted.size() == w.spectrum.values.size();
  for (std::size_t i = 0; i < w.predicted.size() && w.spectrum_match; ++i)
    w.spectrum_match = std::abs(w.predicted[i] - w.spectrum.values[i]) <= 1e-7 * std::max(1.0, std::abs(w.predicted[i]));
  return w;
}

SlaterReport slater_point(long p, long n, double tol) {
  if (p < 2 || n < 2) throw PreconditionError("slater_point needs p, n >= 2");
  if (p * n > 400) throw GuardError("slater_dimension", "pn = " + std::to_string(p * n) + " exceeds 400");
  SlaterReport r;
  const RatMatrix ip = RatMatrix::Identity(p, p), in = RatMatrix::Identity(n, n);
  const RatMatrix jp = RatMatrix::Ones(p, p), jn = RatMatrix::Ones(n, n);
  r.m = kron(ip, in) / Rational(n) + kron(RatMatrix(jp - ip), jn) / Rational(n * n);

  const Digraph edgeless(static_cast<std::size_t>(p), {});
  const Digraph clique = make_clique(static_cast<std::size_t>(n));
  RelaxReport rep = check_relaxation(r.m, edgeless, clique, tol);
  r.in_u = rep.r1 && rep.r3 && rep.r4 && rep.r5 && rep.symmetric && rep.nonnegative;
  r.psd = rep.psd;

  const OrbitalStructure ox = symbolic_orbitals(SymbolicTag::clique(p), true);
  const OrbitalStructure oa = symbolic_orbitals(SymbolicTag::clique(n), true);
  OrbitalMatrix v;
  try {
    v = orbital_decompose(r.m, ox, oa);
    r.balanced = true;
  } catch (const PreconditionError&) {
    r.balanced = false;
    return r;
  }
  r.spectrum_pattern = orbital_spectrum_exact(v, clique_character_table(p), clique_character_table(n));
  r.spectrum = eig_sym(to_float(r.m), tol);
  // Expected: p/n once, 1/n with multiplicity p(n-1), 0 with multiplicity p-1.
  std::vector<double> expected;
  expected.push_back(static_cast<double>(p) / static_cast<double>(n));
  expected.insert(expected.end(), static_cast<std::size_t>(p * (n - 1)), 1.0 / static_cast<double>(n));
  expected.insert(expected.end(), static_cast<std::size_t>(p - 1), 0.0);
  std::sort(expected.begin(), expected.end(), std::greater<>());
  RatMatrix pattern(2, 2);
  pattern << Rational(p, n), Rational(1, n), Rational(0), Rational(1, n);
  r.spectrum_match = r.spectrum_pattern == pattern && expected.size() == r.spectrum.values.size();
  for (std::size_t i = 0; i < expected.size() && r.spectrum_match; ++i)
    r.spectrum_match = std::abs(expected[i] - r.spectrum.values[i]) <= 1e-9;
  return r;
}

NonSlaterReport non_slater_witness(long p, long n, long x, long y, long a, const RatMatrix& m0,
                                   const Rational& radius, double tol) {
  if (p < 2 || n < 2) throw PreconditionError("non_slater_witness needs p, n >= 2");
  if (x == y) throw PreconditionError("non_slater_witness needs x != y");
  if (x < 0 || y < 0 || x >= p || y >= p || a < 0 || a >= n)
    throw PreconditionError("non_slater_witness: index out of range");
  if (m0.rows() != p * n || m0.cols() != p * n) throw DimensionError("non_slater_witness: M0 is not pn x pn");
  if (radius <= 0) throw PreconditionError("non_slater_witness needs a positive radius");

  NonSlaterReport r;
  RatMatrix swap = RatMatrix::Zero(p, p);
  swap(x, y) = 1;
  swap(y, x) = 1;
  RatMatrix ea = RatMatrix::Zero(n, n);
  ea(a, a) = 1;
  r.h = kron(RatMatrix(RatMatrix::Ones(p, p) - swap), RatMatrix::Identity(n, n)) / Rational(n) + kron(swap, ea);
  r.step = std::min(radius / Rational(2 * p * p + 1), Rational(1));
  r.n = (Rational(1) - r.step) * m0 + r.step * r.h;

  const Digraph edgeless(static_cast<std::size_t>(p), {});
  const Digraph clique = make_clique(static_cast<std::size_t>(n));
  auto in_w = [&](const RatMatrix& m) {
    RelaxReport rep = check_relaxation(m, edgeless, clique, tol, false);
    return rep.symmetric && rep.nonnegative && rep.r1 && rep.r6;
  };
  r.h_in_w = in_w(r.h);
  r.n_in_w = in_w(r.n);
  const RatMatrix diff = r.n - m0;
  Rational frob2 = 0;
  for (Eigen::Index i = 0; i < diff.rows(); ++i)
    for (Eigen::Index j = 0; j < diff.cols(); ++j) frob2 += diff(i, j) * diff(i, j);
  r.within_radius = frob2 < radius * radius;
  r.min_eigenvalue = min_eigenvalue(to_float(r.n), tol);
  r.not_psd = r.min_eigenvalue < -tol * std::max(1.0, to_float(r.n).norm());
  return r;
}

std::vector<CliqueDecision> clique_experiment(long p_max, long n_max) {
  if (p_max < 2 || n_max < 2 || p_max > 12 || n_max > 12)
    throw PreconditionError("clique_experiment needs 2 <= p_max, n_max <= 12");
  std::vector<CliqueDecision> out;
  for (long p = 2; p <= p_max; ++p)
    for (long n = 2; n <= n_max; ++n) {
      OrbitalLpResult r = sdp_accepts_orbital(symbolic_orbitals(SymbolicTag::clique(p)), clique_character_table(p),
                                              symbolic_orbitals(SymbolicTag::clique(n)), clique_character_table(n));
      out.push_back({p, n, r.decision});
    }
  return out;
}

}  // namespace sda
