// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.

#include "relax_fixtures.hpp"
#include "series.hpp"
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>

namespace sda::acceptance {
namespace {

using testing::Rng;

// Tolerances and budgets, pinned.
constexpr double kTableTol = 1e-8;
constexpr double kSpectralTol = 1e-7;
constexpr double kPsdTol = 1e-7;
constexpr double kUniqueTwoTol = 1e-9;
constexpr double kUniqueTwoMargin = 0.01;
constexpr double kNegativeEigenvalue = -1e-6;
constexpr double kEberleinSeconds = 10;
constexpr double kCliqueGridSeconds = 5;
constexpr double kFoolingSeconds = 60;

// Collects the first few failure messages of a criterion.
struct Check {
  bool ok = true;
  std::vector<std::string> notes;
  std::size_t checks = 0;

  void expect(bool cond, const std::function<std::string()>& what) {
    ++checks;
    if (cond) return;
    if (ok || notes.size() < 5) notes.push_back(what());
    ok = false;
  }
};

template <typename... Args>
std::string cat(const Args&... args) {
  std::ostringstream out;
  (out << ... << args);
  return out.str();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ------------------------------------------------------------ 1

Check eberlein_suite() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  for (long s = 3; s <= 12; ++s)
    for (long t = 1; t <= 5 && 2 * t < s; ++t) {
      const RatMatrix p = *johnson_character_table(s, t).exact;
      const Rational vertices(binomial(s, t));
      RatVector ones = RatVector::Ones(t + 1), h(t + 1), e0 = RatVector::Zero(t + 1), e1 = RatVector::Zero(t + 1);
      for (long q = 0; q <= t; ++q) h(q) = q;
      e0(0) = 1;
      e1(1) = 1;
      c.expect(RatVector(p * ones) == RatVector(vertices * e0), [&] { return cat("P.1 at s=", s, " t=", t); });
      const Rational st(s * t - t * t);
      c.expect(RatVector(p * h) == RatVector(vertices * (st / s * e0 - st / (s * s - s) * e1)),
               [&] { return cat("P.h at s=", s, " t=", t); });
      for (long j = 0; j <= t; ++j) {
        for (long k = 0; k < j; ++k)
          c.expect(theta_bruteforce(s, t, j, k) == 0, [&] { return cat("theta(", s, t, j, k, ") != 0"); });
        for (long k = j; k <= j + 1; ++k) {
          auto closed = theta_closed(s, t, j, k);
          c.expect(closed && *closed == theta_bruteforce(s, t, j, k),
                   [&] { return cat("theta closed form at s=", s, " t=", t, " j=", j, " k=", k); });
        }
      }
    }
  for (int t = 0; t <= 5; ++t)
    for (int j = 0; j <= t; ++j) {
      const auto g = testing::eberlein_generating_function(t, j, 12);
      for (int s = 0; s <= 12; ++s)
        for (int q = 0; q <= t; ++q)
          c.expect(g.coeff[s][q] == eberlein_beta(s, t, q, j),
                   [&] { return cat("generating function at s=", s, " t=", t, " q=", q, " j=", j); });
    }
  const double secs = seconds_since(start);
  c.expect(secs < kEberleinSeconds, [&] { return cat("runtime ", secs, " s"); });
  return c;
}

// ------------------------------------------------------------ 2

// Compares a numeric table on computed orbitals with a closed-form table whose
// columns follow the symbolic order. Columns are aligned through the pair
// index, rows are matched as a set.
void compare_tables(Check& c, const std::string& name, const OrbitalStructure& computed,
                    const OrbitalStructure& symbolic, const FloatMatrix& exact) {
  const std::size_t d = computed.count();
  std::vector<std::size_t> column(d, d);
  for (std::size_t x = 0; x < computed.order(); ++x)
    for (std::size_t y = 0; y < computed.order(); ++y) column[computed.at(x, y)] = symbolic.at(x, y);
  FloatMatrix aligned(exact.rows(), d);
  for (std::size_t k = 0; k < d; ++k) aligned.col(k) = exact.col(column[k]);
  CharacterTable numeric = character_table_numeric(scheme_from_orbitals(computed));
  c.expect(static_cast<std::size_t>(numeric.numeric.rows()) == d, [&] { return name + ": table size"; });
  if (static_cast<std::size_t>(numeric.numeric.rows()) != d) return;
  std::vector<bool> used(d, false);
  for (std::size_t i = 0; i < d; ++i) {
    bool matched = false;
    for (std::size_t r = 0; r < d && !matched; ++r)
      if (!used[r] && (numeric.numeric.row(i) - aligned.row(r)).cwiseAbs().maxCoeff() <= kTableTol)
        matched = used[r] = true;
    c.expect(matched, [&] { return cat(name, ": numeric row ", i, " has no exact counterpart"); });
  }
  c.expect(numeric.numeric.row(0).isApprox(aligned.row(0), kTableTol) ||
               (numeric.numeric.row(0) - aligned.row(0)).cwiseAbs().maxCoeff() <= kTableTol,
           [&] { return name + ": principal row differs"; });
}

Check scheme_suite() {
  Check c;
  auto run = [&](const std::string& name, const Digraph& g, const SymbolicTag& tag, const FloatMatrix& exact) {
    OrbitalStructure o = orbitals(g);
    AxiomReport r = verify_scheme_axioms(scheme_from_orbitals(o));
    c.expect(r.all(), [&] { return name + ": " + (r.witnesses.empty() ? "axiom failed" : r.witnesses.front()); });
    compare_tables(c, name, o, symbolic_orbitals(tag, true), exact);
  };
  for (long n = 3; n <= 15; n += 2)
    run(cat("C", n), make_cycle(n), SymbolicTag::cycle(n), cycle_character_table(n).numeric);
  for (long n = 2; n <= 8; ++n)
    run(cat("K", n), make_clique(n), SymbolicTag::clique(n), clique_character_table(n).numeric);
  for (long t = 1; t <= 5; ++t)
    for (long s = 2 * t + 1; binomial(s, t) <= 200; ++s)
      run(cat("G", s, ",", t), make_kneser(s, t), SymbolicTag::kneser(s, t), johnson_character_table(s, t).numeric);
  return c;
}

// ------------------------------------------------------------ 3

Check spectral_suite() {
  Check c;
  Rng rng(2024);
  std::uniform_int_distribution<std::size_t> size(2, 6);
  auto family = [&](const std::string& name, const Digraph& x, const Digraph& a) {
    OrbitalStructure ox = orbitals(x), oa = orbitals(a);
    CharacterTable px = character_table_for(ox), pa = character_table_for(oa);
    OrbitalMatrix v = testing::random_orbital_matrix(rng, ox, oa);
    Spectrum s = eig_sym(to_float(orbital_reconstruct(v, ox, oa)));
    auto predicted = testing::weighted_entries(orbital_spectrum(to_float(v), px, pa), px, pa);
    bool same = predicted.size() == s.values.size();
    for (std::size_t i = 0; same && i < predicted.size(); ++i)
      same = std::abs(predicted[i] - s.values[i]) <= kSpectralTol;
    c.expect(same, [&] { return name + ": eigenvalues differ from the entries of P V P~^T"; });
  };
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t p = size(rng), n = size(rng);
    family(cat("(K", p, ",K", n, ") #", trial), make_clique(p), make_clique(n));
    family(cat("(C3,C3) #", trial), make_cycle(3), make_cycle(3));
    family(cat("(G5,2,C3) #", trial), make_kneser(5, 2), make_cycle(3));
  }
  return c;
}

// ------------------------------------------------------------ 4

Check clique_grid() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  auto grid = clique_experiment(8, 8);
  c.expect(grid.size() == 49, [&] { return cat("grid has ", grid.size(), " cells"); });
  for (const auto& d : grid)
    c.expect(d.decision == (d.p <= d.n ? Decision::Yes : Decision::No),
             [&] { return cat("(K", d.p, ",K", d.n, ") -> ", to_string(d.decision)); });
  const double secs = seconds_since(start);
  c.expect(secs < kCliqueGridSeconds, [&] { return cat("runtime ", secs, " s"); });
  return c;
}

// ------------------------------------------------------------ 5

Check fooling_reproduction() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  FoolingParams big = fooling_params(3, 3);
  c.expect(big.s == 25 && big.t == 9 && big.delta == Rational(9, 8),
           [&] { return cat("parameters s=", big.s, " t=", big.t, " delta=", to_string(big.delta)); });
  FoolingCertificate cert = verify_fooling_orbital(big);
  c.expect(cert.exact, [] { return "certificate not evaluated exactly"; });
  c.expect(cert.c1 && cert.c2 && cert.c3 && cert.c4, [] { return "orbital conditions c1-c4"; });
  c.expect(cert.chromatic == 9 && cert.chromatic > 3, [&] { return cat("chromatic number ", cert.chromatic); });

  FoolingWitness w = materialize_fooling_witness(fooling_params_explicit(3, 7, 3));
  const RelaxReport& m = w.m_report;
  c.expect(w.m.rows() == 105, [] { return "M is not 105 x 105"; });
  c.expect(m.r1 && m.r2 && m.r3 && m.r4 && m.r5 && m.r6, [] { return "M fails r1-r6"; });
  c.expect(m.nonnegative, [] { return "M has a negative entry"; });
  c.expect(w.min_eigenvalue >= -kPsdTol, [&] { return cat("M min eigenvalue ", w.min_eigenvalue); });
  const std::vector<double> allowed = {35.0 / 3, 5.0 / 3, 0.0};
  for (double e : w.spectrum.values) {
    bool hit = false;
    for (double a : allowed) hit = hit || std::abs(e - a) <= kSpectralTol;
    c.expect(hit, [&] { return cat("eigenvalue ", e, " outside {35/3, 5/3, 0}"); });
  }
  const RelaxReport& n = w.n_report;
  c.expect(n.integral && n.r1 && n.r2 && n.r3 && n.r4 && n.r5, [] { return "N is not an AIP-matrix"; });
  c.expect(support_subset(refinement_mask(w.n, make_kneser(7, 3), 3), w.m), [] { return "refinement fails"; });
  const double secs = seconds_since(start);
  c.expect(secs < kFoolingSeconds, [&] { return cat("runtime ", secs, " s"); });
  return c;
}

// ------------------------------------------------------------ 6

Check cycle_assignment_suite() {
  Check c;
  for (long n = 3; n <= 25; n += 2)
    for (long j = 0; j <= (n - 1) / 2; ++j) {
      IntMatrix f = cycle_integral_assignment(n, j);
      IntVector e0 = IntVector::Zero(n);
      e0(0) = 1;
      c.expect(IntVector(f.rowwise().sum()) == e0, [&] { return cat("row sums n=", n, " j=", j); });
      c.expect(IntVector(f.colwise().sum().transpose()) == e0, [&] { return cat("column sums n=", n, " j=", j); });
      for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b) {
          const Integer& v = f(a, b);
          const long dist = std::min((a - b + n) % n, (b - a + n) % n);
          c.expect(v == 0 || ((v == 1 || v == -1) && dist == j),
                   [&] { return cat("entry (", a, ",", b, ") n=", n, " j=", j); });
        }
    }
  return c;
}

// ------------------------------------------------------------ 7

Check cycle_table_suite() {
  Check c;
  for (long n = 3; n <= 15; n += 2) {
    CharacterTable t = cycle_character_table(n);
    const FloatMatrix& p = t.numeric;
    for (Eigen::Index i = 0; i < p.rows(); ++i)
      c.expect(std::abs(p(i, 0) - 1) <= kUniqueTwoTol, [&] { return cat("C", n, " column 0 row ", i); });
    int twos = 0;
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
      if (std::abs(p(i, 1) - 2) <= kUniqueTwoTol)
        ++twos;
      else
        c.expect(std::abs(p(i, 1)) <= 2 - kUniqueTwoMargin, [&] { return cat("C", n, " column 1 row ", i); });
    }
    c.expect(twos == 1, [&] { return cat("C", n, " has ", twos, " entries equal to 2"); });
  }
  return c;
}

// ------------------------------------------------------------ 8

Check slater_suite() {
  Check c;
  for (long p = 2; p <= 6; ++p)
    for (long n = 2; n <= 6; ++n) {
      SlaterReport r = slater_point(p, n);
      c.expect(r.in_u, [&] { return cat("(", p, ",", n, ") not in U"); });
      c.expect(r.spectrum_match, [&] { return cat("(", p, ",", n, ") spectrum"); });
      const std::vector<double> allowed = {static_cast<double>(p) / n, 1.0 / n, 0.0};
      for (double e : r.spectrum.values) {
        bool hit = false;
        for (double a : allowed) hit = hit || std::abs(e - a) <= kSpectralTol;
        c.expect(hit, [&] { return cat("(", p, ",", n, ") eigenvalue ", e); });
      }
    }
  for (long k : {2L, 3L}) {
    SlaterReport s = slater_point(k, k);
    NonSlaterReport r = non_slater_witness(k, k, 0, 1, 0, s.m, 1);
    c.expect(r.n_in_w, [&] { return cat("(", k, ",", k, ") N not in W"); });
    c.expect(r.within_radius, [&] { return cat("(", k, ",", k, ") outside the radius"); });
    c.expect(r.min_eigenvalue <= kNegativeEigenvalue, [&] { return cat("(", k, ",", k, ") min eigenvalue ", r.min_eigenvalue); });
  }
  return c;
}

// ------------------------------------------------------------ 9

Check property_suites() {
  Check c;
  Rng rng(4242);
  std::uniform_int_distribution<std::size_t> psize(1, 6), nsize(1, 5);

  int complete = 0;
  for (int trial = 0; complete < 50 && trial < 5000; ++trial) {
    Digraph x = testing::random_digraph(rng, psize(rng), 0.35);
    Digraph a = testing::random_digraph(rng, nsize(rng), 0.6, trial % 4 == 0);
    auto f = find_homomorphism(x, a);
    if (!f) continue;
    ++complete;
    RatMatrix mf = hom_to_sdp_matrix(*f, x, a);
    IntMatrix nf = hom_to_aip_matrix(*f, x, a);
    c.expect(check_relaxation(mf, x, a).sdp_matrix(), [&] { return cat("completeness #", trial, ": M_f"); });
    c.expect(check_relaxation(nf, x, a).aip_matrix(), [&] { return cat("completeness #", trial, ": N_f"); });
    c.expect(support_subset(refinement_mask(nf, x, a.size()), mf), [&] { return cat("completeness #", trial, ": refinement"); });
    c.expect(aip_solve(x, a).has_value(), [&] { return cat("completeness #", trial, ": AIP"); });
    SdaOptions opt;
    opt.numeric.max_iter = 2000;
    c.expect(sdp_decide(x, a, opt).decision == Decision::Yes, [&] { return cat("completeness #", trial, ": SDP"); });
    c.expect(sda_accepts(x, a, opt).decision == Decision::Yes, [&] { return cat("completeness #", trial, ": SDA"); });
  }
  c.expect(complete == 50, [&] { return cat("only ", complete, " completeness pairs"); });

  int moved = 0;
  for (int trial = 0; moved < 30 && trial < 20000; ++trial) {
    Digraph x = testing::random_digraph(rng, 2 + trial % 4, 0.5);
    Digraph a = testing::random_digraph(rng, 2 + trial % 3, 0.6);
    Digraph xp = testing::random_digraph(rng, 2 + trial % 5, 0.3);
    Digraph ap = testing::random_digraph(rng, 2 + trial % 4, 0.7);
    if (!x.is_loopless()) continue;
    auto h = find_homomorphism(x, a), f = find_homomorphism(xp, x), g = find_homomorphism(a, ap);
    if (!h || !f || !g) continue;
    ++moved;
    SdaOptions opt;
    opt.numeric.max_iter = 2000;
    SdaResult r = sda_accepts(x, a, opt);
    c.expect(r.decision == Decision::Yes && r.witness, [&] { return cat("transport #", trial, ": no witness"); });
    if (!r.witness) continue;
    const SdaWitness& w = *r.witness;
    if (w.m_exact) {
      RatMatrix m = transport(*w.m_exact, *f, xp, x, *g, a, ap);
      c.expect(check_relaxation(m, xp, ap).sdp_matrix(), [&] { return cat("transport #", trial, ": M"); });
      if (w.n) {
        IntMatrix n = transport(*w.n, *f, xp, x, *g, a, ap);
        c.expect(check_relaxation(n, xp, ap, kDefaultTol, false).aip_matrix(), [&] { return cat("transport #", trial, ": N"); });
        c.expect(support_subset(refinement_mask(n, xp, ap.size()), m), [&] { return cat("transport #", trial, ": refinement"); });
      }
    }
    c.expect(sda_accepts(xp, ap, opt).decision == Decision::Yes, [&] { return cat("transport #", trial, ": SDA(X',A')"); });
  }
  c.expect(moved == 30, [&] { return cat("only ", moved, " transport quadruples"); });

  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t p = 1 + trial % 4, n = 1 + (trial / 4) % 4;
    Digraph x(p, {}), a(n, {});
    RelaxReport psd = check_relaxation(testing::random_psd_r6_matrix(rng, p, n), x, a);
    c.expect(psd.psd && psd.r6 && psd.r3 && psd.r4 && psd.r5, [&] { return cat("PSD r6 => r3,r4,r5 #", trial); });
    RelaxReport gen = check_relaxation(testing::random_r345_matrix(rng, p, n), x, a, kDefaultTol, false);
    c.expect(gen.r3 && gen.r4 && gen.r5 && gen.r6, [&] { return cat("r3,r4,r5 => r6 #", trial); });
  }

  std::uniform_int_distribution<std::size_t> msize(1, 6);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t r = msize(rng), s = msize(rng), t = msize(rng);
    VertexMap f = testing::random_map(rng, r, s), g = testing::random_map(rng, s, t);
    RatMatrix qf = q_matrix(f), qg = q_matrix(g);
    bool ok = RatVector(qf * RatVector::Ones(s)) == RatVector::Ones(r);
    for (std::size_t i = 0; i < r; ++i) {
      RatVector e = RatVector::Zero(r), img = RatVector::Zero(s);
      e(i) = 1;
      img(f(i)) = 1;
      ok = ok && RatVector(qf.transpose() * e) == img;
    }
    for (std::size_t j = 0; j < s; ++j) {
      RatVector e = RatVector::Zero(s), pre = RatVector::Zero(r);
      e(j) = 1;
      for (std::size_t i = 0; i < r; ++i)
        if (f(i) == j) pre(i) = 1;
      ok = ok && RatVector(qf * e) == pre;
    }
    ok = ok && RatMatrix(qf * qg) == RatMatrix(q_matrix(compose(g, f)));
    VertexMap perm = testing::random_permutation(rng, r);
    RatMatrix qp = q_matrix(perm);
    ok = ok && RatMatrix(qp * qp.transpose()) == RatMatrix::Identity(r, r) &&
         RatMatrix(q_matrix(inverse(perm))) == RatMatrix(qp.transpose());
    c.expect(ok, [&] { return cat("Q-matrix identities #", trial); });
  }
  return c;
}

}  // namespace
}  // namespace sda::acceptance

int main() {
  using namespace sda::acceptance;
  struct Criterion {
    const char* name;
    Check (*run)();
  };
  const Criterion criteria[] = {
      {"1 Eberlein and character-table identities", eberlein_suite},
      {"2 scheme axioms and numeric character tables", scheme_suite},
      {"3 spectrum of balanced matrices from orbital data", spectral_suite},
      {"4 clique grid decisions", clique_grid},
      {"5 Kneser vs triangle fooling instance", fooling_reproduction},
      {"6 cycle integral assignments", cycle_assignment_suite},
      {"7 unique eigenvalue 2 of odd cycles", cycle_table_suite},
      {"8 Slater point and non-Slater witness", slater_suite},
      {"9 completeness, transport, r6 equivalence, Q-matrix identities", property_suites},
  };
  int failures = 0;
  for (const auto& crit : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Check c;
    try {
      c = crit.run();
    } catch (const std::exception& e) {
      c.ok = false;
      c.notes.push_back(std::string("exception: ") + e.what());
    }
    std::printf("%s  [%s] (%zu checks, %.2f s)\n", c.ok ? "PASS" : "FAIL", crit.name, c.checks,
                seconds_since(start));
    for (const auto& note : c.notes) std::printf("      %s\n", note.c_str());
    std::fflush(stdout);
    if (!c.ok) ++failures;
  }
  return failures;
}
