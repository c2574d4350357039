#include "sda/relax.hpp"
#include "relax_fixtures.hpp"

#include <gtest/gtest.h>

namespace sda {
namespace {

using testing::Rng;

TEST(Relaxation, HomWitnesses) {
  Rng rng(61);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 40; ++trial) {
    Digraph x = testing::random_digraph(rng, 2 + trial % 5, 0.4);
    Digraph a = testing::random_digraph(rng, 2 + trial % 4, 0.6, trial % 3 == 0);
    auto f = find_homomorphism(x, a);
    if (!f) continue;
    ++checked;
    RatMatrix m = hom_to_sdp_matrix(*f, x, a);
    RelaxReport rm = check_relaxation(m, x, a);
    EXPECT_TRUE(rm.sdp_matrix() && rm.r6 && rm.symmetric && rm.integral);
    IntMatrix nm = hom_to_aip_matrix(*f, x, a);
    EXPECT_TRUE(check_relaxation(nm, x, a).aip_matrix());
    EXPECT_EQ(to_rational(nm), m);
  }
  EXPECT_GE(checked, 40);
}

TEST(Relaxation, HomWitnessRejectsNonHomomorphism) {
  VertexMap constant(2, {0, 0, 0});
  EXPECT_THROW(hom_to_sdp_matrix(constant, make_clique(3), make_clique(2)), PreconditionError);
  EXPECT_THROW(hom_to_aip_matrix(constant, make_clique(3), make_clique(2)), PreconditionError);
}

TEST(Relaxation, ReportsNamedFailures) {
  Digraph x = make_clique(2), a = make_clique(2);
  RatMatrix m = hom_to_sdp_matrix(VertexMap(2, {0, 1}), x, a);
  m(0, 1) = 1;  // off-diagonal inside a diagonal block
  RelaxReport r = check_relaxation(m, x, a);
  EXPECT_FALSE(r.r1);
  EXPECT_FALSE(r.r5);
  EXPECT_FALSE(r.witnesses.empty());
  RatMatrix e = hom_to_sdp_matrix(VertexMap(2, {0, 1}), x, a);
  e(0, 2) = 1;  // loop (0,0) of A inside an edge block
  EXPECT_FALSE(check_relaxation(e, x, a).r2);
  EXPECT_THROW(check_relaxation(RatMatrix(RatMatrix::Zero(3, 3)), x, a), DimensionError);
}

TEST(Relaxation, R345ImpliesR6) {
  Rng rng(67);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t p = 1 + trial % 4, n = 1 + (trial / 4) % 4;
    Digraph x(p, {}), a(n, {});
    RatMatrix m = testing::random_r345_matrix(rng, p, n);
    RelaxReport r = check_relaxation(m, x, a, kDefaultTol, false);
    ASSERT_TRUE(r.r3 && r.r4 && r.r5) << trial;
    EXPECT_TRUE(r.r6) << trial;
  }
}

TEST(Relaxation, PsdAndR6ImplyR345) {
  Rng rng(71);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t p = 1 + trial % 4, n = 1 + (trial / 4) % 4;
    Digraph x(p, {}), a(n, {});
    RatMatrix m = testing::random_psd_r6_matrix(rng, p, n);
    RelaxReport r = check_relaxation(m, x, a);
    ASSERT_TRUE(r.r6 && r.psd) << trial;
    EXPECT_TRUE(r.r3 && r.r4 && r.r5) << trial;
  }
}

TEST(Relaxation, R6AloneDoesNotImplyR3) {
  Digraph x(2, {}), a(2, {});
  RatMatrix m = RatMatrix::Constant(4, 4, Rational(1, 4));
  m(0, 0) += 1;
  m(1, 0) -= 1;
  RelaxReport r = check_relaxation(m, x, a);
  EXPECT_TRUE(r.r6);
  EXPECT_FALSE(r.r3);
  EXPECT_FALSE(r.psd);
}

TEST(Transport, WitnessesTravelAlongHomomorphisms) {
  Rng rng(73);
  int done = 0;
  for (int trial = 0; trial < 2000 && done < 30; ++trial) {
    Digraph x = testing::random_digraph(rng, 2 + trial % 4, 0.5);
    Digraph a = testing::random_digraph(rng, 2 + trial % 3, 0.6);
    Digraph xp = testing::random_digraph(rng, 2 + trial % 5, 0.3);
    Digraph ap = testing::random_digraph(rng, 2 + trial % 4, 0.7);
    auto h = find_homomorphism(x, a);
    auto f = find_homomorphism(xp, x);
    auto g = find_homomorphism(a, ap);
    if (!h || !f || !g) continue;
    ++done;
    RatMatrix m = hom_to_sdp_matrix(*h, x, a);
    RatMatrix moved = transport(m, *f, xp, x, *g, a, ap);
    EXPECT_TRUE(check_relaxation(moved, xp, ap).sdp_matrix());
    // the transported hom witness is the witness of the composite map
    EXPECT_EQ(moved, hom_to_sdp_matrix(compose(*g, compose(*h, *f)), xp, ap));
    IntMatrix n = hom_to_aip_matrix(*h, x, a);
    EXPECT_TRUE(check_relaxation(IntMatrix(transport(n, *f, xp, x, *g, a, ap)), xp, ap).aip_matrix());
  }
  EXPECT_EQ(done, 30);
  EXPECT_THROW(transport(RatMatrix(RatMatrix::Zero(4, 4)), VertexMap(2, {0, 0}), make_clique(2), make_clique(2),
                         identity_map(2), make_clique(2), make_clique(2)),
               PreconditionError);
}

TEST(Transport, NonHomWitnessesToo) {
  // The SDP witness of K3 -> K3 moved along C5 -> K3 and K3 -> K4.
  Digraph c5 = make_cycle(5), k3 = make_clique(3), k4 = make_clique(4);
  RatMatrix m = hom_to_sdp_matrix(identity_map(3), k3, k3);
  m = balance(m, k3, k3);
  ASSERT_TRUE(check_relaxation(m, k3, k3).sdp_matrix());
  VertexMap f = *find_homomorphism(c5, k3);
  VertexMap g(4, {0, 1, 2});
  EXPECT_TRUE(check_relaxation(transport(m, f, c5, k3, g, k3, k4), c5, k4).sdp_matrix());
}

struct SpectralCase {
  OrbitalStructure ox, oa;
  CharacterTable px, pa;
};

void expect_spectral_law(const SpectralCase& c, Rng& rng, double tol) {
  OrbitalMatrix v = testing::random_orbital_matrix(rng, c.ox, c.oa);
  FloatMatrix m = to_float(orbital_reconstruct(v, c.ox, c.oa));
  Spectrum s = eig_sym(m);
  auto predicted = testing::weighted_entries(orbital_spectrum(to_float(v), c.px, c.pa), c.px, c.pa);
  ASSERT_EQ(predicted.size(), s.values.size());
  for (std::size_t i = 0; i < predicted.size(); ++i) EXPECT_NEAR(predicted[i], s.values[i], tol);
  if (c.px.is_exact() && c.pa.is_exact())
    EXPECT_LT((to_float(orbital_spectrum_exact(v, c.px, c.pa)) - orbital_spectrum(to_float(v), c.px, c.pa))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-12);
}

TEST(OrbitalSpectrum, EigenvaluesAreEntriesOfPattern) {
  Rng rng(79);
  std::vector<SpectralCase> cases;
  auto add = [&](const Digraph& x, const Digraph& a) {
    OrbitalStructure ox = orbitals(x), oa = orbitals(a);
    cases.push_back({ox, oa, character_table_for(ox), character_table_for(oa)});
  };
  add(make_clique(3), make_clique(4));
  add(make_clique(4), make_clique(2));
  add(make_cycle(3), make_cycle(3));
  add(make_cycle(5), make_cycle(3));
  add(make_cycle(7), make_clique(3));
  add(make_kneser(5, 2), make_cycle(3));
  for (const auto& c : cases)
    for (int trial = 0; trial < 5; ++trial) expect_spectral_law(c, rng, 1e-8);
}

TEST(OrbitalLp, Cliques) {
  for (std::size_t p = 2; p <= 6; ++p)
    for (std::size_t n = 2; n <= 6; ++n) {
      auto ox = symbolic_orbitals(SymbolicTag::clique(p)), oa = symbolic_orbitals(SymbolicTag::clique(n));
      OrbitalLpResult r = sdp_accepts_orbital(ox, character_table_for(ox), oa, character_table_for(oa));
      EXPECT_TRUE(r.exact);
      EXPECT_EQ(r.decision, p <= n ? Decision::Yes : Decision::No) << p << "," << n;
      if (r.v) {
        auto oxm = symbolic_orbitals(SymbolicTag::clique(p), true), oam = symbolic_orbitals(SymbolicTag::clique(n), true);
        RatMatrix m = orbital_reconstruct(*r.v, oxm, oam);
        EXPECT_TRUE(check_relaxation(m, make_clique(p), make_clique(n)).sdp_matrix());
      }
    }
}

TEST(OrbitalLp, MaxSupportContainsEverySolution) {
  OrbitalStructure ox = orbitals(make_cycle(3)), oa = orbitals(make_clique(4));
  auto px = character_table_for(ox), pa = character_table_for(oa);
  OrbitalLpResult any = sdp_accepts_orbital(ox, px, oa, pa);
  OrbitalLpResult max = sdp_max_support_orbital(ox, px, oa, pa);
  ASSERT_TRUE(any.v && max.v);
  EXPECT_TRUE(support_subset(*any.v, *max.v));
  EXPECT_TRUE(check_relaxation(orbital_reconstruct(*max.v, ox, oa), make_cycle(3), make_clique(4)).sdp_matrix());
}

TEST(OrbitalLp, FloatTablesNeverRefute) {
  OrbitalStructure ox = orbitals(make_cycle(5)), oa = orbitals(make_cycle(7));
  OrbitalLpResult r = sdp_accepts_orbital(ox, character_table_for(ox), oa, character_table_for(oa));
  EXPECT_NE(r.decision, Decision::No);
  EXPECT_FALSE(r.exact);
}

TEST(NumericSdp, ConvergesOnFeasibleInstance) {
  NumericSdpOptions opt;
  opt.max_iter = 20000;
  NumericSdpResult r = sdp_feasible_numeric(make_cycle(4), make_clique(2), opt);
  ASSERT_TRUE(r.m);
  RelaxReport rep = check_relaxation(*r.m, make_cycle(4), make_clique(2), 1e-6);
  EXPECT_TRUE(rep.sdp_matrix()) << (rep.witnesses.empty() ? "" : rep.witnesses.front());
}

TEST(NumericSdp, GuardAndCancellation) {
  NumericSdpOptions opt;
  opt.max_dim = 10;
  EXPECT_THROW(sdp_feasible_numeric(make_clique(4), make_clique(3), opt), GuardError);
  std::stop_source src;
  src.request_stop();
  EXPECT_FALSE(sdp_feasible_numeric(make_clique(3), make_clique(3), {}, src.get_token()).m);
}

TEST(Aip, OddCycleIsNotTwoColourable) {
  EXPECT_FALSE(aip_solve(make_cycle(5), make_clique(2)).has_value());
  EXPECT_TRUE(aip_solve(make_cycle(6), make_clique(2)).has_value());
  EXPECT_THROW(aip_solve(make_cycle(1), make_clique(2)), PreconditionError);
}

TEST(Aip, SolutionsSatisfyConstraintsAndAssemble) {
  Rng rng(83);
  int solved = 0;
  for (int trial = 0; trial < 60; ++trial) {
    Digraph x = testing::random_digraph(rng, 2 + trial % 5, 0.4);
    Digraph a = testing::random_digraph(rng, 2 + trial % 4, 0.5, trial % 4 == 0);
    auto mu = aip_solve(x, a);
    if (find_homomorphism(x, a)) EXPECT_TRUE(mu.has_value()) << trial;
    if (!mu) continue;
    ++solved;
    EXPECT_TRUE(aip_satisfied(*mu, x, a));
    IntMatrix n = assemble_aip_matrix(*mu, x, a);
    EXPECT_TRUE(check_relaxation(n, x, a, kDefaultTol, false).aip_matrix()) << trial;
  }
  EXPECT_GT(solved, 20);
}

TEST(Aip, ForcedZerosAreRespected) {
  Digraph x = make_clique(2), a = make_clique(3);
  ForcedZeros z;
  z.vertex.insert({0, 0});
  z.vertex.insert({0, 1});
  auto mu = aip_solve(x, a, z);
  ASSERT_TRUE(mu);
  EXPECT_EQ(mu->vertex(0, 2), 1);
  z.vertex.insert({0, 2});
  EXPECT_FALSE(aip_solve(x, a, z).has_value());
}

TEST(Sda, CanonicalInstances) {
  SdaResult k54 = sda_accepts(make_clique(5), make_clique(4));
  EXPECT_EQ(k54.decision, Decision::No);
  EXPECT_EQ(k54.path, "exact");

  SdaResult c5 = sda_accepts(make_cycle(5), make_clique(3));
  EXPECT_EQ(c5.decision, Decision::Yes);

  SdaResult g73 = sda_accepts(make_kneser(7, 3), make_cycle(3));
  EXPECT_EQ(g73.decision, Decision::Yes);
  EXPECT_EQ(g73.path, "exact");
  ASSERT_TRUE(g73.witness && g73.witness->m_exact && g73.witness->n);
  EXPECT_TRUE(check_relaxation(*g73.witness->m_exact, make_kneser(7, 3), make_cycle(3)).sdp_matrix());
  EXPECT_TRUE(check_relaxation(*g73.witness->n, make_kneser(7, 3), make_cycle(3), kDefaultTol, false).aip_matrix());
  EXPECT_TRUE(g73.witness->refinement);
}

TEST(Sda, CompletenessAndNoFalseRefutations) {
  Rng rng(89);
  SdaOptions opt;
  opt.numeric.max_iter = 500;
  for (int trial = 0; trial < 25; ++trial) {
    Digraph x = testing::random_undirected(rng, 3 + trial % 3, 0.5);
    Digraph a = testing::random_undirected(rng, 2 + trial % 3, 0.5);
    SdaResult r = sda_accepts(x, a, opt);
    if (find_homomorphism(x, a)) EXPECT_EQ(r.decision, Decision::Yes) << trial;
    if (r.decision == Decision::No) EXPECT_EQ(r.path, "exact");
    if (r.path == "numeric") EXPECT_NE(r.decision, Decision::No);
  }
}

TEST(Sdp, DecideMatchesOrbitalOnCliques) {
  for (std::size_t p = 2; p <= 5; ++p)
    for (std::size_t n = 2; n <= 5; ++n) {
      SdpDecision d = sdp_decide(make_clique(p), make_clique(n));
      EXPECT_EQ(d.decision, p <= n ? Decision::Yes : Decision::No);
    }
}

}  // namespace
}  // namespace sda
