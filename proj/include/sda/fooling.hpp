#pragma once

#include "sda/relax.hpp"

#include <optional>
#include <vector>

namespace sda {

// Signed orientation of the distance-j cycle through vertex 0 of the n-cycle;
// j = 0 gives e_0 e_0^T. Rows and columns both sum to e_0.
IntMatrix cycle_integral_assignment(long n, long j);

struct FoolingParams {
  long n = 3;                   // odd cycle length
  std::optional<long> nprime;   // clique bound the instance must beat, if any
  Rational delta;               // 2t / (s - t)
  long t = 0;
  long s = 0;
  double max_abs_z = 0;         // largest |eigenvalue| of the cycle below 2
};

// Largest |2cos(2 pi k / n)| over k = 1..(n-1)/2.
double cycle_max_abs_z(long n);
FoolingParams fooling_params(long n, long nprime);
// Params for explicit (s, t, n); checks every constraint that applies.
FoolingParams fooling_params_explicit(long n, long s, long t, std::optional<long> nprime = std::nullopt);

OrbitalMatrix fooling_orbital_matrix(const FoolingParams& params);
// The block form of P V P~^T predicted for the construction, as floats.
FloatMatrix fooling_spectrum_closed_form(const FoolingParams& params);
RatMatrix fooling_spectrum_closed_form_exact(const FoolingParams& params);  // n = 3 only

struct FoolingCertificate {
  FoolingParams params;
  OrbitalMatrix v;
  bool exact = false;
  bool c1 = false, c2 = false, c3 = false, c4 = false;
  bool rows_nonvanishing = false;
  bool closed_form_match = false;
  std::optional<RatMatrix> spectrum_exact;
  FloatMatrix spectrum;
  long chromatic = 0;  // chromatic number of the Kneser graph, s - 2t + 2
  bool chromatic_gap = false;

  bool all() const { return c1 && c2 && c3 && c4 && rows_nonvanishing && closed_form_match && chromatic_gap; }
};

FoolingCertificate verify_fooling_orbital(const FoolingParams& params, double tol = kDefaultTol);

inline constexpr std::size_t kFoolingMaterializeGuard = 2000;

struct FoolingWitness {
  RatMatrix m;
  IntMatrix n;
  RelaxReport m_report, n_report;
  bool refinement = false;
  Spectrum spectrum;
  std::vector<double> predicted;  // entries of P V P~^T
  bool spectrum_match = false;
  double min_eigenvalue = 0;

  bool all() const {
    return m_report.sdp_matrix() && n_report.aip_matrix() && refinement && spectrum_match;
  }
};

FoolingWitness materialize_fooling_witness(const FoolingParams& params, double tol = kDefaultTol);

struct SlaterReport {
  RatMatrix m;
  bool in_u = false;  // r1, r3, r4, r5, symmetric, nonnegative
  bool psd = false;
  bool balanced = false;
  RatMatrix spectrum_pattern;  // P V P~^T from the clique tables
  Spectrum spectrum;
  bool spectrum_match = false;
  bool all() const { return in_u && psd && balanced && spectrum_match; }
};

SlaterReport slater_point(long p, long n, double tol = kDefaultTol);

struct NonSlaterReport {
  RatMatrix h, n;
  Rational step;
  bool h_in_w = false;  // symmetric, nonnegative, r1, r6
  bool n_in_w = false;
  bool within_radius = false;
  double min_eigenvalue = 0;
  bool not_psd = false;
  bool all() const { return h_in_w && n_in_w && within_radius && not_psd; }
};

NonSlaterReport non_slater_witness(long p, long n, long x, long y, long a, const RatMatrix& m0,
                                   const Rational& radius, double tol = kDefaultTol);

struct CliqueDecision {
  long p, n;
  Decision decision;
};

std::vector<CliqueDecision> clique_experiment(long p_max, long n_max);

}  // namespace sda
