#pragma once

#include "sda/symmetry.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sda {

using MemberMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

struct AssociationScheme {
  std::vector<MemberMatrix> members;
  std::optional<OrbitalStructure> orbitals;

  std::size_t order() const { return members.empty() ? 0 : static_cast<std::size_t>(members[0].rows()); }
  std::size_t classes() const { return members.size(); }
};

AssociationScheme scheme_from_orbitals(const OrbitalStructure& o);

struct AxiomReport {
  bool s1 = false;  // S_0 = I
  bool s2 = false;  // 0/1 members summing to J
  bool s3 = false;  // closed under transpose
  bool s4 = false;  // products lie in the span
  bool s5 = false;  // products commute
  std::vector<std::string> witnesses;
  bool all() const { return s1 && s2 && s3 && s4 && s5; }
};

inline constexpr std::size_t kSchemeVertexGuard = 200;

AxiomReport verify_scheme_axioms(const AssociationScheme& s, std::size_t max_vertices = kSchemeVertexGuard);

// p^k_ij with S_i S_j = sum_k p^k_ij S_k, indexed [i][j][k]; nullopt when s4 fails.
using IntersectionNumbers = std::vector<std::vector<std::vector<std::int64_t>>>;
std::optional<IntersectionNumbers> intersection_numbers(const AssociationScheme& s);

inline const char* const kTableConvention =
    "rows: all-ones eigenspace first, then descending on member 1; columns: member order";

struct CharacterTable {
  std::optional<RatMatrix> exact;
  FloatMatrix numeric;
  std::vector<Integer> multiplicities;  // dimension of each eigenspace, by row
  std::string convention = kTableConvention;

  std::size_t size() const { return static_cast<std::size_t>(numeric.rows()); }
  bool is_exact() const { return exact.has_value(); }
};

struct NumericDecomposition {
  CharacterTable table;
  std::vector<FloatMatrix> idempotents;  // by row of the table
};

NumericDecomposition scheme_decomposition(const AssociationScheme& s, double tol = kDefaultTol);
CharacterTable character_table_numeric(const AssociationScheme& s, double tol = kDefaultTol);

// Rounds a numeric table to integers and accepts it when every row is a
// character of the Bose-Mesner algebra (checked exactly via intersection numbers).
std::optional<RatMatrix> rationalize_table(const CharacterTable& table, const AssociationScheme& s);

// m_i = p / sum_j p_ij^2 / k_j, with the valencies k taken from row 0.
std::vector<Rational> table_multiplicities(const RatMatrix& p);

Integer eberlein_beta(long s, long t, long q, long j);
CharacterTable johnson_character_table(long s, long t);
Rational theta_bruteforce(long s, long t, long j, long k);
std::optional<Rational> theta_closed(long s, long t, long j, long k);
CharacterTable cycle_character_table(long n);
CharacterTable clique_character_table(long n);

// Closed-form table for symbolic orbitals; numeric (rationalized when possible) otherwise.
CharacterTable character_table_for(const OrbitalStructure& o, double tol = kDefaultTol);

}  // namespace sda
