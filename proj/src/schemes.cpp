#include "sda/schemes.hpp"

#include "sda/exactmat.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace sda {

AssociationScheme scheme_from_orbitals(const OrbitalStructure& o) {
  AssociationScheme s;
  for (std::size_t k = 0; k < o.count(); ++k) s.members.push_back(o.indicator<std::int64_t>(k));
  s.orbitals = o;
  return s;
}

namespace {

std::string member(std::size_t i) { return "S_" + std::to_string(i); }

void check_shapes(const AssociationScheme& s) {
  if (s.members.empty()) throw DimensionError("scheme has no members");
  const auto p = s.members[0].rows();
  for (const auto& m : s.members)
    if (m.rows() != p || m.cols() != p) throw DimensionError("scheme members differ in shape");
}

// Value of prod on the support of `pattern`, or nullopt if not constant there.
std::optional<std::int64_t> constant_on(const MemberMatrix& prod, const MemberMatrix& pattern) {
  std::optional<std::int64_t> value;
  for (Eigen::Index x = 0; x < prod.rows(); ++x)
    for (Eigen::Index y = 0; y < prod.cols(); ++y) {
      if (pattern(x, y) == 0) continue;
      if (!value)
        value = prod(x, y);
      else if (*value != prod(x, y))
        return std::nullopt;
    }
  return value.value_or(0);
}

}  // namespace

AxiomReport verify_scheme_axioms(const AssociationScheme& s, std::size_t max_vertices) {
  check_shapes(s);
  const std::size_t p = s.order(), d = s.classes();
  if (p > max_vertices)
    throw GuardError("scheme_vertices", std::to_string(p) + " vertices exceeds " + std::to_string(max_vertices));
  AxiomReport r;

  r.s1 = s.members[0] == MemberMatrix::Identity(p, p);
  if (!r.s1) r.witnesses.push_back("s1: S_0 is not the identity");

  MemberMatrix total = MemberMatrix::Zero(p, p);
  bool boolean = true;
  for (std::size_t i = 0; i < d; ++i) {
    total += s.members[i];
    if ((s.members[i].array() * (s.members[i].array() - 1)).any()) {
      boolean = false;
      r.witnesses.push_back("s2: " + member(i) + " is not 0/1");
    }
  }
  r.s2 = boolean && total == MemberMatrix::Ones(p, p);
  if (boolean && !r.s2) r.witnesses.push_back("s2: members do not sum to J");

  r.s3 = true;
  for (std::size_t i = 0; i < d; ++i) {
    MemberMatrix t = s.members[i].transpose();
    if (std::none_of(s.members.begin(), s.members.end(), [&](const MemberMatrix& m) { return m == t; })) {
      r.s3 = false;
      r.witnesses.push_back("s3: transpose of " + member(i) + " is not a member");
    }
  }

  std::vector<std::vector<MemberMatrix>> prod(d, std::vector<MemberMatrix>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) prod[i][j] = s.members[i] * s.members[j];

  r.s4 = r.s2;
  if (!r.s2) r.witnesses.push_back("s4: not checked because the members do not partition J");
  for (std::size_t i = 0; i < d && r.s2; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        if (!constant_on(prod[i][j], s.members[k])) {
          r.s4 = false;
          r.witnesses.push_back("s4: " + member(i) + member(j) + " is not constant on " + member(k));
        }

  r.s5 = true;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      if (prod[i][j] != prod[j][i]) {
        r.s5 = false;
        r.witnesses.push_back("s5: " + member(i) + " and " + member(j) + " do not commute");
      }
  return r;
}

std::optional<IntersectionNumbers> intersection_numbers(const AssociationScheme& s) {
  check_shapes(s);
  const std::size_t d = s.classes();
  IntersectionNumbers out(d, std::vector<std::vector<std::int64_t>>(d, std::vector<std::int64_t>(d)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      MemberMatrix prod = s.members[i] * s.members[j];
      for (std::size_t k = 0; k < d; ++k) {
        auto value = constant_on(prod, s.members[k]);
        if (!value) return std::nullopt;
        out[i][j][k] = *value;
      }
    }
  return out;
}

// ---------------------------------------------------------------- numeric tables

namespace {

std::optional<NumericDecomposition> try_decomposition(const AssociationScheme& s,
                                                      const std::vector<double>& coeffs, double tol) {
  const std::size_t p = s.order(), d = s.classes();
  std::vector<FloatMatrix> members;
  FloatMatrix combo = FloatMatrix::Zero(p, p);
  for (std::size_t j = 0; j < d; ++j) {
    members.push_back(s.members[j].cast<double>());
    combo += coeffs[j] * members.back();
  }
  SymmetricEigen eig = jacobi_eigen(combo, tol);
  std::vector<double> values(eig.values.data(), eig.values.data() + p);
  auto clusters = cluster_values(values, tol * std::max(1.0, combo.norm()));
  if (clusters.size() != d) return std::nullopt;

  struct Row {
    std::vector<double> entries;
    std::size_t dim;
    FloatMatrix idempotent;
    double ones_weight;
  };
  std::vector<Row> rows;
  const FloatVector ones = FloatVector::Ones(p) / std::sqrt(static_cast<double>(p));
  std::size_t offset = 0;
  for (const auto& cl : clusters) {
    FloatMatrix u = eig.vectors.middleCols(offset, cl.multiplicity);
    Row row{{}, cl.multiplicity, u * u.transpose(), (u.transpose() * ones).squaredNorm()};
    for (std::size_t j = 0; j < d; ++j)
      row.entries.push_back((u.transpose() * members[j] * u).trace() / static_cast<double>(cl.multiplicity));
    rows.push_back(std::move(row));
    offset += cl.multiplicity;
  }
  auto principal = std::max_element(rows.begin(), rows.end(),
                                    [](const Row& a, const Row& b) { return a.ones_weight < b.ones_weight; });
  std::iter_swap(rows.begin(), principal);
  std::stable_sort(rows.begin() + 1, rows.end(), [&](const Row& a, const Row& b) {
    for (std::size_t j = 1; j < d; ++j)
      if (std::abs(a.entries[j] - b.entries[j]) > tol) return a.entries[j] > b.entries[j];
    return false;
  });

  NumericDecomposition out;
  out.table.numeric = FloatMatrix(d, d);
  for (std::size_t l = 0; l < d; ++l) {
    for (std::size_t j = 0; j < d; ++j) out.table.numeric(l, j) = rows[l].entries[j];
    out.table.multiplicities.push_back(Integer(rows[l].dim));
    out.idempotents.push_back(rows[l].idempotent);
  }
  return out;
}

}  // namespace

NumericDecomposition scheme_decomposition(const AssociationScheme& s, double tol) {
  check_shapes(s);
  if (s.order() > kSchemeVertexGuard)
    throw GuardError("scheme_vertices", std::to_string(s.order()) + " vertices exceeds 200");
  for (const auto& m : s.members)
    if (m != m.transpose()) throw PreconditionError("character_table_numeric: scheme is not symmetric");
  const std::size_t d = s.classes();
  std::vector<double> primary(d), fallback(d);
  for (std::size_t j = 0; j < d; ++j) {
    primary[j] = 1.0 / static_cast<double>(j + 2);
    fallback[j] = 1.0 / static_cast<double>((j + 2) * (j + 2)) + 0.1 * static_cast<double>(j);
  }
  if (auto out = try_decomposition(s, primary, tol)) return *out;
  if (auto out = try_decomposition(s, fallback, tol)) return *out;
  throw Error("character_table_numeric: eigenvalue collision in the generic combination");
}

CharacterTable character_table_numeric(const AssociationScheme& s, double tol) {
  return scheme_decomposition(s, tol).table;
}

std::optional<RatMatrix> rationalize_table(const CharacterTable& table, const AssociationScheme& s) {
  const std::size_t d = s.classes();
  if (table.size() != d) throw DimensionError("rationalize_table: table size differs from class count");
  RatMatrix p(d, d);
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t j = 0; j < d; ++j) {
      double rounded = std::round(table.numeric(l, j));
      if (std::abs(rounded - table.numeric(l, j)) > 1e-6) return std::nullopt;
      p(l, j) = Rational(static_cast<long long>(rounded));
    }
  auto numbers = intersection_numbers(s);
  if (!numbers) return std::nullopt;
  for (std::size_t l = 0; l < d; ++l) {
    if (p(l, 0) != 1) return std::nullopt;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        Rational rhs = 0;
        for (std::size_t k = 0; k < d; ++k) rhs += (*numbers)[i][j][k] * p(l, k);
        if (p(l, i) * p(l, j) != rhs) return std::nullopt;
      }
    for (std::size_t m = 0; m < l; ++m)
      if (p.row(l) == p.row(m)) return std::nullopt;
  }
  return p;
}

std::vector<Rational> table_multiplicities(const RatMatrix& p) {
  const Eigen::Index d = p.rows();
  Rational order = 0;
  for (Eigen::Index j = 0; j < d; ++j) order += p(0, j);
  std::vector<Rational> out;
  for (Eigen::Index i = 0; i < d; ++i) {
    Rational denom = 0;
    for (Eigen::Index j = 0; j < d; ++j) denom += p(i, j) * p(i, j) / p(0, j);
    out.push_back(order / denom);
  }
  return out;
}

// ---------------------------------------------------------------- closed forms

Integer eberlein_beta(long s, long t, long q, long j) {
  if (s < 0 || t < 0 || q < 0 || j < 0) throw PreconditionError("eberlein_beta needs nonnegative arguments");
  Integer sum = 0;
  for (long i = std::max(q, j); i <= t; ++i) {
    Integer term = binomial(i, q) * binomial(t - j, i - j) * binomial(s - i - j, t - j);
    if ((i - q + j) % 2 == 0)
      sum += term;
    else
      sum -= term;
  }
  return sum;
}

namespace {

CharacterTable from_exact(RatMatrix p) {
  CharacterTable table;
  table.numeric = to_float(p);
  for (const Rational& m : table_multiplicities(p)) {
    if (denominator(m) != 1) throw Error("character table has a non-integral multiplicity");
    table.multiplicities.push_back(numerator(m));
  }
  table.exact = std::move(p);
  return table;
}

}  // namespace

CharacterTable johnson_character_table(long s, long t) {
  if (t < 1 || s <= 2 * t) throw PreconditionError("Johnson table needs s > 2t >= 2");
  RatMatrix p(t + 1, t + 1);
  for (long j = 0; j <= t; ++j)
    for (long q = 0; q <= t; ++q) p(j, q) = Rational(eberlein_beta(s, t, q, j));
  return from_exact(std::move(p));
}

Rational theta_bruteforce(long s, long t, long j, long k) {
  Integer sum = 0;
  for (long q = 0; q <= t; ++q) {
    Integer power = 1;
    for (long e = 0; e < k; ++e) power *= q;
    sum += power * eberlein_beta(s, t, q, j);
  }
  return Rational(sum);
}

std::optional<Rational> theta_closed(long s, long t, long j, long k) {
  if (k < j) return Rational(0);
  const Rational sign = (j % 2 == 0) ? 1 : -1;
  if (k == j) return sign * Rational(factorial(j) * binomial(s - 2 * j, t - j));
  if (k == j + 1) {
    if (s == 2 * j) return std::nullopt;
    Rational bracket = Rational(t) - Rational(j, 2) - Rational((t - j) * (t - j), s - 2 * j);
    return sign * Rational(factorial(j + 1) * binomial(s - 2 * j, t - j)) * bracket;
  }
  return std::nullopt;
}

CharacterTable cycle_character_table(long n) {
  if (n < 3 || n % 2 == 0) throw PreconditionError("cycle table needs odd n >= 3");
  if (n == 3) {
    RatMatrix p(2, 2);
    p << Rational(1), Rational(2), Rational(1), Rational(-1);
    return from_exact(std::move(p));
  }
  const long m = (n - 1) / 2;
  CharacterTable table;
  table.numeric = FloatMatrix(m + 1, m + 1);
  for (long k = 0; k <= m; ++k) {
    table.numeric(k, 0) = 1;
    for (long j = 1; j <= m; ++j)
      table.numeric(k, j) = 2 * std::cos(2 * std::numbers::pi * static_cast<double>(j * k) / static_cast<double>(n));
    table.multiplicities.push_back(Integer(k == 0 ? 1 : 2));
  }
  return table;
}

CharacterTable clique_character_table(long n) {
  if (n < 2) throw PreconditionError("clique table needs n >= 2");
  RatMatrix p(2, 2);
  p << Rational(1), Rational(n - 1), Rational(1), Rational(-1);
  return from_exact(std::move(p));
}

CharacterTable character_table_for(const OrbitalStructure& o, double tol) {
  std::optional<OrbitalStructure> filled;
  switch (o.source) {
    case OrbitalSource::SymbolicKneser:
      return johnson_character_table(static_cast<long>(o.params[0]), static_cast<long>(o.params[1]));
    case OrbitalSource::SymbolicCycle:
      if (o.params[0] % 2 == 1) return cycle_character_table(static_cast<long>(o.params[0]));
      // even cycles have no closed form here; fall back to the numeric route
      if (!o.materialized()) filled = symbolic_orbitals(SymbolicTag::cycle(o.params[0]), true);
      break;
    case OrbitalSource::SymbolicClique:
      return clique_character_table(static_cast<long>(o.params[0]));
    case OrbitalSource::Materialized:
      break;
  }
  AssociationScheme s = scheme_from_orbitals(filled ? *filled : o);
  CharacterTable table = character_table_numeric(s, tol);
  if (auto exact = rationalize_table(table, s)) table = from_exact(std::move(*exact));
  return table;
}

}  // namespace sda
