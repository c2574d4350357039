#pragma once

#include "sda/graphs.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sda {

struct AutomorphismGroup {
  std::size_t degree = 0;
  std::vector<VertexMap> generators;  // strong generating set
  std::vector<std::size_t> base;
  std::vector<std::size_t> basic_orbit_sizes;
  Integer order() const;
};

inline constexpr std::size_t kGeneratorVertexGuard = 256;
inline constexpr std::size_t kEnumerationVertexGuard = 16;
inline constexpr std::uint64_t kGroupOrderGuard = 1000000;

// Strong generating set by individualization and refinement.
AutomorphismGroup automorphism_group(const Digraph& g, std::size_t max_vertices = kGeneratorVertexGuard);

// Every automorphism, sorted lexicographically by image.
std::vector<VertexMap> automorphisms(const Digraph& g,
                                     std::size_t max_vertices = kEnumerationVertexGuard,
                                     std::uint64_t max_order = kGroupOrderGuard);
std::vector<VertexMap> enumerate_group(const AutomorphismGroup& group,
                                       std::uint64_t max_order = kGroupOrderGuard);

enum class OrbitalSource { Materialized, SymbolicKneser, SymbolicCycle, SymbolicClique };

struct SymbolicTag {
  OrbitalSource kind = OrbitalSource::SymbolicClique;
  std::size_t a = 0, b = 0;

  static SymbolicTag kneser(std::size_t s, std::size_t t) { return {OrbitalSource::SymbolicKneser, s, t}; }
  static SymbolicTag cycle(std::size_t n) { return {OrbitalSource::SymbolicCycle, n, 0}; }
  static SymbolicTag clique(std::size_t n) { return {OrbitalSource::SymbolicClique, n, 0}; }
};

using OrbitalIndex = Eigen::Matrix<std::int32_t, Eigen::Dynamic, Eigen::Dynamic>;

struct OrbitalStructure {
  OrbitalSource source = OrbitalSource::Materialized;
  std::vector<std::size_t> params;
  Integer vertices = 0;
  std::vector<Integer> sizes;
  std::vector<bool> diagonal;  // orbital consists of loops (x,x)
  std::vector<bool> edge;      // orbital is contained in the edge set
  std::optional<OrbitalIndex> index;  // orbital of each ordered pair, when materialized

  std::size_t count() const { return sizes.size(); }
  bool materialized() const { return index.has_value(); }
  std::size_t order() const;  // vertex count as a machine integer; requires materialized()
  std::size_t at(std::size_t x, std::size_t y) const { return static_cast<std::size_t>((*index)(x, y)); }
  std::string tag() const;

  template <typename Scalar = Rational>
  Matrix<Scalar> indicator(std::size_t k) const {
    const std::size_t p = order();
    Matrix<Scalar> r = Matrix<Scalar>::Zero(p, p);
    for (std::size_t x = 0; x < p; ++x)
      for (std::size_t y = 0; y < p; ++y)
        if (at(x, y) == k) r(x, y) = Scalar(1);
    return r;
  }
};

OrbitalStructure orbitals(const Digraph& g, std::size_t max_vertices = kGeneratorVertexGuard);
OrbitalStructure orbitals_from_generators(const Digraph& g, const std::vector<VertexMap>& generators);

inline constexpr std::size_t kSymbolicMaterializeGuard = 2000;

// Closed-form orbitals. With `materialize`, the pair index is filled in from the
// canonical vertex order of the generator (colex subsets, cycle order).
OrbitalStructure symbolic_orbitals(const SymbolicTag& tag, bool materialize = false);

bool is_generously_transitive(const Digraph& g, std::size_t max_vertices = kGeneratorVertexGuard);
bool is_generously_transitive(const OrbitalStructure& orbitals);

// (Q_xi (x) Q_alpha) m (Q_xi^T (x) Q_alpha^T) for permutations xi, alpha.
template <typename Scalar>
Matrix<Scalar> conjugate(const Matrix<Scalar>& m, const VertexMap& xi, const VertexMap& alpha) {
  const std::size_t p = xi.source_size(), n = alpha.source_size();
  if (static_cast<std::size_t>(m.rows()) != p * n || static_cast<std::size_t>(m.cols()) != p * n)
    throw DimensionError("conjugate: matrix is not pn x pn");
  Matrix<Scalar> out(p * n, p * n);
  for (std::size_t x = 0; x < p; ++x)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t y = 0; y < p; ++y)
        for (std::size_t b = 0; b < n; ++b)
          out(x * n + a, y * n + b) = m(xi(x) * n + alpha(a), xi(y) * n + alpha(b));
  return out;
}

// Group average of the conjugates of m over Aut(x) x Aut(a).
RatMatrix balance(const RatMatrix& m, const Digraph& x, const Digraph& a);
RatMatrix balance(const RatMatrix& m, const OrbitalStructure& ox, const OrbitalStructure& oa);
// Literal average over the enumerated groups; exponential, used as a cross-check.
RatMatrix balance_by_enumeration(const RatMatrix& m, const Digraph& x, const Digraph& a);

bool is_balanced(const RatMatrix& m, const std::vector<VertexMap>& aut_x,
                 const std::vector<VertexMap>& aut_a);

using OrbitalMatrix = RatMatrix;

// Throws PreconditionError when m is not constant on some orbital pattern.
OrbitalMatrix orbital_decompose(const RatMatrix& m, const OrbitalStructure& ox, const OrbitalStructure& oa);

template <typename Scalar>
Matrix<Scalar> orbital_reconstruct(const Matrix<Scalar>& v, const OrbitalStructure& ox,
                                   const OrbitalStructure& oa) {
  if (static_cast<std::size_t>(v.rows()) != ox.count() || static_cast<std::size_t>(v.cols()) != oa.count())
    throw DimensionError("orbital_reconstruct: V shape does not match the orbital structures");
  const std::size_t p = ox.order(), n = oa.order();
  Matrix<Scalar> m(p * n, p * n);
  for (std::size_t x = 0; x < p; ++x)
    for (std::size_t y = 0; y < p; ++y) {
      const std::size_t w = ox.at(x, y);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) m(x * n + a, y * n + b) = v(w, oa.at(a, b));
    }
  return m;
}

}  // namespace sda
