#pragma once

// Shared generators and brute-force oracles for the test binaries.

#include "sda/fooling.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace sda::testing {

using Rng = std::mt19937_64;

inline Rational random_rational(Rng& rng, int lo = -5, int hi = 5, int max_den = 4) {
  std::uniform_int_distribution<int> num(lo, hi), den(1, max_den);
  return Rational(num(rng), den(rng));
}

inline RatMatrix random_rat_matrix(Rng& rng, Eigen::Index r, Eigen::Index c, int lo = -5, int hi = 5) {
  RatMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = random_rational(rng, lo, hi);
  return m;
}

inline Digraph random_undirected(Rng& rng, std::size_t n, double density) {
  std::bernoulli_distribution coin(density);
  std::vector<Edge> e;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      if (coin(rng)) {
        e.emplace_back(x, y);
        e.emplace_back(y, x);
      }
  return Digraph(n, std::move(e));
}

inline Digraph random_digraph(Rng& rng, std::size_t n, double density, bool loops = false) {
  std::bernoulli_distribution coin(density);
  std::vector<Edge> e;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if ((loops || x != y) && coin(rng)) e.emplace_back(x, y);
  return Digraph(n, std::move(e));
}

inline VertexMap random_map(Rng& rng, std::size_t from, std::size_t to) {
  std::uniform_int_distribution<std::size_t> pick(0, to - 1);
  std::vector<std::size_t> img(from);
  for (auto& v : img) v = pick(rng);
  return VertexMap(to, std::move(img));
}

inline VertexMap random_permutation(Rng& rng, std::size_t n) {
  std::vector<std::size_t> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = i;
  std::shuffle(img.begin(), img.end(), rng);
  return VertexMap(n, std::move(img));
}

// Every map from x to a, in odometer order; the first homomorphism found.
inline std::optional<VertexMap> brute_force_hom(const Digraph& x, const Digraph& a) {
  const std::size_t p = x.size(), n = a.size();
  if (n == 0) return p == 0 ? std::optional<VertexMap>(VertexMap(0, {})) : std::nullopt;
  std::vector<std::size_t> img(p, 0);
  while (true) {
    VertexMap f(n, img);
    if (is_homomorphism(f, x, a)) return f;
    std::size_t i = 0;
    while (i < p && ++img[i] == n) img[i++] = 0;
    if (i == p) return std::nullopt;
  }
}

// All permutations of {0..n-1} preserving g, by brute force.
inline std::vector<VertexMap> brute_force_automorphisms(const Digraph& g) {
  std::vector<std::size_t> img(g.size());
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = i;
  std::vector<VertexMap> out;
  do {
    VertexMap f(g.size(), img);
    bool ok = true;
    for (auto [x, y] : g.edges())
      if (!g.has_edge(f(x), f(y))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(f);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

// Random nonnegative orbital matrix, zero where a relaxation must vanish, then
// normalised so every block of the reconstructed matrix sums to one.
inline OrbitalMatrix random_orbital_matrix(Rng& rng, const OrbitalStructure& ox, const OrbitalStructure& oa) {
  std::uniform_int_distribution<int> val(0, 6);
  OrbitalMatrix v(ox.count(), oa.count());
  for (std::size_t i = 0; i < ox.count(); ++i)
    for (std::size_t j = 0; j < oa.count(); ++j) {
      const bool forced = (ox.diagonal[i] && !oa.diagonal[j]) || (ox.edge[i] && !oa.edge[j]);
      v(i, j) = forced ? Rational(0) : Rational(val(rng));
    }
  for (std::size_t i = 0; i < ox.count(); ++i) {
    Rational mass = 0;
    for (std::size_t j = 0; j < oa.count(); ++j) mass += v(i, j) * Rational(oa.sizes[j]);
    if (mass == 0) {
      for (std::size_t j = 0; j < oa.count(); ++j)
        if (!((ox.diagonal[i] && !oa.diagonal[j]) || (ox.edge[i] && !oa.edge[j]))) {
          v(i, j) = 1;
          mass += Rational(oa.sizes[j]);
          break;
        }
    }
    for (std::size_t j = 0; j < oa.count(); ++j) v(i, j) /= mass;
  }
  return v;
}

// Sorted copy of the entries of a matrix, each repeated by the multiplicity
// product of its row and column eigenspaces.
inline std::vector<double> weighted_entries(const FloatMatrix& pattern, const CharacterTable& px,
                                            const CharacterTable& pa) {
  std::vector<double> out;
  for (Eigen::Index i = 0; i < pattern.rows(); ++i)
    for (Eigen::Index j = 0; j < pattern.cols(); ++j) {
      const auto reps = static_cast<std::size_t>(px.multiplicities[i] * pa.multiplicities[j]);
      out.insert(out.end(), reps, pattern(i, j));
    }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace sda::testing
