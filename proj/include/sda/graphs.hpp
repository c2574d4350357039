#pragma once

#include "sda/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sda {

using Edge = std::pair<std::size_t, std::size_t>;

class Digraph {
 public:
  Digraph() = default;
  // Duplicate edges are merged; edges are stored sorted.
  Digraph(std::size_t vertices, std::vector<Edge> edges);

  std::size_t size() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }
  bool has_edge(std::size_t x, std::size_t y) const;
  // Position of (x, y) in edges(), if present.
  std::optional<std::size_t> edge_index(std::size_t x, std::size_t y) const;
  std::span<const std::size_t> out(std::size_t x) const { return out_[x]; }
  std::span<const std::size_t> in(std::size_t x) const { return in_[x]; }
  std::size_t degree(std::size_t x) const { return out_[x].size() + in_[x].size(); }

  bool is_loopless() const;
  bool is_symmetric() const;

  template <typename Scalar>
  Matrix<Scalar> adjacency() const {
    Matrix<Scalar> m = Matrix<Scalar>::Zero(n_, n_);
    for (auto [x, y] : edges_) m(x, y) = Scalar(1);
    return m;
  }

  bool operator==(const Digraph& other) const { return n_ == other.n_ && edges_ == other.edges_; }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> out_, in_;
};

struct VertexMap {
  std::size_t target_size = 0;
  std::vector<std::size_t> image;

  VertexMap() = default;
  VertexMap(std::size_t target, std::vector<std::size_t> images);

  std::size_t source_size() const { return image.size(); }
  std::size_t operator()(std::size_t x) const { return image[x]; }
  bool is_bijective() const;
  bool operator==(const VertexMap& other) const = default;
};

VertexMap identity_map(std::size_t n);
// (g after f)(x) = g(f(x)).
VertexMap compose(const VertexMap& g, const VertexMap& f);
VertexMap inverse(const VertexMap& permutation);

inline constexpr std::uint64_t kKneserVertexGuard = 100000;

Digraph make_clique(std::size_t n);
Digraph make_cycle(std::size_t n);
Digraph make_kneser(std::size_t s, std::size_t t);
Digraph make_generalized_johnson(std::size_t s, std::size_t t, std::size_t q);
// t-subsets of {0..s-1} as bitmasks, colexicographic order; s <= 63.
std::vector<std::uint64_t> colex_subsets(std::size_t s, std::size_t t);
// The same subsets in the same order as sorted element lists, for any s.
std::vector<std::vector<std::size_t>> colex_subset_lists(std::size_t s, std::size_t t);
// Size of the intersection of two sorted element lists.
std::size_t common_elements(const std::vector<std::size_t>& u, const std::vector<std::size_t>& v);

bool is_homomorphism(const VertexMap& f, const Digraph& x, const Digraph& a);

struct HomSearchGuard {
  std::size_t max_source = 20;
  std::size_t max_target = 6;
};

// Exhaustive backtracking; throws GuardError when both size limits are exceeded.
std::optional<VertexMap> find_homomorphism(const Digraph& x, const Digraph& a,
                                           HomSearchGuard guard = {});

template <typename Scalar = Rational>
Matrix<Scalar> q_matrix(const VertexMap& f) {
  Matrix<Scalar> q = Matrix<Scalar>::Zero(f.source_size(), f.target_size);
  for (std::size_t r = 0; r < f.source_size(); ++r) q(r, f(r)) = Scalar(1);
  return q;
}

// Edge-list text: first line the vertex count, then one "u v" pair per line.
// Blank lines and lines starting with '#' are skipped.
Digraph parse_edge_list(std::istream& in);
Digraph read_edge_list(const std::string& path);
std::string format_edge_list(const Digraph& g);

// "clique:n", "cycle:n", "kneser:s:t", "johnson:s:t:q", or an edge-list file path.
Digraph graph_from_spec(const std::string& spec);

}  // namespace sda
