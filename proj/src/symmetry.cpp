#include "sda/symmetry.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace sda {

namespace {

using Colouring = std::vector<std::uint32_t>;

bool is_automorphism(const std::vector<std::size_t>& perm, const Digraph& g) {
  return is_homomorphism(VertexMap(g.size(), perm), g, g) && VertexMap(g.size(), perm).is_bijective();
}

std::size_t colour_count(const Colouring& c) {
  std::vector<std::uint32_t> sorted(c);
  std::sort(sorted.begin(), sorted.end());
  return static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
}

bool discrete(const Colouring& c) { return colour_count(c) == c.size(); }

// Refines two colourings of the same graph in lockstep so that colour ids stay
// comparable. Returns false as soon as the colour class sizes disagree.
bool refine(const Digraph& g, Colouring& left, Colouring& right) {
  const std::size_t p = g.size();
  std::size_t classes = colour_count(left);
  while (true) {
    std::vector<std::vector<std::uint32_t>> sig(2 * p);
    for (std::size_t side = 0; side < 2; ++side) {
      const Colouring& c = side == 0 ? left : right;
      for (std::size_t v = 0; v < p; ++v) {
        auto& s = sig[side * p + v];
        s.push_back(c[v]);
        std::vector<std::uint32_t> outs, ins;
        for (std::size_t w : g.out(v)) outs.push_back(c[w]);
        for (std::size_t w : g.in(v)) ins.push_back(c[w]);
        std::sort(outs.begin(), outs.end());
        std::sort(ins.begin(), ins.end());
        s.insert(s.end(), outs.begin(), outs.end());
        s.push_back(UINT32_MAX);
        s.insert(s.end(), ins.begin(), ins.end());
      }
    }
    std::vector<std::size_t> idx(2 * p);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return sig[i] < sig[j]; });
    Colouring next(2 * p);
    std::uint32_t rank = 0;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (k > 0 && sig[idx[k]] != sig[idx[k - 1]]) ++rank;
      next[idx[k]] = rank;
    }
    std::vector<long> balance(rank + 1, 0);
    for (std::size_t v = 0; v < p; ++v) {
      ++balance[next[v]];
      --balance[next[p + v]];
    }
    if (std::any_of(balance.begin(), balance.end(), [](long b) { return b != 0; })) return false;
    left.assign(next.begin(), next.begin() + static_cast<long>(p));
    right.assign(next.begin() + static_cast<long>(p), next.end());
    std::size_t now = colour_count(left);
    if (now == classes) return true;
    classes = now;
  }
}

void individualize(Colouring& c, std::size_t v) {
  c[v] = *std::max_element(c.begin(), c.end()) + 1;
}

std::vector<std::size_t> pair_by_colour(const Colouring& left, const Colouring& right) {
  const std::size_t p = left.size();
  std::vector<std::size_t> l(p), r(p);
  std::iota(l.begin(), l.end(), 0);
  std::iota(r.begin(), r.end(), 0);
  std::stable_sort(l.begin(), l.end(), [&](std::size_t i, std::size_t j) { return left[i] < left[j]; });
  std::stable_sort(r.begin(), r.end(), [&](std::size_t i, std::size_t j) { return right[i] < right[j]; });
  std::vector<std::size_t> perm(p);
  for (std::size_t k = 0; k < p; ++k) perm[l[k]] = r[k];
  return perm;
}

// Finds an automorphism carrying the left colouring onto the right one.
std::optional<std::vector<std::size_t>> search(const Digraph& g, Colouring left, Colouring right) {
  if (!refine(g, left, right)) return std::nullopt;
  std::vector<std::size_t> guess = pair_by_colour(left, right);
  if (is_automorphism(guess, g)) return guess;
  if (discrete(left)) return std::nullopt;

  std::map<std::uint32_t, std::size_t> sizes;
  for (auto c : left) ++sizes[c];
  std::uint32_t cell = 0;
  for (auto [c, sz] : sizes)
    if (sz > 1) {
      cell = c;
      break;
    }
  std::size_t v = 0;
  while (left[v] != cell) ++v;
  for (std::size_t w = 0; w < g.size(); ++w) {
    if (right[w] != cell) continue;
    Colouring l = left, r = right;
    individualize(l, v);
    individualize(r, w);
    if (auto found = search(g, std::move(l), std::move(r))) return found;
  }
  return std::nullopt;
}

std::vector<std::size_t> orbit_of(std::size_t point, const std::vector<const VertexMap*>& gens,
                                  std::size_t p) {
  std::vector<char> seen(p, 0);
  std::vector<std::size_t> orbit{point};
  seen[point] = 1;
  for (std::size_t k = 0; k < orbit.size(); ++k)
    for (const VertexMap* g : gens) {
      std::size_t w = (*g)(orbit[k]);
      if (!seen[w]) {
        seen[w] = 1;
        orbit.push_back(w);
      }
    }
  return orbit;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

Integer AutomorphismGroup::order() const {
  Integer out = 1;
  for (std::size_t s : basic_orbit_sizes) out *= s;
  return out;
}

AutomorphismGroup automorphism_group(const Digraph& g, std::size_t max_vertices) {
  const std::size_t p = g.size();
  if (p > max_vertices)
    throw GuardError("automorphism_vertices",
                     std::to_string(p) + " vertices exceeds " + std::to_string(max_vertices));
  AutomorphismGroup group;
  group.degree = p;
  if (p == 0) return group;

  // Base and the colouring in force before each base point is individualized.
  std::vector<Colouring> levels;
  Colouring c(p, 0);
  {
    Colouring copy = c;
    refine(g, c, copy);
  }
  while (!discrete(c)) {
    std::map<std::uint32_t, std::size_t> sizes;
    for (auto col : c) ++sizes[col];
    std::uint32_t cell = 0;
    for (auto [col, sz] : sizes)
      if (sz > 1) {
        cell = col;
        break;
      }
    std::size_t v = 0;
    while (c[v] != cell) ++v;
    levels.push_back(c);
    group.base.push_back(v);
    individualize(c, v);
    Colouring copy = c;
    refine(g, c, copy);
  }

  const std::size_t depth = group.base.size();
  std::vector<std::size_t> level_of;  // generator k was found at level level_of[k]
  group.basic_orbit_sizes.assign(depth, 1);
  for (std::size_t i = depth; i-- > 0;) {
    const std::size_t b = group.base[i];
    auto stabilizer = [&] {
      std::vector<const VertexMap*> gens;
      for (std::size_t k = 0; k < group.generators.size(); ++k)
        if (level_of[k] >= i) gens.push_back(&group.generators[k]);
      return gens;
    };
    std::vector<std::size_t> orbit = orbit_of(b, stabilizer(), p);
    std::vector<char> in_orbit(p, 0);
    for (std::size_t w : orbit) in_orbit[w] = 1;
    const Colouring& before = levels[i];
    for (std::size_t w = 0; w < p; ++w) {
      if (before[w] != before[b] || in_orbit[w]) continue;
      Colouring l = before, r = before;
      individualize(l, b);
      individualize(r, w);
      if (auto perm = search(g, std::move(l), std::move(r))) {
        group.generators.emplace_back(p, std::move(*perm));
        level_of.push_back(i);
        orbit = orbit_of(b, stabilizer(), p);
        std::fill(in_orbit.begin(), in_orbit.end(), 0);
        for (std::size_t u : orbit) in_orbit[u] = 1;
      }
    }
    group.basic_orbit_sizes[i] = orbit.size();
  }
  return group;
}

std::vector<VertexMap> enumerate_group(const AutomorphismGroup& group, std::uint64_t max_order) {
  Integer order = group.order();
  if (order > max_order)
    throw GuardError("group_order", "group order " + order.str() + " exceeds " + std::to_string(max_order));
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::vector<std::size_t>> queue{identity_map(group.degree).image};
  seen.insert(queue.front());
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (const VertexMap& gen : group.generators) {
      std::vector<std::size_t> next(group.degree);
      for (std::size_t x = 0; x < group.degree; ++x) next[x] = gen(queue[k][x]);
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  std::vector<VertexMap> out;
  out.reserve(seen.size());
  for (const auto& perm : seen) out.emplace_back(group.degree, perm);
  return out;
}

std::vector<VertexMap> automorphisms(const Digraph& g, std::size_t max_vertices, std::uint64_t max_order) {
  if (g.size() > max_vertices)
    throw GuardError("automorphism_enumeration_vertices",
                     std::to_string(g.size()) + " vertices exceeds " + std::to_string(max_vertices));
  return enumerate_group(automorphism_group(g, max_vertices), max_order);
}

std::size_t OrbitalStructure::order() const {
  if (!index) throw PreconditionError("orbital structure is not materialized");
  return static_cast<std::size_t>(index->rows());
}

std::string OrbitalStructure::tag() const {
  switch (source) {
    case OrbitalSource::Materialized:
      return "materialized";
    case OrbitalSource::SymbolicKneser:
      return "kneser:" + std::to_string(params[0]) + ":" + std::to_string(params[1]);
    case OrbitalSource::SymbolicCycle:
      return "cycle:" + std::to_string(params[0]);
    case OrbitalSource::SymbolicClique:
      return "clique:" + std::to_string(params[0]);
  }
  return "unknown";
}

OrbitalStructure orbitals_from_generators(const Digraph& g, const std::vector<VertexMap>& generators) {
  const std::size_t p = g.size();
  UnionFind uf(p * p);
  for (const VertexMap& gen : generators)
    for (std::size_t x = 0; x < p; ++x)
      for (std::size_t y = 0; y < p; ++y) uf.unite(x * p + y, gen(x) * p + gen(y));

  // Union-find keeps the smallest pair index as root, so roots are the
  // lexicographically smallest representatives.
  std::vector<std::size_t> diag_roots, other_roots;
  for (std::size_t k = 0; k < p * p; ++k) {
    if (uf.find(k) != k) continue;
    (k / p == k % p ? diag_roots : other_roots).push_back(k);
  }
  std::vector<std::size_t> roots = diag_roots;
  roots.insert(roots.end(), other_roots.begin(), other_roots.end());
  std::map<std::size_t, std::int32_t> label;
  for (std::size_t i = 0; i < roots.size(); ++i) label[roots[i]] = static_cast<std::int32_t>(i);

  OrbitalStructure out;
  out.source = OrbitalSource::Materialized;
  out.vertices = p;
  out.sizes.assign(roots.size(), Integer(0));
  out.diagonal.assign(roots.size(), false);
  out.edge.assign(roots.size(), false);
  out.index = OrbitalIndex(p, p);
  for (std::size_t x = 0; x < p; ++x)
    for (std::size_t y = 0; y < p; ++y) {
      std::int32_t w = label[uf.find(x * p + y)];
      (*out.index)(x, y) = w;
      out.sizes[w] += 1;
    }
  for (std::size_t i = 0; i < roots.size(); ++i) {
    std::size_t x = roots[i] / p, y = roots[i] % p;
    out.diagonal[i] = (x == y);
    out.edge[i] = g.has_edge(x, y);
  }
  return out;
}

OrbitalStructure orbitals(const Digraph& g, std::size_t max_vertices) {
  return orbitals_from_generators(g, automorphism_group(g, max_vertices).generators);
}

OrbitalStructure symbolic_orbitals(const SymbolicTag& tag, bool materialize) {
  OrbitalStructure out;
  out.source = tag.kind;
  switch (tag.kind) {
    case OrbitalSource::SymbolicKneser: {
      const long s = static_cast<long>(tag.a), t = static_cast<long>(tag.b);
      if (t < 1 || s <= 2 * t) throw PreconditionError("Kneser orbitals need s > 2t >= 2");
      out.params = {tag.a, tag.b};
      out.vertices = binomial(s, t);
      for (long q = 0; q <= t; ++q) {
        out.sizes.push_back(out.vertices * binomial(t, t - q) * binomial(s - t, q));
        out.diagonal.push_back(q == 0);
        out.edge.push_back(q == t);
      }
      if (materialize) {
        if (out.vertices > kSymbolicMaterializeGuard)
          throw GuardError("symbolic_materialize", "C(s,t) = " + out.vertices.str());
        const auto subsets = colex_subset_lists(tag.a, tag.b);
        const std::size_t p = subsets.size();
        out.index = OrbitalIndex(p, p);
        for (std::size_t u = 0; u < p; ++u)
          for (std::size_t v = 0; v < p; ++v)
            (*out.index)(u, v) = static_cast<std::int32_t>(t - static_cast<long>(common_elements(subsets[u], subsets[v])));
      }
      break;
    }
    case OrbitalSource::SymbolicCycle: {
      const std::size_t n = tag.a;
      if (n < 3) throw PreconditionError("cycle orbitals need n >= 3");
      out.params = {n};
      out.vertices = n;
      const std::size_t m = n / 2;
      for (std::size_t d = 0; d <= m; ++d) {
        // distance n/2 on an even cycle pairs each vertex with one antipode only
        out.sizes.push_back(Integer(d == 0 || 2 * d == n ? n : 2 * n));
        out.diagonal.push_back(d == 0);
        out.edge.push_back(d == 1);
      }
      if (materialize) {
        if (n > kSymbolicMaterializeGuard) throw GuardError("symbolic_materialize", "n = " + std::to_string(n));
        out.index = OrbitalIndex(n, n);
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t y = 0; y < n; ++y) {
            std::size_t d = x > y ? x - y : y - x;
            (*out.index)(x, y) = static_cast<std::int32_t>(std::min(d, n - d));
          }
      }
      break;
    }
    case OrbitalSource::SymbolicClique: {
      const std::size_t n = tag.a;
      if (n < 2) throw PreconditionError("clique orbitals need n >= 2");
      out.params = {n};
      out.vertices = n;
      out.sizes = {Integer(n), Integer(n * n - n)};
      out.diagonal = {true, false};
      out.edge = {false, true};
      if (materialize) {
        if (n > kSymbolicMaterializeGuard) throw GuardError("symbolic_materialize", "n = " + std::to_string(n));
        out.index = OrbitalIndex(n, n);
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t y = 0; y < n; ++y) (*out.index)(x, y) = x == y ? 0 : 1;
      }
      break;
    }
    case OrbitalSource::Materialized:
      throw PreconditionError("symbolic_orbitals needs a symbolic tag");
  }
  return out;
}

bool is_generously_transitive(const OrbitalStructure& o) {
  if (!o.materialized()) return true;  // every symbolic family is generously transitive
  const std::size_t p = o.order();
  std::size_t loops = 0;
  for (std::size_t k = 0; k < o.count(); ++k) loops += o.diagonal[k] ? 1 : 0;
  if (loops != 1) return false;
  for (std::size_t x = 0; x < p; ++x)
    for (std::size_t y = x + 1; y < p; ++y)
      if (o.at(x, y) != o.at(y, x)) return false;
  return true;
}

bool is_generously_transitive(const Digraph& g, std::size_t max_vertices) {
  return is_generously_transitive(orbitals(g, max_vertices));
}

RatMatrix balance(const RatMatrix& m, const OrbitalStructure& ox, const OrbitalStructure& oa) {
  const std::size_t p = ox.order(), n = oa.order();
  if (static_cast<std::size_t>(m.rows()) != p * n || static_cast<std::size_t>(m.cols()) != p * n)
    throw DimensionError("balance: matrix is not pn x pn");
  RatMatrix sum = RatMatrix::Zero(ox.count(), oa.count());
  for (std::size_t x = 0; x < p; ++x)
    for (std::size_t y = 0; y < p; ++y)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          const Rational& value = m(x * n + a, y * n + b);
          if (value != 0) sum(ox.at(x, y), oa.at(a, b)) += value;
        }
  for (std::size_t i = 0; i < ox.count(); ++i)
    for (std::size_t j = 0; j < oa.count(); ++j) sum(i, j) /= Rational(ox.sizes[i] * oa.sizes[j]);
  return orbital_reconstruct(sum, ox, oa);
}

RatMatrix balance(const RatMatrix& m, const Digraph& x, const Digraph& a) {
  return balance(m, orbitals(x), orbitals(a));
}

RatMatrix balance_by_enumeration(const RatMatrix& m, const Digraph& x, const Digraph& a) {
  auto gx = automorphisms(x);
  auto ga = automorphisms(a);
  if (Integer(gx.size()) * ga.size() > kGroupOrderGuard)
    throw GuardError("balance_group_product", "|Aut(X)||Aut(A)| exceeds 10^6");
  RatMatrix sum = RatMatrix::Zero(m.rows(), m.cols());
  for (const auto& xi : gx)
    for (const auto& alpha : ga) sum += conjugate(m, xi, alpha);
  return sum / Rational(Integer(gx.size()) * ga.size());
}

bool is_balanced(const RatMatrix& m, const std::vector<VertexMap>& aut_x, const std::vector<VertexMap>& aut_a) {
  if (aut_x.empty() || aut_a.empty()) return true;
  const VertexMap ix = identity_map(aut_x.front().source_size());
  const VertexMap ia = identity_map(aut_a.front().source_size());
  for (const auto& xi : aut_x)
    if (conjugate(m, xi, ia) != m) return false;
  for (const auto& alpha : aut_a)
    if (conjugate(m, ix, alpha) != m) return false;
  return true;
}

OrbitalMatrix orbital_decompose(const RatMatrix& m, const OrbitalStructure& ox, const OrbitalStructure& oa) {
  const std::size_t p = ox.order(), n = oa.order();
  if (static_cast<std::size_t>(m.rows()) != p * n || static_cast<std::size_t>(m.cols()) != p * n)
    throw DimensionError("orbital_decompose: matrix is not pn x pn");
  OrbitalMatrix v(ox.count(), oa.count());
  Eigen::Matrix<char, Eigen::Dynamic, Eigen::Dynamic> set = decltype(set)::Zero(ox.count(), oa.count());
  for (std::size_t x = 0; x < p; ++x)
    for (std::size_t y = 0; y < p; ++y)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          const std::size_t i = ox.at(x, y), j = oa.at(a, b);
          const Rational& value = m(x * n + a, y * n + b);
          if (!set(i, j)) {
            v(i, j) = value;
            set(i, j) = 1;
          } else if (v(i, j) != value) {
            throw PreconditionError("orbital_decompose: matrix is not balanced (orbital pair " +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
          }
        }
  return v;
}

}  // namespace sda
