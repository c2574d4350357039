#include "sda/graphs.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <numeric>
#include <sstream>

namespace sda {

Digraph::Digraph(std::size_t vertices, std::vector<Edge> edges)
    : n_(vertices), edges_(std::move(edges)), out_(vertices), in_(vertices) {
  for (auto [x, y] : edges_)
    if (x >= n_ || y >= n_)
      throw PreconditionError("edge (" + std::to_string(x) + "," + std::to_string(y) +
                              ") out of range for " + std::to_string(n_) + " vertices");
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (auto [x, y] : edges_) {
    out_[x].push_back(y);
    in_[y].push_back(x);
  }
}

bool Digraph::has_edge(std::size_t x, std::size_t y) const {
  return std::binary_search(out_[x].begin(), out_[x].end(), y);
}

std::optional<std::size_t> Digraph::edge_index(std::size_t x, std::size_t y) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{x, y});
  if (it == edges_.end() || *it != Edge{x, y}) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

bool Digraph::is_loopless() const {
  return std::none_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.first == e.second; });
}

bool Digraph::is_symmetric() const {
  return std::all_of(edges_.begin(), edges_.end(),
                     [&](const Edge& e) { return has_edge(e.second, e.first); });
}

VertexMap::VertexMap(std::size_t target, std::vector<std::size_t> images)
    : target_size(target), image(std::move(images)) {
  for (std::size_t v : image)
    if (v >= target_size) throw PreconditionError("vertex map image out of range");
}

bool VertexMap::is_bijective() const {
  if (image.size() != target_size) return false;
  std::vector<char> hit(target_size, 0);
  for (std::size_t v : image) {
    if (hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

VertexMap identity_map(std::size_t n) {
  std::vector<std::size_t> image(n);
  std::iota(image.begin(), image.end(), 0);
  return VertexMap(n, std::move(image));
}

VertexMap compose(const VertexMap& g, const VertexMap& f) {
  if (f.target_size != g.source_size()) throw DimensionError("compose: maps are not composable");
  std::vector<std::size_t> image(f.source_size());
  for (std::size_t x = 0; x < image.size(); ++x) image[x] = g(f(x));
  return VertexMap(g.target_size, std::move(image));
}

VertexMap inverse(const VertexMap& permutation) {
  if (!permutation.is_bijective()) throw PreconditionError("inverse: map is not a bijection");
  std::vector<std::size_t> image(permutation.source_size());
  for (std::size_t x = 0; x < image.size(); ++x) image[permutation(x)] = x;
  const std::size_t n = image.size();
  return VertexMap(n, std::move(image));
}

Digraph make_clique(std::size_t n) {
  if (n < 1) throw PreconditionError("clique needs n >= 1");
  std::vector<Edge> edges;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (x != y) edges.emplace_back(x, y);
  return Digraph(n, std::move(edges));
}

Digraph make_cycle(std::size_t n) {
  if (n < 1) throw PreconditionError("cycle needs n >= 1");
  std::vector<Edge> edges;
  for (std::size_t x = 0; x < n; ++x) {
    edges.emplace_back(x, (x + 1) % n);
    edges.emplace_back((x + 1) % n, x);
  }
  return Digraph(n, std::move(edges));
}

std::vector<std::uint64_t> colex_subsets(std::size_t s, std::size_t t) {
  if (s > 63) throw GuardError("kneser_ground_set", "s must be at most 63");
  if (t > s) return {};
  Integer count = binomial(static_cast<long>(s), static_cast<long>(t));
  if (count > kKneserVertexGuard)
    throw GuardError("kneser_vertices", "C(s,t) = " + count.str() + " exceeds " +
                                            std::to_string(kKneserVertexGuard));
  std::vector<std::uint64_t> out;
  out.reserve(count.convert_to<std::size_t>());
  if (t == 0) return {0};
  // Gosper's hack enumerates masks in increasing numeric order, which is colex order.
  std::uint64_t mask = (std::uint64_t{1} << t) - 1;
  const std::uint64_t limit = std::uint64_t{1} << s;
  while (mask < limit) {
    out.push_back(mask);
    std::uint64_t c = mask & (~mask + 1);
    std::uint64_t r = mask + c;
    mask = (((r ^ mask) >> 2) / c) | r;
  }
  return out;
}

std::vector<std::vector<std::size_t>> colex_subset_lists(std::size_t s, std::size_t t) {
  if (t > s) return {};
  Integer count = binomial(static_cast<long>(s), static_cast<long>(t));
  if (count > kKneserVertexGuard)
    throw GuardError("kneser_vertices", "C(s,t) = " + count.str() + " exceeds " +
                                            std::to_string(kKneserVertexGuard));
  std::vector<std::vector<std::size_t>> out;
  out.reserve(count.convert_to<std::size_t>());
  std::vector<std::size_t> c(t);
  std::iota(c.begin(), c.end(), 0);
  while (true) {
    out.push_back(c);
    // bump the lowest element that has room below its successor, reset the ones beneath
    std::size_t i = 0;
    while (i < t && c[i] + 1 == (i + 1 < t ? c[i + 1] : s)) ++i;
    if (i == t) break;
    ++c[i];
    for (std::size_t k = 0; k < i; ++k) c[k] = k;
  }
  return out;
}

std::size_t common_elements(const std::vector<std::size_t>& u, const std::vector<std::size_t>& v) {
  std::size_t i = 0, j = 0, hits = 0;
  while (i < u.size() && j < v.size()) {
    if (u[i] == v[j]) {
      ++hits;
      ++i;
      ++j;
    } else if (u[i] < v[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return hits;
}

namespace {

void check_johnson_params(std::size_t s, std::size_t t) {
  if (t < 1 || s <= 2 * t) throw PreconditionError("Kneser parameters need s > 2t >= 2");
}

}  // namespace

Digraph make_generalized_johnson(std::size_t s, std::size_t t, std::size_t q) {
  check_johnson_params(s, t);
  if (q > t) throw PreconditionError("generalized Johnson graph needs q <= t");
  const auto subsets = colex_subset_lists(s, t);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < subsets.size(); ++u)
    for (std::size_t v = 0; v < subsets.size(); ++v)
      if (common_elements(subsets[u], subsets[v]) == t - q) edges.emplace_back(u, v);
  return Digraph(subsets.size(), std::move(edges));
}

Digraph make_kneser(std::size_t s, std::size_t t) { return make_generalized_johnson(s, t, t); }

bool is_homomorphism(const VertexMap& f, const Digraph& x, const Digraph& a) {
  if (f.source_size() != x.size() || f.target_size != a.size()) return false;
  return std::all_of(x.edges().begin(), x.edges().end(),
                     [&](const Edge& e) { return a.has_edge(f(e.first), f(e.second)); });
}

std::optional<VertexMap> find_homomorphism(const Digraph& x, const Digraph& a, HomSearchGuard guard) {
  if (x.size() > guard.max_source && a.size() > guard.max_target)
    throw GuardError("homomorphism_search",
                     "source has " + std::to_string(x.size()) + " vertices and target " +
                         std::to_string(a.size()));
  const std::size_t p = x.size(), n = a.size();
  if (p == 0) return VertexMap(n, {});
  if (n == 0) return std::nullopt;

  std::vector<std::size_t> order(p);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t u, std::size_t v) { return x.degree(u) > x.degree(v); });

  using Domain = std::vector<char>;
  std::vector<Domain> domains(p, Domain(n, 1));
  for (std::size_t u = 0; u < p; ++u)
    if (x.has_edge(u, u))
      for (std::size_t v = 0; v < n; ++v) domains[u][v] = a.has_edge(v, v);

  std::vector<std::size_t> image(p, SIZE_MAX);
  std::function<bool(std::size_t, std::vector<Domain>&)> search =
      [&](std::size_t depth, std::vector<Domain>& doms) -> bool {
    if (depth == p) return true;
    const std::size_t u = order[depth];
    for (std::size_t v = 0; v < n; ++v) {
      if (!doms[u][v]) continue;
      std::vector<Domain> next = doms;
      bool dead = false;
      for (std::size_t w : x.out(u)) {
        if (image[w] != SIZE_MAX || w == u) continue;
        for (std::size_t b = 0; b < n; ++b)
          if (next[w][b] && !a.has_edge(v, b)) next[w][b] = 0;
      }
      for (std::size_t w : x.in(u)) {
        if (image[w] != SIZE_MAX || w == u) continue;
        for (std::size_t b = 0; b < n; ++b)
          if (next[w][b] && !a.has_edge(b, v)) next[w][b] = 0;
      }
      for (std::size_t d = depth + 1; d < p && !dead; ++d)
        dead = std::none_of(next[order[d]].begin(), next[order[d]].end(), [](char c) { return c; });
      if (dead) continue;
      image[u] = v;
      if (search(depth + 1, next)) return true;
      image[u] = SIZE_MAX;
    }
    return false;
  };
  if (!search(0, domains)) return std::nullopt;
  return VertexMap(n, std::move(image));
}

Digraph parse_edge_list(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::size_t> vertices;
  std::vector<Edge> edges;
  auto parse_count = [&](const std::string& token) -> std::size_t {
    if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError(lineno, "expected a nonnegative integer, got '" + token + "'");
    try {
      return std::stoul(token);
    } catch (const std::exception&) {
      throw ParseError(lineno, "integer out of range: '" + token + "'");
    }
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream tokens(line);
    std::vector<std::string> fields;
    for (std::string tok; tokens >> tok;) fields.push_back(tok);
    if (!vertices) {
      if (fields.size() != 1) throw ParseError(lineno, "first line must hold the vertex count");
      vertices = parse_count(fields[0]);
      continue;
    }
    if (fields.size() != 2) throw ParseError(lineno, "expected 'u v'");
    std::size_t u = parse_count(fields[0]), v = parse_count(fields[1]);
    if (u >= *vertices || v >= *vertices)
      throw ParseError(lineno, "vertex index out of range (p = " + std::to_string(*vertices) + ")");
    edges.emplace_back(u, v);
  }
  if (!vertices) throw ParseError(lineno, "missing vertex count");
  return Digraph(*vertices, std::move(edges));
}

Digraph read_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open graph file '" + path + "'");
  return parse_edge_list(in);
}

std::string format_edge_list(const Digraph& g) {
  std::ostringstream out;
  out << g.size() << '\n';
  for (auto [x, y] : g.edges()) out << x << ' ' << y << '\n';
  return out.str();
}

namespace {

std::vector<std::size_t> spec_numbers(const std::string& spec, std::size_t expected) {
  std::vector<std::size_t> out;
  std::size_t pos = spec.find(':');
  while (pos != std::string::npos) {
    std::size_t next = spec.find(':', pos + 1);
    std::string field = spec.substr(pos + 1, next == std::string::npos ? std::string::npos : next - pos - 1);
    if (field.empty() || field.find_first_not_of("0123456789") != std::string::npos)
      throw PreconditionError("malformed generator spec '" + spec + "'");
    out.push_back(std::stoul(field));
    pos = next;
  }
  if (out.size() != expected) throw PreconditionError("malformed generator spec '" + spec + "'");
  return out;
}

}  // namespace

Digraph graph_from_spec(const std::string& spec) {
  auto starts = [&](const char* prefix) { return spec.rfind(prefix, 0) == 0; };
  if (starts("clique:")) return make_clique(spec_numbers(spec, 1)[0]);
  if (starts("cycle:")) return make_cycle(spec_numbers(spec, 1)[0]);
  if (starts("kneser:")) {
    auto v = spec_numbers(spec, 2);
    return make_kneser(v[0], v[1]);
  }
  if (starts("johnson:")) {
    auto v = spec_numbers(spec, 3);
    return make_generalized_johnson(v[0], v[1], v[2]);
  }
  return read_edge_list(spec);
}

}  // namespace sda
