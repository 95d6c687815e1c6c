#include "irreg/generators.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <unordered_set>

#include "irreg/error.hpp"

namespace irreg {
namespace {

std::uint64_t pair_key(Vertex a, Vertex b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

Graph sorted_graph(int n, std::vector<Edge> edges) {
  for (Edge& e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& x, const Edge& y) { return x.u != y.u ? x.u < y.u : x.v < y.v; });
  return Graph(n, std::move(edges));
}

// One attempt at a sequential simple pairing; empty result means stuck.
std::optional<std::vector<Edge>> try_pairing(int n, int d, std::mt19937_64& rng) {
  std::vector<int> points(static_cast<std::size_t>(n) * d);
  for (std::size_t i = 0; i < points.size(); ++i) points[i] = static_cast<int>(i);
  std::unordered_set<std::uint64_t> used;
  used.reserve(points.size());
  std::vector<Edge> edges;
  edges.reserve(points.size() / 2);

  auto take = [&](std::size_t i, std::size_t j) {
    const Vertex a = points[i] / d;
    const Vertex b = points[j] / d;
    used.insert(pair_key(a, b));
    edges.push_back({a, b});
    if (i < j) std::swap(i, j);
    points[i] = points.back();
    points.pop_back();
    points[j] = points.back();
    points.pop_back();
  };
  auto suitable = [&](std::size_t i, std::size_t j) {
    const Vertex a = points[i] / d;
    const Vertex b = points[j] / d;
    return a != b && !used.count(pair_key(a, b));
  };

  int misses = 0;
  while (!points.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1);
    const std::size_t i = pick(rng);
    const std::size_t j = pick(rng);
    if (i != j && suitable(i, j)) {
      take(i, j);
      misses = 0;
      continue;
    }
    if (++misses < 64) continue;
    // Many misses in a row: enumerate what is left.
    std::vector<std::pair<std::size_t, std::size_t>> options;
    for (std::size_t x = 0; x < points.size(); ++x) {
      for (std::size_t y = x + 1; y < points.size(); ++y) {
        if (suitable(x, y)) options.emplace_back(x, y);
      }
    }
    if (options.empty()) return std::nullopt;
    std::uniform_int_distribution<std::size_t> opt(0, options.size() - 1);
    const auto [x, y] = options[opt(rng)];
    take(x, y);
    misses = 0;
  }
  return edges;
}

}  // namespace

Graph random_regular(int n, int d, std::uint64_t seed, int max_restarts) {
  if (n < 0 || d < 0) throw PreconditionError("n and d must be nonnegative");
  if ((static_cast<long long>(n) * d) % 2 != 0) throw PreconditionError("n*d must be even");
  if (d >= n && !(n == 0 && d == 0)) throw PreconditionError("d must be smaller than n");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt <= max_restarts; ++attempt) {
    if (auto edges = try_pairing(n, d, rng)) return sorted_graph(n, std::move(*edges));
  }
  throw BudgetExhausted("random_regular(" + std::to_string(n) + ", " + std::to_string(d) +
                        "): pairing stuck after " + std::to_string(max_restarts) + " restarts");
}

Graph random_min_degree(int n, int min_degree, double p, std::uint64_t seed) {
  if (min_degree >= n) throw PreconditionError("minimum degree must be smaller than n");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> used;
  std::vector<int> deg(n, 0);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (coin(rng)) {
        edges.push_back({u, v});
        used.insert(pair_key(u, v));
        ++deg[u];
        ++deg[v];
      }
    }
  }
  std::uniform_int_distribution<Vertex> any(0, n - 1);
  for (Vertex v = 0; v < n; ++v) {
    while (deg[v] < min_degree) {
      const Vertex w = any(rng);
      if (w == v || used.count(pair_key(v, w))) continue;
      edges.push_back({v, w});
      used.insert(pair_key(v, w));
      ++deg[v];
      ++deg[w];
    }
  }
  return sorted_graph(n, std::move(edges));
}

Graph cycle_union(int n, int length) {
  if (length < 3) throw PreconditionError("cycle length must be at least 3");
  if (n % length != 0) throw PreconditionError("n must be a multiple of the cycle length");
  Graph out = empty_graph(0);
  for (int c = 0; c < n / length; ++c) out = disjoint_union(out, cycle_graph(length));
  return sorted_graph(n, std::vector<Edge>(out.edges().begin(), out.edges().end()));
}

Graph empty_graph(int n) { return Graph(n, {}); }

Graph path_graph(int n) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
  return Graph(n, std::move(edges));
}

Graph cycle_graph(int n) {
  if (n < 3) throw PreconditionError("a cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
  edges.push_back({0, n - 1});
  return sorted_graph(n, std::move(edges));
}

Graph complete_graph(int n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
  }
  return Graph(n, std::move(edges));
}

Graph star_graph(int leaves) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v <= leaves; ++v) edges.push_back({0, v});
  return Graph(leaves + 1, std::move(edges));
}

Graph complete_bipartite(int a, int b) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < a; ++u) {
    for (Vertex v = 0; v < b; ++v) edges.push_back({u, a + v});
  }
  return Graph(a + b, std::move(edges));
}

}  // namespace irreg
