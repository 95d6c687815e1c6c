#include "irreg/catalog.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "irreg/error.hpp"

namespace irreg {

namespace {

using Partition = std::vector<std::vector<Vertex>>;

class Canonizer {
 public:
  explicit Canonizer(const Graph& g) : g_(g), n_(g.vertex_count()), adj_(n_ * n_, 0) {
    for (const Edge& e : g.edges()) {
      adj_[e.u * n_ + e.v] = 1;
      adj_[e.v * n_ + e.u] = 1;
    }
  }

  void run() {
    Partition p = {{}};
    for (Vertex v = 0; v < n_; ++v) p[0].push_back(v);
    if (n_ == 0) p.clear();
    search(refine(std::move(p)));
  }

  std::string best;
  std::vector<Vertex> best_order;

 private:
  bool adjacent(Vertex a, Vertex b) const { return adj_[a * n_ + b] != 0; }

  Partition refine(Partition p) const {
    std::vector<int> cell_of(n_);
    while (true) {
      for (std::size_t c = 0; c < p.size(); ++c) {
        for (Vertex v : p[c]) cell_of[v] = static_cast<int>(c);
      }
      Partition next;
      for (const auto& cell : p) {
        if (cell.size() == 1) {
          next.push_back(cell);
          continue;
        }
        std::map<std::vector<int>, std::vector<Vertex>> groups;
        for (Vertex v : cell) {
          std::vector<int> counts(p.size(), 0);
          for (const auto& inc : g_.incident(v)) ++counts[cell_of[inc.neighbor]];
          groups[counts].push_back(v);
        }
        for (auto& [key, members] : groups) next.push_back(std::move(members));
      }
      if (next.size() == p.size()) return next;
      p = std::move(next);
    }
  }

  bool twins(Vertex a, Vertex b) const {
    for (Vertex w = 0; w < n_; ++w) {
      if (w != a && w != b && adjacent(a, w) != adjacent(b, w)) return false;
    }
    return true;
  }

  void search(const Partition& p) {
    std::size_t target = p.size();
    for (std::size_t c = 0; c < p.size(); ++c) {
      if (p[c].size() > 1) {
        target = c;
        break;
      }
    }
    if (target == p.size()) {
      std::string cert = std::to_string(n_) + ":";
      for (int i = 0; i < n_; ++i) {
        for (int j = i + 1; j < n_; ++j) cert.push_back(adjacent(p[i][0], p[j][0]) ? '1' : '0');
      }
      if (best.empty() || cert < best) {
        best = std::move(cert);
        best_order.clear();
        for (const auto& cell : p) best_order.push_back(cell[0]);
      }
      return;
    }
    const auto& cell = p[target];
    bool all_twins = true;
    for (std::size_t i = 1; i < cell.size() && all_twins; ++i) all_twins = twins(cell[0], cell[i]);
    for (std::size_t i = 0; i < cell.size(); ++i) {
      Partition q;
      for (std::size_t c = 0; c < p.size(); ++c) {
        if (c != target) {
          q.push_back(p[c]);
          continue;
        }
        q.push_back({cell[i]});
        std::vector<Vertex> rest;
        for (Vertex v : cell) {
          if (v != cell[i]) rest.push_back(v);
        }
        q.push_back(std::move(rest));
      }
      search(refine(std::move(q)));
      if (all_twins) break;
    }
  }

  const Graph& g_;
  int n_;
  std::vector<char> adj_;
};

Graph from_certificate(const std::string& cert) {
  const auto colon = cert.find(':');
  const int n = std::stoi(cert.substr(0, colon));
  std::vector<Edge> edges;
  std::size_t pos = colon + 1;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (cert[pos++] == '1') edges.push_back({i, j});
    }
  }
  return Graph(n, std::move(edges));
}

}  // namespace

std::string canonical_form(const Graph& g) {
  Canonizer c(g);
  c.run();
  return c.best.empty() ? "0:" : c.best;
}

Graph canonical_graph(const Graph& g) { return from_certificate(canonical_form(g)); }

std::vector<Graph> connected_graphs_by_edges(int m) {
  if (m < 1) throw PreconditionError("connected_graphs_by_edges: m must be positive");
  std::set<std::string> level = {canonical_form(Graph(2, {{0, 1}}))};
  for (int size = 1; size < m; ++size) {
    std::set<std::string> next;
    for (const auto& cert : level) {
      const Graph g = from_certificate(cert);
      const int n = g.vertex_count();
      std::vector<Edge> base(g.edges().begin(), g.edges().end());
      for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
          if (g.has_edge(u, v)) continue;
          auto edges = base;
          edges.push_back({u, v});
          next.insert(canonical_form(Graph(n, std::move(edges))));
        }
        auto edges = base;
        edges.push_back({u, n});
        next.insert(canonical_form(Graph(n + 1, std::move(edges))));
      }
    }
    level = std::move(next);
  }
  std::vector<Graph> out;
  for (const auto& cert : level) out.push_back(from_certificate(cert));
  return out;
}

std::vector<Graph> connected_graphs_by_order(int n) {
  if (n < 1 || n > 7) throw PreconditionError("connected_graphs_by_order: n must be in [1, 7]");
  std::vector<Edge> pairs;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) pairs.push_back({u, v});
  }
  std::set<std::string> seen;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (mask >> i & 1) edges.push_back(pairs[i]);
    }
    if (static_cast<int>(edges.size()) < n - 1) continue;
    Graph g(n, std::move(edges));
    if (!g.is_connected()) continue;
    seen.insert(canonical_form(g));
  }
  std::vector<Graph> out;
  for (const auto& cert : seen) out.push_back(from_certificate(cert));
  return out;
}

}  // namespace irreg
