#include "irreg/graph.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#include "irreg/error.hpp"

namespace irreg {

std::uint64_t Graph::key(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
         static_cast<std::uint32_t>(v);
}

Graph::Graph(int vertex_count, std::vector<Edge> edges) : n_(vertex_count), edges_(std::move(edges)) {
  if (n_ < 0) throw PreconditionError("negative vertex count");
  pairs_.reserve(edges_.size() * 2);
  std::vector<int> deg(n_, 0);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    Edge& e = edges_[i];
    if (e.u < 0 || e.v < 0 || e.u >= n_ || e.v >= n_) {
      throw PreconditionError("edge " + std::to_string(i) + " has an endpoint out of range");
    }
    if (e.u == e.v) throw PreconditionError("edge " + std::to_string(i) + " is a loop");
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!pairs_.insert(key(e.u, e.v)).second) {
      throw PreconditionError("edge " + std::to_string(i) + " duplicates an earlier edge");
    }
    ++deg[e.u];
    ++deg[e.v];
  }
  offsets_.assign(n_ + 1, 0);
  for (int v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
  adjacency_.resize(offsets_[n_]);
  std::vector<int> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    adjacency_[fill[e.u]++] = {e.v, static_cast<EdgeId>(i)};
    adjacency_[fill[e.v]++] = {e.u, static_cast<EdgeId>(i)};
  }
}

int Graph::min_degree() const {
  int best = 0;
  for (int v = 0; v < n_; ++v) best = v == 0 ? degree(v) : std::min(best, degree(v));
  return best;
}

int Graph::max_degree() const {
  int best = 0;
  for (int v = 0; v < n_; ++v) best = std::max(best, degree(v));
  return best;
}

bool Graph::is_regular() const { return min_degree() == max_degree(); }

bool Graph::is_bipartite() const {
  std::vector<int> side(n_, -1);
  std::queue<Vertex> q;
  for (Vertex s = 0; s < n_; ++s) {
    if (side[s] != -1) continue;
    side[s] = 0;
    q.push(s);
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop();
      for (const auto& inc : incident(v)) {
        if (side[inc.neighbor] == -1) {
          side[inc.neighbor] = 1 - side[v];
          q.push(inc.neighbor);
        } else if (side[inc.neighbor] == side[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

bool Graph::is_connected() const {
  if (n_ == 0) return true;
  std::vector<char> seen(n_, 0);
  std::vector<Vertex> stack = {0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (const auto& inc : incident(v)) {
      if (!seen[inc.neighbor]) {
        seen[inc.neighbor] = 1;
        ++reached;
        stack.push_back(inc.neighbor);
      }
    }
  }
  return reached == n_;
}

std::optional<EdgeId> Graph::find_edge(Vertex u, Vertex v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) return std::nullopt;
  if (!pairs_.count(key(u, v))) return std::nullopt;
  if (degree(u) > degree(v)) std::swap(u, v);
  for (const auto& inc : incident(u)) {
    if (inc.neighbor == v) return inc.edge;
  }
  return std::nullopt;
}

SpanningSubgraph::SpanningSubgraph(const Graph& parent)
    : parent_(&parent), selected_(parent.edge_count(), 0), degrees_(parent.vertex_count(), 0) {}

SpanningSubgraph SpanningSubgraph::full(const Graph& parent) {
  SpanningSubgraph h(parent);
  for (EdgeId e = 0; e < parent.edge_count(); ++e) h.set(e, true);
  return h;
}

SpanningSubgraph SpanningSubgraph::from_edges(const Graph& parent, std::span<const EdgeId> ids) {
  SpanningSubgraph h(parent);
  for (EdgeId e : ids) {
    if (e < 0 || e >= parent.edge_count()) {
      throw PreconditionError("edge index " + std::to_string(e) + " out of range");
    }
    h.set(e, true);
  }
  return h;
}

void SpanningSubgraph::set(EdgeId e, bool on) {
  if (contains(e) == on) return;
  selected_[e] = on ? 1 : 0;
  const int delta = on ? 1 : -1;
  const Edge& ed = parent_->edge(e);
  degrees_[ed.u] += delta;
  degrees_[ed.v] += delta;
  selected_count_ += delta;
}

std::vector<EdgeId> SpanningSubgraph::edge_ids() const {
  std::vector<EdgeId> out;
  out.reserve(selected_count_);
  for (EdgeId e = 0; e < static_cast<EdgeId>(selected_.size()); ++e) {
    if (selected_[e]) out.push_back(e);
  }
  return out;
}

bool SpanningSubgraph::consistent() const {
  std::vector<int> deg(degrees_.size(), 0);
  int count = 0;
  for (EdgeId e = 0; e < static_cast<EdgeId>(selected_.size()); ++e) {
    if (!selected_[e]) continue;
    ++deg[parent_->edge(e).u];
    ++deg[parent_->edge(e).v];
    ++count;
  }
  return deg == degrees_ && count == selected_count_;
}

int DegreeProfile::distinct_degrees() const {
  return static_cast<int>(std::count_if(counts.begin(), counts.end(), [](int c) { return c > 0; }));
}

DegreeProfile degree_profile(std::span<const int> degrees) {
  DegreeProfile p;
  int top = 0;
  for (int d : degrees) top = std::max(top, d);
  p.counts.assign(degrees.empty() ? 0 : top + 1, 0);
  for (int d : degrees) ++p.counts[d];
  for (int c : p.counts) p.max_multiplicity = std::max(p.max_multiplicity, c);
  return p;
}

DegreeProfile degree_profile(const SpanningSubgraph& h) { return degree_profile(h.degrees()); }

std::string profile_csv(const DegreeProfile& profile) {
  std::ostringstream out;
  out << "k,count\n";
  for (std::size_t k = 0; k < profile.counts.size(); ++k) {
    if (profile.counts[k] > 0) out << k << ',' << profile.counts[k] << '\n';
  }
  out << "# m(H)=" << profile.max_multiplicity << '\n';
  return out.str();
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Edge> edges(a.edges().begin(), a.edges().end());
  const Vertex shift = a.vertex_count();
  for (const Edge& e : b.edges()) edges.push_back({e.u + shift, e.v + shift});
  return Graph(a.vertex_count() + b.vertex_count(), std::move(edges));
}

Graph relabel(const Graph& g, std::span<const Vertex> perm) {
  if (static_cast<int>(perm.size()) != g.vertex_count()) {
    throw PreconditionError("permutation size does not match vertex count");
  }
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (const Edge& e : g.edges()) edges.push_back({perm[e.u], perm[e.v]});
  return Graph(g.vertex_count(), std::move(edges));
}

Graph canonical_edge_order(const Graph& g) {
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  std::sort(edges.begin(), edges.end(),
            [](const Edge& x, const Edge& y) { return x.u != y.u ? x.u < y.u : x.v < y.v; });
  return Graph(g.vertex_count(), std::move(edges));
}

}  // namespace irreg
