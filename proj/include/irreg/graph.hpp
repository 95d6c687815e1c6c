#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

namespace irreg {

using Vertex = std::int32_t;
using EdgeId = std::int32_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Vertex other(Vertex w) const { return w == u ? v : u; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Incidence {
  Vertex neighbor;
  EdgeId edge;
};

/// Immutable simple undirected graph. Edge ids are the positions in the
/// edge list handed to the constructor, and every bit-vector in the library
/// is indexed by them.
class Graph {
 public:
  Graph() = default;

  /// Throws PreconditionError on loops, duplicate pairs or out-of-range ends.
  Graph(int vertex_count, std::vector<Edge> edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const { return edges_; }

  std::span<const Incidence> incident(Vertex v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  int degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  int min_degree() const;
  int max_degree() const;
  bool is_regular() const;
  bool is_bipartite() const;
  bool is_connected() const;

  std::optional<EdgeId> find_edge(Vertex u, Vertex v) const;
  bool has_edge(Vertex u, Vertex v) const { return find_edge(u, v).has_value(); }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  static std::uint64_t key(Vertex u, Vertex v);

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> offsets_ = {0};
  std::vector<Incidence> adjacency_;
  std::unordered_set<std::uint64_t> pairs_;
};

/// A set of edges of a parent graph, with per-vertex degrees kept in sync on
/// every toggle. The parent must outlive the subgraph.
class SpanningSubgraph {
 public:
  explicit SpanningSubgraph(const Graph& parent);

  static SpanningSubgraph full(const Graph& parent);
  static SpanningSubgraph from_edges(const Graph& parent, std::span<const EdgeId> ids);

  const Graph& parent() const { return *parent_; }

  bool contains(EdgeId e) const { return selected_[e] != 0; }
  void set(EdgeId e, bool on);
  void toggle(EdgeId e) { set(e, !contains(e)); }

  int degree(Vertex v) const { return degrees_[v]; }
  std::span<const int> degrees() const { return degrees_; }
  int edge_count() const { return selected_count_; }
  std::vector<EdgeId> edge_ids() const;

  /// Recomputes degrees from the selection and compares with the cache.
  bool consistent() const;

  friend bool operator==(const SpanningSubgraph& a, const SpanningSubgraph& b) {
    return a.selected_ == b.selected_;
  }

 private:
  const Graph* parent_;
  std::vector<std::uint8_t> selected_;
  std::vector<int> degrees_;
  int selected_count_ = 0;
};

/// m(H,k) for every k and m(H) = max_k m(H,k).
struct DegreeProfile {
  std::vector<int> counts;
  int max_multiplicity = 0;

  int count(int k) const {
    return k >= 0 && k < static_cast<int>(counts.size()) ? counts[k] : 0;
  }
  int distinct_degrees() const;
};

DegreeProfile degree_profile(std::span<const int> degrees);
DegreeProfile degree_profile(const SpanningSubgraph& h);

/// "k,count" rows for nonzero counts followed by "# m(H)=<value>".
std::string profile_csv(const DegreeProfile& profile);

Graph disjoint_union(const Graph& a, const Graph& b);

/// Same graph with vertex v renamed to perm[v]; edge order preserved.
Graph relabel(const Graph& g, std::span<const Vertex> perm);

/// Same graph with edges (u<v) sorted lexicographically.
Graph canonical_edge_order(const Graph& g);

}  // namespace irreg
