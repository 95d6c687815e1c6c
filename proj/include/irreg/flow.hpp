#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace irreg {

/// Dinic max flow on an integer-capacity digraph.
class MaxFlow {
 public:
  explicit MaxFlow(int node_count);

  /// Returns an arc id usable with flow().
  int add_arc(int from, int to, std::int64_t capacity);
  std::int64_t run(int source, int sink);
  std::int64_t flow(int arc) const;

 private:
  struct Arc {
    int to;
    std::int64_t cap;
  };
  bool bfs(int s, int t);
  std::int64_t dfs(int v, int t, std::int64_t pushed);

  std::vector<Arc> arcs_;
  std::vector<std::int64_t> original_;
  std::vector<std::vector<int>> out_;
  std::vector<int> level_;
  std::vector<std::size_t> it_;
};

struct BoundedArc {
  int from;
  int to;
  std::int64_t low;
  std::int64_t high;
};

/// Integral circulation with low <= f <= high on every arc, or nullopt.
std::optional<std::vector<std::int64_t>> feasible_circulation(int node_count, const std::vector<BoundedArc>& arcs);

}  // namespace irreg
