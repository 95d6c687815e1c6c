#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "irreg/graph.hpp"

namespace irreg {

/// Proper coloring with every class of size floor(n/c) or ceil(n/c).
struct EquitableColoring {
  int class_count = 0;
  std::vector<int> color;        // per vertex, in [0, class_count)
  std::vector<int> class_sizes;  // per color

  std::vector<std::vector<Vertex>> classes() const;
};

/// G^(2): u ~ v iff their distance in g is 1 or 2.
Graph square_graph(const Graph& g);

/// Graph on the vertex list `restrict_to` (all of g when absent) in which two
/// vertices are adjacent iff they are adjacent in g or share a neighbor in g.
/// Vertex i of the result stands for restrict_to[i].
Graph conflict_graph(const Graph& g, std::optional<std::span<const Vertex>> restrict_to = std::nullopt);

struct ColoringOptions {
  std::uint64_t seed = 0;
  /// Vertex moves allowed across all attempts; <= 0 means n*n*c.
  std::int64_t move_budget = 0;
  int restarts = 32;
};

/// Greedy coloring (each vertex takes the smallest free class), then
/// rebalancing along augmenting paths of the class accessibility digraph:
/// class i -> class j when some vertex of i has no neighbor in j. A stalled
/// rebalance restarts from a reshuffled greedy order.
/// Throws PreconditionError when c < 1, BudgetExhausted when every attempt
/// stalls (reported with the best imbalance reached).
EquitableColoring equitable_color(const Graph& f, int c, const ColoringOptions& options = {});

bool is_proper(const Graph& f, const EquitableColoring& coloring);
bool is_equitable(const EquitableColoring& coloring);

}  // namespace irreg
