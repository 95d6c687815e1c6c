#pragma once

#include <cstdint>

#include "irreg/graph.hpp"

namespace irreg {

constexpr int kDefaultRegularRestarts = 1000;

/// Simple d-regular graph on n vertices from the pairing model. Points are
/// paired one at a time, rejecting pairs that would create a loop or a
/// repeated edge; a pairing that gets stuck is restarted. Deterministic in
/// `seed`. Throws PreconditionError if n*d is odd or d >= n, and
/// BudgetExhausted after `max_restarts` stuck pairings.
Graph random_regular(int n, int d, std::uint64_t seed, int max_restarts = kDefaultRegularRestarts);

/// G(n, p) followed by random top-up edges at every vertex of degree below
/// `min_degree`. Result has minimum degree >= min_degree.
Graph random_min_degree(int n, int min_degree, double p, std::uint64_t seed);

/// n / length vertex-disjoint cycles of the given length.
Graph cycle_union(int n, int length);

Graph empty_graph(int n);
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph star_graph(int leaves);
Graph complete_bipartite(int a, int b);

}  // namespace irreg
