#pragma once

#include <string>
#include <vector>

#include "irreg/graph.hpp"

namespace irreg {

/// Isomorphism certificate: equal for two graphs iff they are isomorphic.
/// Color refinement plus individualization; the smallest adjacency string
/// over all leaves of the search, with interchangeable twins tried once.
std::string canonical_form(const Graph& g);

/// The graph relabelled into the order that realizes canonical_form.
Graph canonical_graph(const Graph& g);

/// Connected graphs with exactly m edges (no isolated vertices), one per
/// isomorphism class, sorted by certificate.
std::vector<Graph> connected_graphs_by_edges(int m);

/// Connected graphs on exactly n vertices, one per isomorphism class.
std::vector<Graph> connected_graphs_by_order(int n);

}  // namespace irreg
