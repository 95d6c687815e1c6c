#pragma once

#include <string>
#include <vector>

#include "irreg/graph.hpp"

namespace irreg {

/// Edge weights in [1, s] with pairwise distinct weighted degrees.
struct IrregularWeighting {
  int s = 0;
  std::vector<int> w;
};

std::vector<long long> weighted_degrees(const Graph& g, const std::vector<int>& w);
bool is_irregular(const Graph& g, const IrregularWeighting& weighting);

/// Throws PreconditionError on an isolated edge or more than one isolated vertex.
void check_strength_structure(const Graph& g);

constexpr int kDefaultStrengthCap = 6;
constexpr int kMaxStrengthEdges = 16;

/// Smallest s with a witness, by trying s upward from a counting lower bound
/// and backtracking over weights; a vertex's sum is checked against the
/// finished ones as soon as its last edge is weighted. Throws CapExceeded when
/// s would pass `cap` or the graph has more than kMaxStrengthEdges edges.
IrregularWeighting irregularity_strength(const Graph& g, int cap = kDefaultStrengthCap);

enum class StrengthCase { general, bipartite, regular, bipartite_regular };

std::string to_string(StrengthCase c);

struct StrengthResult {
  SpanningSubgraph h;
  StrengthCase which = StrengthCase::general;
  int s_used = 0;      // s, or s - 1 after the regular shift
  int bound = 0;       // 2s, 2s-1, 2s-2 or 2s-3
  int achieved = 0;    // m(H)
  bool windows_ok = false;  // every degree inside its weighted-degree window
};

/// General graphs round z = w/s; bipartite graphs solve the integral window
/// system floor(sum/s) <= deg_H <= ceil(sum/s) by flow. Regular graphs first
/// shift w to w-1 and s to s-1. Throws InternalError if the bipartite system
/// has no integral solution.
StrengthResult strength_to_subgraph(const Graph& g, const IrregularWeighting& weighting);

std::string strength_csv_row(const std::string& graph_id, const IrregularWeighting& weighting,
                             const StrengthResult& result);

}  // namespace irreg
