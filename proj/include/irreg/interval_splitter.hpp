#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "irreg/graph.hpp"

namespace irreg {

/// Per-vertex pair (a, b); vertex v may end with degree in
/// {a, a+1, b, b+1}.
struct DegreeSpec {
  std::vector<int> a;
  std::vector<int> b;

  bool allows(Vertex v, int degree) const {
    return degree == a[v] || degree == a[v] + 1 || degree == b[v] || degree == b[v] + 1;
  }
  /// Distance from `degree` to the nearest allowed value.
  int distance(Vertex v, int degree) const;
};

struct SpecViolation {
  Vertex vertex;
  std::string rule;
};

/// Checks a <= floor(deg/2) <= b < deg, b <= (deg+a)/2 + 1 and b <= 2a+3.
std::vector<SpecViolation> validate_spec(const Graph& g, const DegreeSpec& spec);

struct DegreeSetOptions {
  std::uint64_t seed = 0;
  /// Search-state expansions across all phases; <= 0 picks a size-based default.
  std::int64_t budget = 0;
  /// Graphs with at most this many edges fall back to backtracking.
  int exhaustive_edge_limit = 40;
};

struct DegreeSetStats {
  int restarts = 0;
  std::int64_t expansions = 0;
  int repair_moves = 0;
  bool used_backtracking = false;
};

/// Finds H with deg_H(v) in {a(v), a(v)+1, b(v), b(v)+1} for all v.
/// Starts from an Euler-tour halving (every degree within one of deg/2) and
/// repairs vertices stuck in the gap (a+1, b) by toggling alternating trails
/// that strictly reduce the total distance to the allowed sets; stalls are
/// broken by sideways moves and reshuffled restarts, and small graphs fall
/// back to backtracking. Throws PreconditionError if the spec is invalid and
/// BudgetExhausted if no solution is found within the budget.
SpanningSubgraph solve_degree_set(const Graph& g, const DegreeSpec& spec, const DegreeSetOptions& options = {},
                                  DegreeSetStats* stats = nullptr);

struct SplitResult {
  SpanningSubgraph h;
  DegreeSpec spec;
  std::vector<int> group;  // part (regular) or block (general) of each vertex, 1-based
  int group_size = 0;      // k
  bool trivial = false;    // d <= 8 or delta <= 16: H = G
  int bound = 0;           // 2 ceil(n/k) or 4 ceil(n/k)
  int max_overlap = 0;     // most allowed sets within one family that share an integer
  DegreeSetStats stats;
};

/// Regular graphs: k = ceil(d/4) parts of consecutive vertex indices, each of
/// size at most ceil(n/k); part i gets a = ceil(d/2) - i, b = ceil(d/2) + k - i.
SplitResult regular_split(const Graph& g, const DegreeSetOptions& options = {});

/// Minimum degree delta > 16: vertices sorted by nonincreasing degree (ties by
/// index) are cut into blocks of k = ceil(delta/4); the j-th vertex of a block
/// with degree f gets a = ceil(f/2) - j, b = ceil(f/2) + k - j.
SplitResult general_split(const Graph& g, const DegreeSetOptions& options = {});

/// The part or block plan alone; h is left as G.
SplitResult plan_regular_split(const Graph& g);
SplitResult plan_general_split(const Graph& g);

/// Largest number of vertices in `members` whose allowed sets share one integer.
int max_overlap(const DegreeSpec& spec, std::span<const Vertex> members);

}  // namespace irreg
