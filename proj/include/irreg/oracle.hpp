#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "irreg/fractional_rounder.hpp"
#include "irreg/graph.hpp"

namespace irreg {

constexpr int kOracleEdgeCap = 24;

struct OracleOptions {
  int threads = 1;
};

struct MinMResult {
  int min_m = 0;
  std::vector<EdgeId> witness;
  std::uint64_t subsets = 0;
};

/// Exact minimum of m(H) over all 2^|E| spanning subgraphs, in Gray-code order
/// with incremental degree and multiplicity updates. The range is cut into 16
/// chunks by the high edge bits; results do not depend on the thread count.
/// Throws CapExceeded above kOracleEdgeCap edges.
MinMResult min_m_bruteforce(const Graph& g, const OracleOptions& options = {});

struct Conjecture11Result {
  bool feasible = false;       // some H has every |m(H,k) - n/(d+1)| <= 2
  Rational best_deviation;     // minimax over H of max_k |m(H,k) - n/(d+1)|, k = 0..d
  std::vector<EdgeId> witness;
};

/// Throws PreconditionError on non-regular input.
Conjecture11Result check_conjecture11(const Graph& g, const OracleOptions& options = {});

struct Conjecture12Result {
  bool holds = false;  // min m(H) <= n/(delta+1) + 2
  int min_m = 0;
  Rational bound;
  std::vector<EdgeId> witness;
};

Conjecture12Result check_conjecture12(const Graph& g, const OracleOptions& options = {});

/// Whether floor((d+1)/2) * n/(d+1) is odd, which rules out the flat profile
/// m(H,k) = n/(d+1) for all k. Requires (d+1) | n.
bool parity_lower_bound(long long n, int d);

std::string oracle_csv_row(const std::string& graph_id, const Conjecture12Result& r);

}  // namespace irreg
