#include "irreg/strength_bridge.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "irreg/error.hpp"
#include "irreg/flow.hpp"
#include "irreg/fractional_rounder.hpp"

namespace irreg {

std::vector<long long> weighted_degrees(const Graph& g, const std::vector<int>& w) {
  std::vector<long long> sums(g.vertex_count(), 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    sums[g.edge(e).u] += w[e];
    sums[g.edge(e).v] += w[e];
  }
  return sums;
}

bool is_irregular(const Graph& g, const IrregularWeighting& weighting) {
  if (static_cast<int>(weighting.w.size()) != g.edge_count()) return false;
  for (int x : weighting.w) {
    if (x < 1 || x > weighting.s) return false;
  }
  auto sums = weighted_degrees(g, weighting.w);
  std::sort(sums.begin(), sums.end());
  return std::adjacent_find(sums.begin(), sums.end()) == sums.end();
}

void check_strength_structure(const Graph& g) {
  int isolated = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) == 0) ++isolated;
  }
  if (isolated > 1) throw PreconditionError("more than one isolated vertex");
  for (const Edge& e : g.edges()) {
    if (g.degree(e.u) == 1 && g.degree(e.v) == 1) throw PreconditionError("graph has an isolated edge");
  }
}

namespace {

// Vertices with degree in [i, j] need distinct sums in [i, j*s].
int strength_lower_bound(const Graph& g) {
  const int maxd = g.max_degree();
  std::vector<int> count(maxd + 1, 0);
  for (Vertex v = 0; v < g.vertex_count(); ++v) ++count[g.degree(v)];
  int best = 1;
  for (int i = 0; i <= maxd; ++i) {
    int c = 0;
    for (int j = i; j <= maxd; ++j) {
      c += count[j];
      if (j > 0) best = std::max(best, (c + i - 1 + j - 1) / j);
    }
  }
  return best;
}

class StrengthSearch {
 public:
  StrengthSearch(const Graph& g) : g_(g) {
    // BFS vertex order so that vertices finish early.
    const int n = g.vertex_count();
    std::vector<int> pos(n, -1);
    int next = 0;
    for (Vertex s = 0; s < n; ++s) {
      if (pos[s] >= 0) continue;
      std::deque<Vertex> queue = {s};
      pos[s] = next++;
      while (!queue.empty()) {
        const Vertex v = queue.front();
        queue.pop_front();
        for (const auto& inc : g.incident(v)) {
          if (pos[inc.neighbor] < 0) {
            pos[inc.neighbor] = next++;
            queue.push_back(inc.neighbor);
          }
        }
      }
    }
    order_.resize(g.edge_count());
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](EdgeId a, EdgeId b) {
      const auto key = [&](EdgeId e) {
        const int p = pos[g.edge(e).u];
        const int q = pos[g.edge(e).v];
        return std::pair(std::max(p, q), std::min(p, q));
      };
      return key(a) < key(b);
    });
    last_.assign(n, -1);
    for (int i = 0; i < static_cast<int>(order_.size()); ++i) {
      last_[g.edge(order_[i]).u] = i;
      last_[g.edge(order_[i]).v] = i;
    }
  }

  bool solve(int s, std::vector<int>& w) {
    s_ = s;
    w.assign(g_.edge_count(), 0);
    sums_.assign(g_.vertex_count(), 0);
    used_.clear();
    // Isolated vertex has sum 0, which no other vertex can reach.
    return place(0, w);
  }

 private:
  bool place(int i, std::vector<int>& w) {
    if (i == static_cast<int>(order_.size())) return true;
    const EdgeId e = order_[i];
    const Vertex u = g_.edge(e).u;
    const Vertex v = g_.edge(e).v;
    for (int x = 1; x <= s_; ++x) {
      sums_[u] += x;
      sums_[v] += x;
      bool ok = true;
      std::vector<long long> added;
      for (Vertex t : {u, v}) {
        if (last_[t] != i) continue;
        if (used_.count(sums_[t])) {
          ok = false;
          break;
        }
        used_.insert(sums_[t]);
        added.push_back(sums_[t]);
      }
      if (ok) {
        w[e] = x;
        if (place(i + 1, w)) return true;
      }
      for (long long a : added) used_.erase(a);
      sums_[u] -= x;
      sums_[v] -= x;
    }
    return false;
  }

  const Graph& g_;
  std::vector<EdgeId> order_;
  std::vector<int> last_;
  std::vector<long long> sums_;
  std::set<long long> used_;
  int s_ = 0;
};

}  // namespace

IrregularWeighting irregularity_strength(const Graph& g, int cap) {
  check_strength_structure(g);
  if (g.edge_count() > kMaxStrengthEdges) {
    throw CapExceeded("irregularity_strength: " + std::to_string(g.edge_count()) + " edges exceeds the limit of " +
                      std::to_string(kMaxStrengthEdges));
  }
  StrengthSearch search(g);
  IrregularWeighting out;
  for (int s = strength_lower_bound(g); s <= cap; ++s) {
    if (search.solve(s, out.w)) {
      out.s = s;
      return out;
    }
  }
  throw CapExceeded("irregularity_strength: strength exceeds cap " + std::to_string(cap));
}

std::string to_string(StrengthCase c) {
  switch (c) {
    case StrengthCase::general: return "2s";
    case StrengthCase::bipartite: return "2s-1";
    case StrengthCase::regular: return "2s-2";
    case StrengthCase::bipartite_regular: return "2s-3";
  }
  return "?";
}

StrengthResult strength_to_subgraph(const Graph& g, const IrregularWeighting& weighting) {
  if (!is_irregular(g, weighting)) throw PreconditionError("strength_to_subgraph: weighting is not irregular");
  const bool regular = g.is_regular() && g.vertex_count() > 1;
  const bool bipartite = g.is_bipartite();
  std::vector<int> w = weighting.w;
  int s = weighting.s;
  if (regular) {
    for (int& x : w) --x;
    --s;
  }
  const auto sums = weighted_degrees(g, w);
  StrengthResult out{SpanningSubgraph(g), StrengthCase::general, s, 0, 0, true};
  if (s == 0) {
    // Only possible for a regular graph with one vertex class; nothing to split.
    out.h = SpanningSubgraph::full(g);
  } else if (bipartite) {
    std::vector<int> side(g.vertex_count(), -1);
    for (Vertex r = 0; r < g.vertex_count(); ++r) {
      if (side[r] >= 0) continue;
      side[r] = 0;
      std::deque<Vertex> queue = {r};
      while (!queue.empty()) {
        const Vertex v = queue.front();
        queue.pop_front();
        for (const auto& inc : g.incident(v)) {
          if (side[inc.neighbor] < 0) {
            side[inc.neighbor] = 1 - side[v];
            queue.push_back(inc.neighbor);
          }
        }
      }
    }
    const int n = g.vertex_count();
    const int src = n;
    const int dst = n + 1;
    std::vector<BoundedArc> arcs;
    for (const Edge& e : g.edges()) {
      const Vertex left = side[e.u] == 0 ? e.u : e.v;
      arcs.push_back({left, e.other(left), 0, 1});
    }
    for (Vertex v = 0; v < n; ++v) {
      const long long lo = sums[v] / s;
      const long long hi = (sums[v] + s - 1) / s;
      if (side[v] == 0) {
        arcs.push_back({src, v, lo, hi});
      } else {
        arcs.push_back({v, dst, lo, hi});
      }
    }
    arcs.push_back({dst, src, 0, 2LL * g.edge_count()});
    const auto flow = feasible_circulation(n + 2, arcs);
    if (!flow) throw InternalError("strength_to_subgraph: bipartite window system infeasible");
    for (EdgeId e = 0; e < g.edge_count(); ++e) out.h.set(e, (*flow)[e] == 1);
  } else {
    std::vector<Rational> z;
    for (int x : w) z.emplace_back(x, s);
    for (Rational& q : z) q.canonicalize();
    out.h = round_weights(g, z);
  }
  out.which = bipartite ? (regular ? StrengthCase::bipartite_regular : StrengthCase::bipartite)
                        : (regular ? StrengthCase::regular : StrengthCase::general);
  out.bound = 2 * s - (bipartite ? 1 : 0);
  if (s == 0) out.bound = g.vertex_count();
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const long long k = out.h.degree(v);
    if (s == 0) break;
    const bool ok = bipartite ? (k >= sums[v] / s && k <= (sums[v] + s - 1) / s)
                              : (s * (k - 1) <= sums[v] && sums[v] < s * (k + 1));
    if (!ok) out.windows_ok = false;
  }
  out.achieved = degree_profile(out.h).max_multiplicity;
  return out;
}

std::string strength_csv_row(const std::string& graph_id, const IrregularWeighting& weighting,
                             const StrengthResult& result) {
  std::ostringstream os;
  os << graph_id << ',' << weighting.s << ',' << to_string(result.which) << ',' << result.bound << ','
     << result.achieved;
  return os.str();
}

}  // namespace irreg
