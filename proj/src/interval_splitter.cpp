#include "irreg/interval_splitter.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "irreg/error.hpp"
#include "irreg/rng.hpp"

namespace irreg {

int DegreeSpec::distance(Vertex v, int degree) const {
  const int candidates[4] = {a[v], a[v] + 1, b[v], b[v] + 1};
  int best = std::abs(degree - candidates[0]);
  for (int c : candidates) best = std::min(best, std::abs(degree - c));
  return best;
}

std::vector<SpecViolation> validate_spec(const Graph& g, const DegreeSpec& spec) {
  std::vector<SpecViolation> out;
  if (static_cast<int>(spec.a.size()) != g.vertex_count() || static_cast<int>(spec.b.size()) != g.vertex_count()) {
    out.push_back({-1, "spec size does not match vertex count"});
    return out;
  }
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const int d = g.degree(v);
    const int a = spec.a[v];
    const int b = spec.b[v];
    if (a < 0 || b < 0) out.push_back({v, "a and b must be nonnegative"});
    if (a > d / 2) out.push_back({v, "a <= floor(deg/2)"});
    if (d / 2 > b) out.push_back({v, "floor(deg/2) <= b"});
    if (b >= d) out.push_back({v, "b < deg"});
    if (2 * b > d + a + 2) out.push_back({v, "b <= (deg+a)/2 + 1"});
    if (b > 2 * a + 3) out.push_back({v, "b <= 2a + 3"});
  }
  return out;
}

namespace {

// Euler-tour halving: alternate edges along closed trails of G plus a dummy
// vertex joined to every odd-degree vertex.
SpanningSubgraph euler_halving(const Graph& g, std::mt19937_64& rng) {
  const int n = g.vertex_count();
  const int dummy = n;
  std::vector<Edge> ends(g.edges().begin(), g.edges().end());
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) % 2 == 1) ends.push_back({v, dummy});
  }
  std::vector<std::vector<int>> adj(n + 1);
  for (int e = 0; e < static_cast<int>(ends.size()); ++e) {
    adj[ends[e].u].push_back(e);
    adj[ends[e].v].push_back(e);
  }
  for (auto& row : adj) std::shuffle(row.begin(), row.end(), rng);
  std::vector<char> used(ends.size(), 0);
  std::vector<std::size_t> next(n + 1, 0);
  SpanningSubgraph h(g);

  auto walk_from = [&](int start) {
    // Hierholzer: produces the circuit's edge sequence.
    std::vector<std::pair<int, int>> stack = {{start, -1}};
    std::vector<int> circuit;
    while (!stack.empty()) {
      const int v = stack.back().first;
      while (next[v] < adj[v].size() && used[adj[v][next[v]]]) ++next[v];
      if (next[v] == adj[v].size()) {
        if (stack.back().second >= 0) circuit.push_back(stack.back().second);
        stack.pop_back();
        continue;
      }
      const int e = adj[v][next[v]];
      used[e] = 1;
      stack.push_back({ends[e].other(v), e});
    }
    for (std::size_t i = 0; i < circuit.size(); ++i) {
      const int e = circuit[i];
      if (e < g.edge_count() && i % 2 == 0) h.set(e, true);
    }
  };
  if (!adj[dummy].empty()) walk_from(dummy);
  for (Vertex v = 0; v < n; ++v) {
    if (next[v] < adj[v].size()) walk_from(v);
  }
  return h;
}

class TrailRepair {
 public:
  TrailRepair(const Graph& g, const DegreeSpec& spec, SpanningSubgraph& h, std::mt19937_64& rng,
              std::int64_t& expansions)
      : g_(g), spec_(spec), h_(h), rng_(rng), expansions_(expansions) {}

  int total_distance() const {
    int total = 0;
    for (Vertex v = 0; v < g_.vertex_count(); ++v) total += spec_.distance(v, h_.degree(v));
    return total;
  }

  // Searches an alternating trail from v whose toggling changes the total
  // distance by at most `max_delta` (strictly improving when -1). Applies it.
  bool improve(Vertex v, int first_change, int max_delta, std::int64_t limit) {
    const int n = g_.vertex_count();
    // State (x, r): x has just received change r; index 2x + (r > 0).
    std::vector<int> parent_edge(2 * n, -1);
    std::vector<int> parent_state(2 * n, -1);
    std::vector<char> seen(2 * n, 0);
    std::vector<int> queue;
    std::vector<int> accepted;
    const int base_v = spec_.distance(v, h_.degree(v));

    auto expand = [&](Vertex x, int emit, int from_state) {
      // emit = -1: remove a selected edge at x; +1: add an unselected one.
      const auto inc = g_.incident(x);
      if (inc.empty()) return;
      const std::size_t offset = std::uniform_int_distribution<std::size_t>(0, inc.size() - 1)(rng_);
      for (std::size_t i = 0; i < inc.size(); ++i) {
        const auto& a = inc[(i + offset) % inc.size()];
        if (h_.contains(a.edge) != (emit < 0)) continue;
        const int s = 2 * a.neighbor + (emit > 0);
        if (seen[s]) continue;
        seen[s] = 1;
        parent_edge[s] = a.edge;
        parent_state[s] = from_state;
        queue.push_back(s);
      }
    };

    expand(v, first_change, -1);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      if (++expansions_ > limit) return false;
      const int s = queue[head];
      const Vertex y = s / 2;
      const int r = (s % 2) ? 1 : -1;
      int delta;
      if (y == v) {
        delta = spec_.distance(v, h_.degree(v) + first_change + r) - base_v;
      } else {
        delta = spec_.distance(v, h_.degree(v) + first_change) - base_v +
                spec_.distance(y, h_.degree(y) + r) - spec_.distance(y, h_.degree(y));
      }
      if (delta <= max_delta && (max_delta < 0 || y != v)) {
        std::vector<EdgeId> trail;
        for (int t = s; t != -1; t = parent_state[t]) trail.push_back(parent_edge[t]);
        std::vector<EdgeId> sorted = trail;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) {
          if (max_delta < 0) {
            for (EdgeId e : trail) h_.toggle(e);
            return true;
          }
          accepted = std::move(trail);
          break;
        }
      }
      expand(y, -r, s);
    }
    if (accepted.empty()) return false;
    for (EdgeId e : accepted) h_.toggle(e);
    return true;
  }

 private:
  const Graph& g_;
  const DegreeSpec& spec_;
  SpanningSubgraph& h_;
  std::mt19937_64& rng_;
  std::int64_t& expansions_;
};

bool backtrack(const Graph& g, const DegreeSpec& spec, SpanningSubgraph& h, std::int64_t& expansions,
               std::int64_t limit) {
  const int n = g.vertex_count();
  const int m = g.edge_count();
  std::vector<int> low(n), high(n), remaining(n);
  for (Vertex v = 0; v < n; ++v) {
    low[v] = spec.a[v];
    high[v] = spec.b[v] + 1;
    remaining[v] = g.degree(v);
  }
  for (EdgeId e = 0; e < m; ++e) h.set(e, false);
  std::vector<int> choice(m, -1);
  auto feasible = [&](Vertex v) {
    const int d = h.degree(v);
    if (d > high[v] || d + remaining[v] < low[v]) return false;
    if (remaining[v] == 0 && !spec.allows(v, d)) return false;
    return true;
  };
  int pos = 0;
  while (pos >= 0) {
    if (pos == m) return true;
    if (++expansions > limit) return false;
    const Edge& ed = g.edge(pos);
    if (choice[pos] == -1) {
      --remaining[ed.u];
      --remaining[ed.v];
    } else if (choice[pos] == 1) {
      h.set(pos, false);
    }
    ++choice[pos];
    if (choice[pos] > 1) {
      ++remaining[ed.u];
      ++remaining[ed.v];
      choice[pos] = -1;
      --pos;
      continue;
    }
    if (choice[pos] == 1) h.set(pos, true);
    if (feasible(ed.u) && feasible(ed.v)) ++pos;
  }
  return false;
}

}  // namespace

SpanningSubgraph solve_degree_set(const Graph& g, const DegreeSpec& spec, const DegreeSetOptions& options,
                                  DegreeSetStats* stats) {
  if (const auto bad = validate_spec(g, spec); !bad.empty()) {
    throw PreconditionError("degree spec invalid at vertex " + std::to_string(bad.front().vertex) + ": " +
                            bad.front().rule);
  }
  const std::int64_t budget =
      options.budget > 0 ? options.budget : std::max<std::int64_t>(20'000'000, 4000LL * (g.vertex_count() + g.edge_count()));
  DegreeSetStats local;
  DegreeSetStats& st = stats ? *stats : local;
  st = {};
  std::mt19937_64 rng(options.seed);
  const int n = g.vertex_count();

  auto solved = [&](const SpanningSubgraph& h) {
    for (Vertex v = 0; v < n; ++v) {
      if (!spec.allows(v, h.degree(v))) return false;
    }
    return true;
  };

  for (int attempt = 0; st.expansions < budget; ++attempt) {
    st.restarts = attempt;
    std::mt19937_64 attempt_rng(derive_seed(options.seed, attempt));
    SpanningSubgraph h = euler_halving(g, attempt_rng);
    TrailRepair repair(g, spec, h, attempt_rng, st.expansions);
    int sideways_left = 4 * n + 16;
    int total = repair.total_distance();
    while (total > 0 && st.expansions < budget) {
      std::vector<Vertex> bad;
      for (Vertex v = 0; v < n; ++v) {
        if (!spec.allows(v, h.degree(v))) bad.push_back(v);
      }
      std::shuffle(bad.begin(), bad.end(), attempt_rng);
      bool moved = false;
      for (Vertex v : bad) {
        if (spec.allows(v, h.degree(v))) continue;
        for (int dir : {-1, 1}) {
          if (repair.improve(v, dir, -1, budget)) {
            moved = true;
            ++st.repair_moves;
            break;
          }
        }
      }
      const int now = repair.total_distance();
      if (moved && now < total) {
        total = now;
        continue;
      }
      if (sideways_left-- <= 0) break;
      // Stalled: push one bad vertex's excess onto a neighbor region.
      const Vertex v = bad[std::uniform_int_distribution<std::size_t>(0, bad.size() - 1)(attempt_rng)];
      const int dir = std::uniform_int_distribution<int>(0, 1)(attempt_rng) ? 1 : -1;
      repair.improve(v, dir, 0, budget);
      total = repair.total_distance();
    }
    if (total == 0 && solved(h)) return h;
    if (g.edge_count() <= options.exhaustive_edge_limit) {
      st.used_backtracking = true;
      SpanningSubgraph hb(g);
      if (backtrack(g, spec, hb, st.expansions, budget) && solved(hb)) return hb;
      break;
    }
  }
  throw BudgetExhausted("solve_degree_set: no degree-set subgraph found within " + std::to_string(budget) +
                        " search expansions (" + std::to_string(st.restarts + 1) + " attempts)");
}

int max_overlap(const DegreeSpec& spec, std::span<const Vertex> members) {
  std::map<int, int> hits;
  int best = 0;
  for (Vertex v : members) {
    const int values[4] = {spec.a[v], spec.a[v] + 1, spec.b[v], spec.b[v] + 1};
    std::vector<int> uniq(values, values + 4);
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    for (int x : uniq) best = std::max(best, ++hits[x]);
  }
  return best;
}

SplitResult plan_regular_split(const Graph& g) {
  if (!g.is_regular()) throw PreconditionError("regular_split needs a regular graph");
  const int n = g.vertex_count();
  const int d = n == 0 ? 0 : g.max_degree();
  SplitResult out{SpanningSubgraph::full(g), {}, std::vector<int>(n, 1), 1, false, n, 1, {}};
  if (d <= 8) {
    out.trivial = true;
    return out;
  }
  const int k = (d + 3) / 4;
  const int part_size = (n + k - 1) / k;
  const int half = (d + 1) / 2;
  out.group_size = k;
  out.spec.a.resize(n);
  out.spec.b.resize(n);
  for (Vertex v = 0; v < n; ++v) {
    const int i = v / part_size + 1;
    out.group[v] = i;
    out.spec.a[v] = half - i;
    out.spec.b[v] = half + k - i;
  }
  std::vector<Vertex> reps;
  for (int i = 1; i <= k; ++i) {
    const Vertex r = (i - 1) * part_size;
    if (r < n) reps.push_back(r);
  }
  out.max_overlap = max_overlap(out.spec, reps);
  out.bound = 2 * part_size;
  return out;
}

SplitResult regular_split(const Graph& g, const DegreeSetOptions& options) {
  SplitResult out = plan_regular_split(g);
  if (!out.trivial) out.h = solve_degree_set(g, out.spec, options, &out.stats);
  return out;
}

SplitResult plan_general_split(const Graph& g) {
  const int n = g.vertex_count();
  const int delta = n == 0 ? 0 : g.min_degree();
  SplitResult out{SpanningSubgraph::full(g), {}, std::vector<int>(n, 1), 1, false, n, 1, {}};
  if (delta <= 16) {
    out.trivial = true;
    return out;
  }
  const int k = (delta + 3) / 4;
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Vertex x, Vertex y) { return g.degree(x) > g.degree(y); });
  out.group_size = k;
  out.spec.a.resize(n);
  out.spec.b.resize(n);
  out.max_overlap = 0;
  for (int start = 0; start < n; start += k) {
    std::vector<Vertex> block;
    for (int j = 1; j <= k && start + j - 1 < n; ++j) {
      const Vertex v = order[start + j - 1];
      const int half = (g.degree(v) + 1) / 2;
      out.group[v] = start / k + 1;
      out.spec.a[v] = half - j;
      out.spec.b[v] = half + k - j;
      block.push_back(v);
    }
    out.max_overlap = std::max(out.max_overlap, max_overlap(out.spec, block));
  }
  out.bound = 4 * ((n + k - 1) / k);
  return out;
}

SplitResult general_split(const Graph& g, const DegreeSetOptions& options) {
  SplitResult out = plan_general_split(g);
  if (!out.trivial) out.h = solve_degree_set(g, out.spec, options, &out.stats);
  return out;
}

}  // namespace irreg
