#include "irreg/equitable_coloring.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <random>
#include <string>

#include "irreg/error.hpp"

namespace irreg {

std::vector<std::vector<Vertex>> EquitableColoring::classes() const {
  std::vector<std::vector<Vertex>> out(class_count);
  for (Vertex v = 0; v < static_cast<Vertex>(color.size()); ++v) out[color[v]].push_back(v);
  return out;
}

Graph square_graph(const Graph& g) { return conflict_graph(g); }

Graph conflict_graph(const Graph& g, std::optional<std::span<const Vertex>> restrict_to) {
  std::vector<Vertex> members;
  if (restrict_to) {
    members.assign(restrict_to->begin(), restrict_to->end());
  } else {
    members.resize(g.vertex_count());
    std::iota(members.begin(), members.end(), 0);
  }
  std::vector<int> index(g.vertex_count(), -1);
  for (std::size_t i = 0; i < members.size(); ++i) {
    const Vertex v = members[i];
    if (v < 0 || v >= g.vertex_count()) throw PreconditionError("restricted vertex out of range");
    if (index[v] != -1) throw PreconditionError("restricted vertex set has duplicates");
    index[v] = static_cast<int>(i);
  }
  std::vector<Edge> edges;
  std::vector<int> stamp(g.vertex_count(), -1);
  for (std::size_t i = 0; i < members.size(); ++i) {
    const Vertex v = members[i];
    stamp[v] = static_cast<int>(i);
    auto consider = [&](Vertex w) {
      if (stamp[w] == static_cast<int>(i)) return;
      stamp[w] = static_cast<int>(i);
      if (index[w] > static_cast<int>(i)) edges.push_back({static_cast<Vertex>(i), index[w]});
    };
    for (const auto& a : g.incident(v)) {
      consider(a.neighbor);
      for (const auto& b : g.incident(a.neighbor)) consider(b.neighbor);
    }
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& x, const Edge& y) { return x.u != y.u ? x.u < y.u : x.v < y.v; });
  return Graph(static_cast<int>(members.size()), std::move(edges));
}

namespace {

class Rebalancer {
 public:
  Rebalancer(const Graph& f, int c) : f_(f), c_(c), n_(f.vertex_count()) {}

  // Greedy pass in the given order. False if some vertex has no free class.
  bool greedy(std::span<const Vertex> order) {
    color_.assign(n_, -1);
    sizes_.assign(c_, 0);
    neighbor_count_.assign(static_cast<std::size_t>(n_) * c_, 0);
    for (Vertex v : order) {
      int best = -1;
      for (int k = 0; k < c_; ++k) {
        if (neighbor_count_[slot(v, k)] == 0 && (best == -1 || sizes_[k] < sizes_[best])) best = k;
      }
      if (best == -1) return false;
      assign(v, best);
    }
    return true;
  }

  int imbalance() const {
    const auto [lo, hi] = std::minmax_element(sizes_.begin(), sizes_.end());
    return *hi - *lo;
  }

  // One augmenting move sequence; false when no path exists.
  bool augment(std::int64_t& moves) {
    const int low = n_ / c_;
    const int high = (n_ + c_ - 1) / c_;
    std::vector<char> source(c_, 0), target(c_, 0);
    const bool too_big = std::any_of(sizes_.begin(), sizes_.end(), [&](int s) { return s > high; });
    for (int k = 0; k < c_; ++k) {
      if (too_big) {
        source[k] = sizes_[k] > high;
        target[k] = sizes_[k] < high;
      } else {
        source[k] = sizes_[k] > low;
        target[k] = sizes_[k] < low;
      }
    }
    // witness[i][j]: a vertex of class i with no neighbor in class j.
    std::vector<Vertex> witness(static_cast<std::size_t>(c_) * c_, -1);
    for (Vertex v = 0; v < n_; ++v) {
      const int i = color_[v];
      for (int j = 0; j < c_; ++j) {
        if (j != i && neighbor_count_[slot(v, j)] == 0 && witness[i * c_ + j] == -1) {
          witness[i * c_ + j] = v;
        }
      }
    }
    std::vector<int> parent(c_, -2);
    std::queue<int> q;
    for (int k = 0; k < c_; ++k) {
      if (source[k]) {
        parent[k] = -1;
        q.push(k);
      }
    }
    int reached = -1;
    while (!q.empty() && reached == -1) {
      const int i = q.front();
      q.pop();
      for (int j = 0; j < c_; ++j) {
        if (parent[j] != -2 || witness[i * c_ + j] == -1) continue;
        parent[j] = i;
        if (target[j]) {
          reached = j;
          break;
        }
        q.push(j);
      }
    }
    if (reached == -1) return false;
    std::vector<std::pair<Vertex, int>> steps;
    for (int j = reached; parent[j] != -1; j = parent[j]) {
      steps.emplace_back(witness[parent[j] * c_ + j], j);
    }
    for (const auto& [v, to] : steps) {
      unassign(v);
      assign(v, to);
      ++moves;
    }
    return true;
  }

  EquitableColoring result() const { return {c_, color_, sizes_}; }

 private:
  std::size_t slot(Vertex v, int k) const { return static_cast<std::size_t>(v) * c_ + k; }

  void assign(Vertex v, int k) {
    color_[v] = k;
    ++sizes_[k];
    for (const auto& inc : f_.incident(v)) ++neighbor_count_[slot(inc.neighbor, k)];
  }
  void unassign(Vertex v) {
    const int k = color_[v];
    --sizes_[k];
    for (const auto& inc : f_.incident(v)) --neighbor_count_[slot(inc.neighbor, k)];
    color_[v] = -1;
  }

  const Graph& f_;
  int c_;
  int n_;
  std::vector<int> color_;
  std::vector<int> sizes_;
  std::vector<int> neighbor_count_;
};

}  // namespace

EquitableColoring equitable_color(const Graph& f, int c, const ColoringOptions& options) {
  if (c < 1) throw PreconditionError("equitable_color needs at least one class");
  const int n = f.vertex_count();
  std::int64_t budget = options.move_budget > 0
                            ? options.move_budget
                            : static_cast<std::int64_t>(n) * n * c + 1;
  std::int64_t moves = 0;
  std::mt19937_64 rng(options.seed);
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  // First attempt: highest degree first, then reshuffled restarts.
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return f.degree(a) > f.degree(b); });
  int best_imbalance = -1;
  for (int attempt = 0; attempt <= options.restarts; ++attempt) {
    if (attempt > 0) std::shuffle(order.begin(), order.end(), rng);
    Rebalancer state(f, c);
    if (!state.greedy(order)) continue;
    while (state.imbalance() > 1 && moves < budget) {
      if (!state.augment(moves)) break;
    }
    if (state.imbalance() <= 1) return state.result();
    if (best_imbalance == -1 || state.imbalance() < best_imbalance) best_imbalance = state.imbalance();
    if (moves >= budget) break;
  }
  throw BudgetExhausted("equitable_color(n=" + std::to_string(n) + ", c=" + std::to_string(c) +
                        ", maxdeg=" + std::to_string(f.max_degree()) + "): no balanced coloring found; " +
                        "best class-size spread " + std::to_string(best_imbalance) + " after " +
                        std::to_string(moves) + " moves");
}

bool is_proper(const Graph& f, const EquitableColoring& coloring) {
  if (static_cast<int>(coloring.color.size()) != f.vertex_count()) return false;
  for (int k : coloring.color) {
    if (k < 0 || k >= coloring.class_count) return false;
  }
  for (const Edge& e : f.edges()) {
    if (coloring.color[e.u] == coloring.color[e.v]) return false;
  }
  return true;
}

bool is_equitable(const EquitableColoring& coloring) {
  const int n = static_cast<int>(coloring.color.size());
  const int c = coloring.class_count;
  if (c < 1 || static_cast<int>(coloring.class_sizes.size()) != c) return false;
  std::vector<int> sizes(c, 0);
  for (int k : coloring.color) {
    if (k < 0 || k >= c) return false;
    ++sizes[k];
  }
  if (sizes != coloring.class_sizes) return false;
  for (int s : sizes) {
    if (s != n / c && s != (n + c - 1) / c) return false;
  }
  return true;
}

}  // namespace irreg
