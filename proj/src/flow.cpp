#include "irreg/flow.hpp"

#include <algorithm>
#include <deque>
#include <limits>


namespace irreg {

MaxFlow::MaxFlow(int node_count) : out_(node_count), level_(node_count), it_(node_count) {}

int MaxFlow::add_arc(int from, int to, std::int64_t capacity) {
  const int id = static_cast<int>(arcs_.size());
  arcs_.push_back({to, capacity});
  arcs_.push_back({from, 0});
  original_.push_back(capacity);
  original_.push_back(0);
  out_[from].push_back(id);
  out_[to].push_back(id + 1);
  return id;
}

bool MaxFlow::bfs(int s, int t) {
  std::fill(level_.begin(), level_.end(), -1);
  level_[s] = 0;
  std::deque<int> queue = {s};
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int a : out_[v]) {
      if (arcs_[a].cap > 0 && level_[arcs_[a].to] < 0) {
        level_[arcs_[a].to] = level_[v] + 1;
        queue.push_back(arcs_[a].to);
      }
    }
  }
  return level_[t] >= 0;
}

std::int64_t MaxFlow::dfs(int v, int t, std::int64_t pushed) {
  if (v == t) return pushed;
  for (; it_[v] < out_[v].size(); ++it_[v]) {
    const int a = out_[v][it_[v]];
    const int w = arcs_[a].to;
    if (arcs_[a].cap <= 0 || level_[w] != level_[v] + 1) continue;
    const std::int64_t got = dfs(w, t, std::min(pushed, arcs_[a].cap));
    if (got > 0) {
      arcs_[a].cap -= got;
      arcs_[a ^ 1].cap += got;
      return got;
    }
  }
  return 0;
}

std::int64_t MaxFlow::run(int source, int sink) {
  std::int64_t total = 0;
  while (bfs(source, sink)) {
    std::fill(it_.begin(), it_.end(), 0);
    while (const std::int64_t f = dfs(source, sink, std::numeric_limits<std::int64_t>::max())) total += f;
  }
  return total;
}

std::int64_t MaxFlow::flow(int arc) const { return original_[arc] - arcs_[arc].cap; }

std::optional<std::vector<std::int64_t>> feasible_circulation(int node_count, const std::vector<BoundedArc>& arcs) {
  const int s = node_count;
  const int t = node_count + 1;
  MaxFlow mf(node_count + 2);
  std::vector<std::int64_t> excess(node_count, 0);
  std::vector<int> ids;
  for (const BoundedArc& a : arcs) {
    if (a.low > a.high) return std::nullopt;
    ids.push_back(mf.add_arc(a.from, a.to, a.high - a.low));
    excess[a.to] += a.low;
    excess[a.from] -= a.low;
  }
  std::int64_t need = 0;
  for (int v = 0; v < node_count; ++v) {
    if (excess[v] > 0) {
      mf.add_arc(s, v, excess[v]);
      need += excess[v];
    } else if (excess[v] < 0) {
      mf.add_arc(v, t, -excess[v]);
    }
  }
  if (mf.run(s, t) != need) return std::nullopt;
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < arcs.size(); ++i) out.push_back(arcs[i].low + mf.flow(ids[i]));
  return out;
}

}  // namespace irreg
