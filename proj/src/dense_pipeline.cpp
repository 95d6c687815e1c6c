#include "irreg/dense_pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <random>
#include <sstream>

#include "irreg/error.hpp"
#include "irreg/fractional_rounder.hpp"
#include "irreg/rng.hpp"

namespace irreg {

namespace {

int isqrt(int v) {
  int r = static_cast<int>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

int max_multiplicity(const std::vector<int>& values) {
  std::map<int, int> count;
  int best = 0;
  for (int v : values) best = std::max(best, ++count[v]);
  return best;
}

}  // namespace

int choose_k(int delta, double eps, double lnln_n) {
  const double raw = std::pow(static_cast<double>(delta), 0.5 - eps) / lnln_n;
  return std::max(1, static_cast<int>(std::llround(raw)));
}

PipelineParams choose_parameters(long long n, int delta, double eps) {
  if (!(eps > 0.0 && eps < 0.25)) throw PreconditionError("eps must lie in (0, 1/4)");
  if (n < 16) throw PreconditionError("n must be at least 16");
  if (delta < 4) throw PreconditionError("delta must be at least 4");
  PipelineParams p;
  p.n = n;
  p.delta = delta;
  p.eps = eps;
  p.width = isqrt(delta);
  p.ln_n = std::log(static_cast<double>(n));
  p.lnln_n = std::log(p.ln_n);
  const int lo = static_cast<int>(std::floor(std::pow(static_cast<double>(delta), 0.5 + eps) + 1e-9));
  const double hi = lo + std::sqrt(static_cast<double>(delta));
  p.s_star = -1;
  for (int s = lo; s <= hi && s < delta; ++s) {
    if ((delta - s) % p.width == 0) {
      p.s_star = s;
      break;
    }
  }
  if (p.s_star < 0) throw InternalError("choose_parameters: no s* in the window");
  p.b_blocks = delta - p.s_star;
  p.k = choose_k(delta, eps, p.lnln_n);
  p.regime_ok = delta >= std::pow(p.ln_n, 2.0 / eps) * std::pow(p.lnln_n, 1.0 / eps);
  return p;
}

double h_b(const PipelineParams& p, int degree, int i) {
  const double d = degree;
  const double delta = p.delta;
  const double s = p.s_star;
  return i * d / delta + (s * d / delta) * (delta - 2.0 * s * (p.k + 1)) / (delta - s) -
         13.0 * std::sqrt(d) * p.ln_n;
}

int step2_cap(const PipelineParams& p) {
  const double ratio = static_cast<double>(p.n) / p.delta;
  return static_cast<int>(std::ceil(ratio + 5.0 * std::sqrt(ratio) * std::sqrt(p.ln_n) / std::pow(p.delta, 0.25)));
}

double step3_bound(const PipelineParams& p) {
  return std::floor(2016.0 * p.n * p.ln_n * p.lnln_n / std::pow(p.delta, 1.0 + p.eps)) + 1.0;
}

double active_probability(const PipelineParams& p, int i) {
  return (p.delta - 4.0 * p.s_star * i) / (p.delta - p.s_star);
}

double removable_probability(const PipelineParams& p, int degree) {
  return 32.0 * p.delta * p.ln_n / (p.s_star * std::sqrt(static_cast<double>(degree)));
}

WeightInterval s_interval(const PipelineParams& p, int degree, int i) {
  const double base = 1.0 - 4.0 * p.s_star * i / p.delta;
  return {degree * (base - 34.0 * p.ln_n / std::pow(p.delta, p.eps)),
          degree * (base + 3.0 * p.s_star / p.delta)};
}

std::vector<Vertex> PipelineState::s_vertices() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < static_cast<Vertex>(in_s.size()); ++v) {
    if (in_s[v]) out.push_back(v);
  }
  return out;
}

std::vector<Vertex> PipelineState::b_vertices() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < static_cast<Vertex>(in_s.size()); ++v) {
    if (!in_s[v]) out.push_back(v);
  }
  return out;
}

PipelineState partition_and_label(const Graph& g, const PipelineParams& p, std::uint64_t seed,
                                  std::optional<std::span<const double>> x) {
  const int n = g.vertex_count();
  if (n > 0 && g.min_degree() < p.delta) throw PreconditionError("minimum degree below delta");
  PipelineState st;
  st.graph = &g;
  st.params = p;
  st.seed = seed;
  if (x) {
    if (static_cast<int>(x->size()) != n) throw PreconditionError("one variate per vertex required");
    st.x.assign(x->begin(), x->end());
  } else {
    std::mt19937_64 rng(derive_seed(seed, 0));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    st.x.resize(n);
    for (double& v : st.x) v = unit(rng);
  }
  st.in_s.assign(n, 0);
  st.block.assign(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    const double scaled = st.x[v] * p.delta;
    const int i = static_cast<int>(std::floor(scaled)) + 1;
    if (i <= p.b_blocks) {
      st.block[v] = std::max(1, i);
    } else {
      st.in_s[v] = 1;
      const int j = static_cast<int>(std::floor((scaled - p.b_blocks) * p.k / p.s_star)) + 1;
      st.block[v] = std::clamp(j, 1, p.k);
    }
  }
  std::vector<double> pa(p.k + 1, 0.0);
  for (int i = 1; i <= p.k; ++i) {
    const double raw = active_probability(p, i);
    if (raw < 0.0 || raw > 1.0) ++st.active_clamps;
    pa[i] = std::clamp(raw, 0.0, 1.0);
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!st.in_s[v] && removable_probability(p, g.degree(v)) > 1.0) ++st.removable_clamps;
  }
  std::mt19937_64 rng(derive_seed(seed, 1));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  st.active.assign(g.edge_count(), 0);
  st.removable.assign(g.edge_count(), 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (st.in_s[ed.u] == st.in_s[ed.v]) continue;
    const Vertex s = st.in_s[ed.u] ? ed.u : ed.v;
    const Vertex b = ed.other(s);
    const double ua = unit(rng);
    const double ur = unit(rng);
    st.active[e] = ua < pa[st.block[s]];
    st.removable[e] = ur < std::min(1.0, removable_probability(p, g.degree(b)));
  }
  st.quarter.assign(g.edge_count(), 0);
  st.weight.assign(n, 0);
  st.reductions.assign(n, 0);
  st.window.assign(n, -1);
  st.processed.assign(n, 0);
  st.conflicts.assign(n, {});
  return st;
}

Lemma51Report verify_lemma51(const PipelineState& st) {
  const Graph& g = *st.graph;
  const PipelineParams& p = st.params;
  const int n = g.vertex_count();
  Lemma51Report r;
  // (i)
  {
    std::vector<double> h;
    for (Vertex v = 0; v < n; ++v) {
      if (!st.in_s[v]) h.push_back(h_b(p, g.degree(v), st.block[v]));
    }
    std::sort(h.begin(), h.end());
    const double bound = p.width * static_cast<double>(n) / p.delta +
                         4.0 * std::sqrt(static_cast<double>(n) / p.delta * std::sqrt(static_cast<double>(p.delta)) * p.ln_n);
    for (int j = 0; j < n; ++j) {
      const auto lo = std::lower_bound(h.begin(), h.end(), static_cast<double>(j));
      const auto hi = std::lower_bound(h.begin(), h.end(), static_cast<double>(j + p.width));
      if (hi - lo > bound) ++r.violations[0];
    }
  }
  std::vector<int> deg_s(n, 0);
  std::vector<int> active_count(n, 0);
  std::vector<int> active_removable(n, 0);
  std::vector<std::vector<int>> active_to_block(n);
  std::vector<int> high_b(n, 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    for (Vertex v : {ed.u, ed.v}) {
      const Vertex u = ed.other(v);
      if (st.in_s[u]) ++deg_s[v];
      if (!st.in_s[v] && !st.in_s[u] && st.block[u] >= p.b_blocks - st.block[v] + 1) ++high_b[v];
    }
    if (st.active[e]) {
      const Vertex s = st.in_s[ed.u] ? ed.u : ed.v;
      const Vertex b = ed.other(s);
      ++active_count[s];
      if (active_to_block[b].empty()) active_to_block[b].assign(p.k + 1, 0);
      ++active_to_block[b][st.block[s]];
      if (st.removable[e]) {
        ++active_removable[s];
        ++active_removable[b];
      }
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    const double d = g.degree(v);
    // (ii)
    const double mid = p.s_star * d / p.delta;
    if (deg_s[v] < 0.5 * mid || deg_s[v] > 1.5 * mid) ++r.violations[1];
    if (!st.in_s[v]) {
      // (iii)
      const double mu = st.block[v] * d / p.delta;
      const double slack = 12.0 * std::sqrt(mu) * p.ln_n;
      if (high_b[v] < mu - slack || high_b[v] > mu + slack) ++r.violations[2];
      // (v)
      bool bad = active_removable[v] < 27.0 * std::sqrt(d) * p.ln_n;
      for (int i = 1; i <= p.k && !bad; ++i) {
        const double m = p.s_star * d / (static_cast<double>(p.delta) * p.k) * active_probability(p, i);
        const double sl = std::sqrt(d * p.s_star / (static_cast<double>(p.delta) * p.k)) * p.ln_n;
        const int got = active_to_block[v].empty() ? 0 : active_to_block[v][i];
        if (got < m - sl || got > m + sl) bad = true;
      }
      if (bad) ++r.violations[4];
    } else {
      // (iv)
      const int i = st.block[v];
      const double m = (p.delta - 4.0 * p.s_star * i) * d / p.delta;
      const double sl = std::sqrt(d) * p.ln_n;
      const double cap = 33.0 * (p.delta - 4.0 * p.s_star * i) * d * p.ln_n / (std::sqrt(static_cast<double>(p.delta)) * p.s_star);
      if (active_count[v] < m - sl || active_count[v] > m + sl || active_removable[v] > cap) ++r.violations[3];
    }
  }
  for (int t = 0; t < 5; ++t) r.holds[t] = r.violations[t] == 0;
  return r;
}

bool weights_conserved(const PipelineState& st) {
  const Graph& g = *st.graph;
  std::vector<int> w(g.vertex_count(), 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    w[g.edge(e).u] += st.quarter[e];
    w[g.edge(e).v] += st.quarter[e];
  }
  return w == st.weight;
}

namespace {

void set_quarter(PipelineState& st, EdgeId e, int q) {
  const int d = q - st.quarter[e];
  st.quarter[e] = q;
  st.weight[st.graph->edge(e).u] += d;
  st.weight[st.graph->edge(e).v] += d;
}

// Earliest-deadline sweep: each B vertex takes a value in [lo, hi], at most
// `cap` vertices per value. Empty result when infeasible.
std::vector<int> spread_by_deadline(const std::vector<Vertex>& verts, const std::vector<int>& lo,
                                    const std::vector<int>& hi, int cap) {
  std::vector<int> order(verts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return hi[a] != hi[b] ? hi[a] > hi[b] : a < b; });
  std::vector<int> value(verts.size(), -1);
  // max lo first, then lowest position
  auto cmp = [&](int a, int b) { return lo[a] != lo[b] ? lo[a] < lo[b] : a > b; };
  std::priority_queue<int, std::vector<int>, decltype(cmp)> heap(cmp);
  std::size_t next = 0;
  int w = order.empty() ? 0 : hi[order[0]];
  std::size_t assigned = 0;
  while (assigned < verts.size()) {
    if (heap.empty() && next < order.size()) w = std::min(w, hi[order[next]]);
    while (next < order.size() && hi[order[next]] >= w) heap.push(order[next++]);
    for (int taken = 0; taken < cap && !heap.empty(); ++taken) {
      const int t = heap.top();
      if (lo[t] > w) return {};
      heap.pop();
      value[t] = w;
      ++assigned;
    }
    if (!heap.empty() && lo[heap.top()] > w - 1) return {};
    --w;
    if (w < 0 && assigned < verts.size()) return {};
  }
  return value;
}

}  // namespace

Step2Report step1_step2(PipelineState& st) {
  const Graph& g = *st.graph;
  const PipelineParams& p = st.params;
  Step2Report rep;
  rep.cap = step2_cap(p);
  // Step 1.
  std::fill(st.quarter.begin(), st.quarter.end(), 0);
  std::fill(st.weight.begin(), st.weight.end(), 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    bool on = false;
    if (!st.in_s[ed.u] && !st.in_s[ed.v]) {
      on = st.block[ed.u] + st.block[ed.v] >= p.b_blocks + 1;
    } else if (st.in_s[ed.u] != st.in_s[ed.v]) {
      on = st.active[e] != 0;
    }
    if (on) set_quarter(st, e, 4);
  }
  if (!weights_conserved(st)) throw InternalError("step1: weight bookkeeping broken");

  const auto bverts = st.b_vertices();
  // Reducible edges per B vertex, lowest edge id first.
  std::vector<std::vector<EdgeId>> pool(bverts.size());
  std::vector<std::size_t> used(bverts.size(), 0);
  int min_deg = p.delta;
  for (std::size_t t = 0; t < bverts.size(); ++t) {
    const Vertex v = bverts[t];
    min_deg = std::min(min_deg, g.degree(v));
    for (const auto& inc : g.incident(v)) {
      if (st.in_s[inc.neighbor] && st.active[inc.edge] && st.removable[inc.edge]) pool[t].push_back(inc.edge);
    }
    std::sort(pool[t].begin(), pool[t].end());
  }
  rep.reduction_allowance = 27.0 * std::sqrt(static_cast<double>(min_deg)) * p.ln_n;
  auto current = [&](std::size_t t) { return st.weight[bverts[t]] / 4; };
  auto remaining = [&](std::size_t t) { return static_cast<int>(pool[t].size() - used[t]); };
  auto reduce_to = [&](std::size_t t, int value) {
    while (current(t) > value) {
      set_quarter(st, pool[t][used[t]++], 0);
      ++st.reductions[bverts[t]];
    }
  };

  // Modification 1.
  for (std::size_t t = 0; t < bverts.size(); ++t) {
    const Vertex v = bverts[t];
    const double h = h_b(p, g.degree(v), st.block[v]);
    const double target = std::floor(h);
    if (target <= current(t) && target >= current(t) - remaining(t)) {
      reduce_to(t, static_cast<int>(target));
    } else {
      ++rep.target_misses;
    }
  }
  rep.exact_targets = rep.target_misses == 0;
  if (!rep.exact_targets && !st.desk_mode()) {
    rep.failure = "floor(h_B) out of reach at " + std::to_string(rep.target_misses) + " B vertices";
    return rep;
  }

  // Modification 2: shift every bucket of width floor(sqrt(delta)) into the one below.
  bool shifted = false;
  if (rep.exact_targets && !bverts.empty()) {
    const int w = p.width;
    std::map<int, std::vector<std::size_t>> buckets;
    for (std::size_t t = 0; t < bverts.size(); ++t) buckets[current(t) / w].push_back(t);
    bool fits = !buckets.count(0);
    std::vector<int> dest(bverts.size(), 0);
    for (auto& [j, members] : buckets) {
      if (!fits) break;
      std::stable_sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
        return current(a) != current(b) ? current(a) < current(b) : bverts[a] < bverts[b];
      });
      for (std::size_t r = 0; r < members.size(); ++r) {
        const std::size_t t = members[r];
        dest[t] = (j - 1) * w + static_cast<int>(r % w);
        if (current(t) - dest[t] > remaining(t)) fits = false;
      }
    }
    if (fits && max_multiplicity(dest) <= rep.cap) {
      for (std::size_t t = 0; t < bverts.size(); ++t) reduce_to(t, dest[t]);
      shifted = true;
    } else if (!st.desk_mode()) {
      rep.failure = fits ? "bucket shift exceeds the multiplicity cap" : "bucket shift exceeds the removable budget";
      return rep;
    }
  }
  if (!shifted) {
    std::vector<int> lo(bverts.size());
    std::vector<int> hi(bverts.size());
    for (std::size_t t = 0; t < bverts.size(); ++t) {
      hi[t] = current(t);
      lo[t] = current(t) - remaining(t);
    }
    const auto value = spread_by_deadline(bverts, lo, hi, rep.cap);
    if (value.empty() && !bverts.empty()) {
      rep.failure = "removable budget too small to spread B weights under the cap";
      return rep;
    }
    for (std::size_t t = 0; t < bverts.size(); ++t) reduce_to(t, value[t]);
  }
  rep.bucket_shift = shifted;
  if (!weights_conserved(st)) throw InternalError("step2: weight bookkeeping broken");

  st.b_weight_after_step2.assign(g.vertex_count(), -1);
  std::vector<int> bw;
  for (Vertex v : bverts) {
    st.b_weight_after_step2[v] = st.weight[v];
    bw.push_back(st.weight[v]);
    rep.max_reduction = std::max(rep.max_reduction, st.reductions[v]);
  }
  rep.b_multiplicity = max_multiplicity(bw);
  if (rep.b_multiplicity > rep.cap) throw InternalError("step2: B multiplicity above the cap after spreading");
  rep.ok = true;
  return rep;
}

ConflictReport build_conflict_sets(PipelineState& st) {
  const Graph& g = *st.graph;
  const PipelineParams& p = st.params;
  const auto sverts = st.s_vertices();
  std::vector<WeightInterval> iv;
  for (Vertex v : sverts) iv.push_back(s_interval(p, g.degree(v), st.block[v]));
  st.conflicts.assign(g.vertex_count(), {});
  ConflictReport rep;
  for (std::size_t a = 0; a < sverts.size(); ++a) {
    for (std::size_t b = a + 1; b < sverts.size(); ++b) {
      if (iv[a].lo <= iv[b].hi && iv[b].lo <= iv[a].hi) {
        st.conflicts[sverts[a]].push_back(sverts[b]);
        st.conflicts[sverts[b]].push_back(sverts[a]);
      }
    }
  }
  for (Vertex v : sverts) {
    std::sort(st.conflicts[v].begin(), st.conflicts[v].end());
    const int size = static_cast<int>(st.conflicts[v].size());
    rep.mean_size += size;
    rep.max_size = std::max(rep.max_size, size);
    rep.mean_bound += 42.0 * p.n * g.degree(v) * p.ln_n / (p.k * std::pow(p.delta, 1.0 + p.eps));
  }
  if (!sverts.empty()) {
    rep.mean_size /= sverts.size();
    rep.mean_bound /= sverts.size();
  }
  return rep;
}

namespace {

bool in_lambda(const PipelineState& st, Vertex v) {
  const int b = st.window[v];
  return b >= 0 && (st.weight[v] == 12 * b || st.weight[v] == 12 * b + 1);
}

}  // namespace

Step3Report step3_quarter_weights(PipelineState& st) {
  const Graph& g = *st.graph;
  Step3Report rep;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (st.in_s[g.edge(e).u] && st.in_s[g.edge(e).v]) set_quarter(st, e, 2);
  }
  std::fill(st.window.begin(), st.window.end(), -1);
  std::fill(st.processed.begin(), st.processed.end(), 0);
  std::vector<Vertex> anchored;
  for (Vertex v : st.s_vertices()) {
    std::vector<std::pair<EdgeId, int>> options;  // edge, lower change; upper is lower + 1
    for (const auto& inc : g.incident(v)) {
      const Vertex u = inc.neighbor;
      if (!st.in_s[u]) continue;
      int lower = 0;
      if (st.processed[u] && st.window[u] >= 0) {
        if (st.weight[u] == 12 * st.window[u] + 1) {
          lower = -1;
        } else if (st.weight[u] != 12 * st.window[u]) {
          rep.lambda_contained = false;
        }
      }
      options.emplace_back(inc.edge, lower);
    }
    std::sort(options.begin(), options.end());
    int base = st.weight[v];
    for (const auto& [e, lower] : options) base += lower;
    const int span = static_cast<int>(options.size());
    if (span + 1 < 34) ++rep.short_progressions;
    const int b_min = (base + 11) / 12;
    const int b_max = base + span - 11 >= 0 ? (base + span - 11) / 12 : -1;
    int raise = 0;
    if (b_min > b_max) {
      ++rep.unanchored;
    } else {
      std::map<int, int> shared;
      for (Vertex u : st.conflicts[v]) {
        if (st.processed[u] && st.window[u] >= 0) ++shared[st.window[u]];
      }
      int best = b_min;
      for (int b = b_min; b <= b_max; ++b) {
        const int c = shared.count(b) ? shared[b] : 0;
        const int cb = shared.count(best) ? shared[best] : 0;
        if (c < cb) best = b;
      }
      rep.max_shared = std::max(rep.max_shared, shared.count(best) ? shared[best] : 0);
      st.window[v] = best;
      raise = 12 * best - base;
    }
    for (std::size_t t = 0; t < options.size(); ++t) {
      const auto [e, lower] = options[t];
      const int change = lower + (static_cast<int>(t) < raise ? 1 : 0);
      set_quarter(st, e, st.quarter[e] + change);
      if (st.quarter[e] < 0 || st.quarter[e] > 4) rep.quarters_in_range = false;
    }
    st.processed[v] = 1;
    ++rep.processed;
    if (st.window[v] >= 0) anchored.push_back(v);
    for (Vertex u : anchored) {
      if (!in_lambda(st, u)) rep.lambda_contained = false;
    }
  }
  rep.conserved = weights_conserved(st);
  rep.ok = rep.unanchored == 0 && rep.lambda_contained && rep.conserved && rep.quarters_in_range;
  return rep;
}

FinalizeReport finalize(PipelineState& st) {
  const Graph& g = *st.graph;
  const auto sverts = st.s_vertices();
  std::vector<int> local(g.vertex_count(), -1);
  for (std::size_t i = 0; i < sverts.size(); ++i) local[sverts[i]] = static_cast<int>(i);
  std::vector<Edge> inner;
  std::vector<EdgeId> inner_id;
  std::vector<Rational> z;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (local[ed.u] < 0 || local[ed.v] < 0) continue;
    inner.push_back({local[ed.u], local[ed.v]});
    inner_id.push_back(e);
    Rational q(st.quarter[e], 4);
    q.canonicalize();
    z.push_back(q);
  }
  const std::vector<int> before = st.weight;
  const Graph sg(static_cast<int>(sverts.size()), inner);
  const SpanningSubgraph rounded = round_weights(sg, z);
  for (std::size_t i = 0; i < inner_id.size(); ++i) set_quarter(st, inner_id[i], rounded.contains(static_cast<EdgeId>(i)) ? 4 : 0);

  FinalizeReport rep{SpanningSubgraph(g)};
  rep.deviations_ok = true;
  for (Vertex v : sverts) {
    const int dev = st.weight[v] - before[v];
    if (dev <= -4 || dev > 4) rep.deviations_ok = false;
  }
  rep.b_frozen = true;
  for (Vertex v : st.b_vertices()) {
    if (st.b_weight_after_step2.empty() || st.weight[v] != st.b_weight_after_step2[v]) rep.b_frozen = false;
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (st.quarter[e] != 0 && st.quarter[e] != 4) throw InternalError("finalize: fractional edge left");
    rep.h.set(e, st.quarter[e] == 4);
  }
  if (!weights_conserved(st)) throw InternalError("finalize: weight bookkeeping broken");
  rep.m = degree_profile(rep.h).max_multiplicity;
  std::vector<int> bw;
  std::map<int, std::vector<Vertex>> by_weight;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (st.in_s[v]) {
      by_weight[st.weight[v]].push_back(v);
    } else {
      bw.push_back(st.weight[v]);
    }
  }
  rep.m_b = max_multiplicity(bw);
  rep.collisions_explained = true;
  for (const auto& [w, group] : by_weight) {
    rep.m_s = std::max(rep.m_s, static_cast<int>(group.size()));
    for (std::size_t a = 0; a < group.size(); ++a) {
      for (std::size_t b = a + 1; b < group.size(); ++b) {
        const Vertex u = group[a];
        const Vertex v = group[b];
        const auto& l = st.conflicts[v];
        const bool conflicted = std::binary_search(l.begin(), l.end(), u);
        if (!conflicted || st.window[u] < 0 || st.window[u] != st.window[v]) rep.collisions_explained = false;
      }
    }
  }
  rep.bound = step2_cap(st.params) + step3_bound(st.params);
  return rep;
}

PipelineRun run_dense_pipeline(const Graph& g, double eps, std::uint64_t seed, int max_attempts) {
  PipelineRun run;
  const int delta = g.vertex_count() == 0 ? 0 : g.min_degree();
  run.params = choose_parameters(g.vertex_count(), delta, eps);
  bool regime = false;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    run.attempts = attempt + 1;
    run.seed = derive_seed(seed, attempt);
    PipelineState st = partition_and_label(g, run.params, run.seed);
    run.active_clamps = st.active_clamps;
    run.removable_clamps = st.removable_clamps;
    run.lemma = verify_lemma51(st);
    run.lemma_enforced = !st.desk_mode();
    regime = false;
    if (run.lemma_enforced && !run.lemma.all()) {
      run.failure = "concentration check failed";
      continue;
    }
    run.step2 = step1_step2(st);
    if (!run.step2.ok) {
      run.failure = run.step2.failure;
      continue;
    }
    run.conflicts = build_conflict_sets(st);
    run.step3 = step3_quarter_weights(st);
    if (!run.step3.ok) {
      regime = run.step3.unanchored > 0;
      run.failure = regime ? std::to_string(run.step3.unanchored) + " S vertices have no 12-window in reach"
                           : "step 3 invariant broken";
      if (!regime) throw InternalError("step3: " + run.failure);
      continue;
    }
    FinalizeReport fin = finalize(st);
    if (!fin.deviations_ok || !fin.b_frozen || !fin.collisions_explained) {
      throw InternalError("finalize: rounding or freeze guarantee broken");
    }
    run.final = std::move(fin);
    run.failure.clear();
    run.status = PipelineStatus::ok;
    return run;
  }
  run.status = regime ? PipelineStatus::regime_failure : PipelineStatus::retries_exhausted;
  return run;
}

std::string pipeline_report_csv(const PipelineRun& run) {
  std::ostringstream os;
  os << "seed,attempts,n,delta,eps,s_star,k,lemma_i,lemma_ii,lemma_iii,lemma_iv,lemma_v,lemma_enforced,"
        "active_clamps,removable_clamps,step2_cap,m_B,m_S,m_H,formula_bound,status\n";
  const auto b = [](bool x) { return x ? "true" : "false"; };
  const auto& p = run.params;
  os << run.seed << ',' << run.attempts << ',' << p.n << ',' << p.delta << ',' << p.eps << ',' << p.s_star << ','
     << p.k;
  for (int t = 0; t < 5; ++t) os << ',' << b(run.lemma.holds[t]);
  os << ',' << b(run.lemma_enforced) << ',' << run.active_clamps << ',' << run.removable_clamps << ','
     << step2_cap(p);
  if (run.final) {
    os << ',' << run.final->m_b << ',' << run.final->m_s << ',' << run.final->m << ',' << run.final->bound;
  } else {
    os << ",,,,";
  }
  const char* status = run.status == PipelineStatus::ok                  ? "ok"
                       : run.status == PipelineStatus::regime_failure    ? "regime_failure"
                                                                          : "retries_exhausted";
  os << ',' << status << '\n';
  return os.str();
}

}  // namespace irreg
