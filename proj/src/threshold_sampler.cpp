#include "irreg/threshold_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "irreg/error.hpp"
#include "irreg/rng.hpp"

namespace irreg {

ThresholdAssignment draw_threshold_weights(int vertex_count, std::uint64_t seed) {
  ThresholdAssignment a;
  a.seed = seed;
  a.x.resize(vertex_count);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (double& x : a.x) x = unit(rng);
  return a;
}

SpanningSubgraph threshold_subgraph(const Graph& g, const ThresholdAssignment& weights) {
  if (static_cast<int>(weights.x.size()) != g.vertex_count()) {
    throw PreconditionError("threshold weights do not match the vertex count");
  }
  SpanningSubgraph h(g);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (weights.x[ed.u] + weights.x[ed.v] > 1.0) h.set(e, true);
  }
  return h;
}

SpanningSubgraph sample_threshold_subgraph(const Graph& g, std::uint64_t seed) {
  return threshold_subgraph(g, draw_threshold_weights(g.vertex_count(), seed));
}

PeeledGraph peel_high_degree_edges(const Graph& g, int delta) {
  std::vector<int> deg(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) deg[v] = g.degree(v);
  std::vector<char> keep(g.edge_count(), 1);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (deg[ed.u] > delta && deg[ed.v] > delta) {
      keep[e] = 0;
      --deg[ed.u];
      --deg[ed.v];
    }
  }
  PeeledGraph out;
  std::vector<Edge> edges;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!keep[e]) continue;
    edges.push_back(g.edge(e));
    out.original_edge.push_back(e);
  }
  out.graph = Graph(g.vertex_count(), std::move(edges));
  return out;
}

SplitCertificate split_high_degree_vertices(const Graph& peeled, int delta, double cap) {
  if (delta < 1) throw PreconditionError("splitting needs delta >= 1");
  if (cap < delta) throw PreconditionError("splitting needs D >= delta");
  SplitCertificate cert;
  cert.delta = delta;
  cert.cap = cap;
  const int n = peeled.vertex_count();
  std::vector<Vertex> new_id(n, -1);
  for (Vertex v = 0; v < n; ++v) {
    const int d = peeled.degree(v);
    if (d > cap) {
      cert.high.push_back(v);
      continue;
    }
    if (d == delta) {
      cert.low.push_back(v);
    } else if (d > delta) {
      cert.middle.push_back(v);
    }
    new_id[v] = static_cast<Vertex>(cert.vertex_map.size());
    cert.vertex_map.push_back(v);
  }
  // Owner of each (high vertex, edge) incidence in the split graph.
  std::vector<Vertex> end_u(peeled.edge_count()), end_v(peeled.edge_count());
  for (EdgeId e = 0; e < peeled.edge_count(); ++e) {
    end_u[e] = new_id[peeled.edge(e).u];
    end_v[e] = new_id[peeled.edge(e).v];
  }
  for (Vertex v : cert.high) {
    const int d = peeled.degree(v);
    const int parts = d / delta;
    std::vector<Vertex> copies;
    for (int i = 0; i < parts; ++i) {
      copies.push_back(static_cast<Vertex>(cert.vertex_map.size()));
      cert.vertex_map.push_back(v);
    }
    const auto inc = peeled.incident(v);
    for (int pos = 0; pos < d; ++pos) {
      const int part = std::min(pos / delta, parts - 1);
      const EdgeId e = inc[pos].edge;
      if (peeled.degree(inc[pos].neighbor) > cap) {
        throw InternalError("split: two high-degree vertices are adjacent; graph was not peeled");
      }
      if (peeled.edge(e).u == v) {
        end_u[e] = copies[part];
      } else {
        end_v[e] = copies[part];
      }
    }
    const int last = d - (parts - 1) * delta;
    if (parts < 1 || last < delta || last > 2 * delta) {
      throw InternalError("split: neighbor set of vertex " + std::to_string(v) + " cannot be partitioned");
    }
    cert.copies.push_back(std::move(copies));
  }
  std::vector<Edge> edges(peeled.edge_count());
  cert.edge_map.resize(peeled.edge_count());
  for (EdgeId e = 0; e < peeled.edge_count(); ++e) {
    edges[e] = {end_u[e], end_v[e]};
    cert.edge_map[e] = e;
  }
  cert.split = Graph(static_cast<int>(cert.vertex_map.size()), std::move(edges));
  return cert;
}

bool check_certificate(const Graph& peeled, const SplitCertificate& cert) {
  const Graph& s = cert.split;
  if (s.edge_count() != peeled.edge_count()) return false;
  if (static_cast<int>(cert.vertex_map.size()) != s.vertex_count()) return false;
  std::vector<char> hit(peeled.edge_count(), 0);
  for (EdgeId e = 0; e < s.edge_count(); ++e) {
    const EdgeId o = cert.edge_map[e];
    if (o < 0 || o >= peeled.edge_count() || hit[o]) return false;
    hit[o] = 1;
    const Edge& se = s.edge(e);
    const Edge& oe = peeled.edge(o);
    const Vertex a = cert.vertex_map[se.u];
    const Vertex b = cert.vertex_map[se.v];
    if (!((a == oe.u && b == oe.v) || (a == oe.v && b == oe.u))) return false;
  }
  for (std::size_t i = 0; i < cert.high.size(); ++i) {
    const Vertex v = cert.high[i];
    const int d = peeled.degree(v);
    if (d <= cert.cap) return false;
    if (static_cast<int>(cert.copies[i].size()) != d / cert.delta) return false;
    for (Vertex c : cert.copies[i]) {
      if (cert.vertex_map[c] != v) return false;
      if (s.degree(c) < cert.delta || s.degree(c) > 2 * cert.delta) return false;
    }
  }
  for (Vertex v : cert.low) {
    if (peeled.degree(v) != cert.delta) return false;
  }
  for (Vertex v : cert.middle) {
    if (peeled.degree(v) <= cert.delta || peeled.degree(v) > cert.cap) return false;
  }
  return true;
}

double prop24_condition(long long n, int d, double eps) {
  const double classes = static_cast<double>(d) * d + 1.0;
  const double per_class = std::floor(static_cast<double>(n) / classes);
  return (d + 1.0) * classes * 2.0 * std::exp(-eps * eps * per_class / (3.0 * (d + 1.0)));
}

double prop25_condition(long long n, int delta, int max_degree, double eps) {
  const double classes = static_cast<double>(delta) * max_degree + 1.0;
  const double per_class = std::floor(static_cast<double>(n) / classes);
  return (max_degree + 1.0) * classes * std::exp(-eps * eps * per_class / (3.0 * (delta + 1.0)));
}

double prop27_condition(long long n, int delta, double eps) {
  const double cap = delta * (delta + 1.0) / eps;
  const double classes = delta * cap + 1.0;
  const double per_class = std::floor(static_cast<double>(n) / classes);
  return (cap + 1.0) * classes * std::exp(-eps * eps * per_class / (3.0 * (delta + 1.0)));
}

namespace {

void require_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0 / 3.0)) throw PreconditionError("eps must lie in (0, 1/3)");
}

}  // namespace

SamplerResult run_prop24(const Graph& g, double eps, int max_retries, std::uint64_t seed) {
  require_eps(eps);
  if (!g.is_regular() || g.vertex_count() == 0) throw PreconditionError("run_prop24 needs a nonempty regular graph");
  const int n = g.vertex_count();
  const int d = g.max_degree();
  const double target = static_cast<double>(n) / (d + 1);

  SamplerResult result{SpanningSubgraph(g), {}, {}};
  result.coloring = equitable_color(square_graph(g), d * d + 1, {.seed = seed});
  SamplerReport& rep = result.report;
  rep.condition_value = prop24_condition(n, d, eps);
  rep.condition_holds = rep.condition_value < 1.0;
  rep.final_bound = eps * target;
  rep.max_deviation = -1.0;

  for (int t = 0; t < std::max(1, max_retries); ++t) {
    SpanningSubgraph h = sample_threshold_subgraph(g, derive_seed(seed, t));
    const DegreeProfile p = degree_profile(h);
    double worst = 0.0;
    for (int k = 0; k <= d; ++k) worst = std::max(worst, std::abs(p.count(k) - target));
    rep.retries = t + 1;
    if (rep.max_deviation < 0.0 || worst < rep.max_deviation) {
      rep.max_deviation = worst;
      rep.m = p.max_multiplicity;
      result.h = std::move(h);
    }
    if (worst <= eps * target) {
      rep.success = true;
      break;
    }
  }
  return result;
}

SamplerResult run_prop25_26_27(const Graph& g, double eps, std::optional<std::span<const Vertex>> target_set,
                               int max_retries, std::uint64_t seed) {
  require_eps(eps);
  const int n = g.vertex_count();
  const int delta = g.min_degree();
  if (n == 0 || delta < 1) throw PreconditionError("run_prop25_26_27 needs minimum degree >= 1");

  const PeeledGraph peeled = peel_high_degree_edges(g, delta);
  const double cap = delta * (delta + 1.0) / eps;
  const SplitCertificate cert = split_high_degree_vertices(peeled.graph, delta, cap);
  if (!check_certificate(peeled.graph, cert)) throw InternalError("split certificate failed its own check");
  const Graph& split = cert.split;

  std::vector<Vertex> x;
  if (target_set) {
    x.assign(target_set->begin(), target_set->end());
  } else {
    // Non-high vertices are numbered first in the split graph.
    const int kept = n - static_cast<int>(cert.high.size());
    for (Vertex v = 0; v < kept; ++v) x.push_back(v);
    for (Vertex v = kept; static_cast<int>(x.size()) < n && v < split.vertex_count(); ++v) x.push_back(v);
  }
  const Graph conflict = conflict_graph(split, std::span<const Vertex>(x));
  const int split_max = split.max_degree();
  if (conflict.max_degree() > delta * split_max) {
    throw InternalError("conflict graph degree exceeds delta * max degree");
  }

  SamplerResult result{SpanningSubgraph(g), {}, {}};
  result.coloring = equitable_color(conflict, delta * split_max + 1, {.seed = seed});
  SamplerReport& rep = result.report;
  rep.condition_value = prop25_condition(n, delta, g.max_degree(), eps);
  rep.condition_holds = rep.condition_value < 1.0;
  rep.secondary_condition = prop27_condition(n, delta, eps);
  rep.secondary_holds = rep.secondary_condition < 1.0;
  rep.high_vertices = static_cast<int>(cert.high.size());
  const double mean = static_cast<double>(n) / (delta + 1);
  const double inside_bound = (1.0 + eps) * mean;
  rep.final_bound = (1.0 + 2.0 * eps) * mean;
  rep.max_deviation = -1.0;

  for (int t = 0; t < std::max(1, max_retries); ++t) {
    const SpanningSubgraph hs = sample_threshold_subgraph(split, derive_seed(seed, t));
    std::vector<int> inside;
    inside.reserve(x.size());
    for (Vertex v : x) inside.push_back(hs.degree(v));
    const DegreeProfile px = degree_profile(inside);
    const double excess = px.max_multiplicity - mean;
    rep.retries = t + 1;
    if (rep.max_deviation < -0.5 || excess < rep.max_deviation) {
      rep.max_deviation = excess;
      SpanningSubgraph h(g);
      for (EdgeId e = 0; e < split.edge_count(); ++e) {
        if (hs.contains(e)) h.set(peeled.original_edge[cert.edge_map[e]], true);
      }
      rep.m = degree_profile(h).max_multiplicity;
      result.h = std::move(h);
    }
    if (px.max_multiplicity <= inside_bound) {
      rep.success = true;
      break;
    }
  }
  return result;
}

std::string sampler_report_csv(const SamplerReport& r) {
  std::ostringstream out;
  out << "condition,condition_holds,retries,max_deviation,m,success,secondary_condition,secondary_holds,"
         "high_vertices,bound\n";
  out << r.condition_value << ',' << (r.condition_holds ? "true" : "false") << ',' << r.retries << ','
      << r.max_deviation << ',' << r.m << ',' << (r.success ? "true" : "false") << ','
      << r.secondary_condition << ',' << (r.secondary_holds ? "true" : "false") << ',' << r.high_vertices
      << ',' << r.final_bound << '\n';
  return out.str();
}

}  // namespace irreg
