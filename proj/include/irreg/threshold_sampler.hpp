#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "irreg/equitable_coloring.hpp"
#include "irreg/graph.hpp"

namespace irreg {

constexpr int kDefaultSamplerRetries = 200;

/// Independent uniform [0,1] vertex weights.
struct ThresholdAssignment {
  std::vector<double> x;
  std::uint64_t seed = 0;
};

ThresholdAssignment draw_threshold_weights(int vertex_count, std::uint64_t seed);

/// Keeps edge uv iff x(u) + x(v) > 1. A vertex of degree d then has each
/// degree 0..d with probability exactly 1/(d+1).
SpanningSubgraph threshold_subgraph(const Graph& g, const ThresholdAssignment& weights);
SpanningSubgraph sample_threshold_subgraph(const Graph& g, std::uint64_t seed);

struct PeeledGraph {
  Graph graph;
  std::vector<EdgeId> original_edge;  // peeled edge id -> edge id in the input
};

/// Deletes, in edge order, every edge whose two ends both have degree above
/// `delta` at that moment. Afterwards every edge touches a vertex of degree
/// exactly delta (when delta is the minimum degree) and the vertices of
/// degree above delta are independent. One pass suffices since degrees only
/// fall and never below delta.
PeeledGraph peel_high_degree_edges(const Graph& g, int delta);

/// Vertex splitting of a peeled graph: every vertex of degree above D is
/// replaced by floor(deg/delta) copies that share out its neighbors in
/// chunks of delta, the short tail chunk merged into the last one.
struct SplitCertificate {
  Graph split;
  std::vector<Vertex> vertex_map;   // split vertex -> peeled vertex
  std::vector<EdgeId> edge_map;     // split edge -> peeled edge (bijection)
  std::vector<Vertex> low;          // A: degree exactly delta
  std::vector<Vertex> middle;       // B: degree in (delta, D]
  std::vector<Vertex> high;         // C: degree above D
  std::vector<std::vector<Vertex>> copies;  // per high vertex, its split vertices
  int delta = 0;
  double cap = 0.0;                 // D
};

/// Throws PreconditionError if D < delta, InternalError if a neighbor set
/// cannot be cut into parts of size [delta, 2*delta].
SplitCertificate split_high_degree_vertices(const Graph& peeled, int delta, double cap);

/// Checks bijection, part sizes and the A/B/C classification.
bool check_certificate(const Graph& peeled, const SplitCertificate& cert);

/// Evaluates the sufficient conditions for the concentration bounds.
double prop24_condition(long long n, int d, double eps);                  // regular case
double prop25_condition(long long n, int delta, int max_degree, double eps);
double prop27_condition(long long n, int delta, double eps);              // with D = delta(delta+1)/eps

struct SamplerReport {
  double condition_value = 0.0;   // left-hand side of the sufficient condition
  bool condition_holds = false;
  int retries = 0;                // samples drawn
  double max_deviation = 0.0;     // best sample's worst |m(H,k) - target| (prop24) or excess (prop25)
  int m = 0;                      // m(H) of the returned subgraph
  bool success = false;
  // Chain-only fields.
  double secondary_condition = 0.0;  // (2.3) when the split path ran
  bool secondary_holds = false;
  int high_vertices = 0;
  double final_bound = 0.0;          // (1+2eps) n/(delta+1) or (1+eps) n/(d+1)
};

struct SamplerResult {
  SpanningSubgraph h;
  SamplerReport report;
  EquitableColoring coloring;
};

/// Regular graphs: color G^(2) equitably with d^2+1 classes, then draw
/// threshold subgraphs until every |m(H,k) - n/(d+1)| <= eps n/(d+1).
/// On exhaustion the best sample is returned with success = false.
SamplerResult run_prop24(const Graph& g, double eps, int max_retries, std::uint64_t seed);

/// General graphs: peel, split when the maximum degree exceeds
/// D = delta(delta+1)/eps, color the conflict graph on X, and draw until no
/// degree occurs more than (1+eps) n/(delta+1) times inside X; edges are
/// mapped back through the split bijection. `target_set` lists split-graph
/// vertices; by default A and B padded with split copies up to n.
SamplerResult run_prop25_26_27(const Graph& g, double eps, std::optional<std::span<const Vertex>> target_set,
                               int max_retries, std::uint64_t seed);

std::string sampler_report_csv(const SamplerReport& report);

}  // namespace irreg
