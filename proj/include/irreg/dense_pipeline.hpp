#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "irreg/graph.hpp"

namespace irreg {

struct PipelineParams {
  long long n = 0;
  int delta = 0;
  double eps = 0.0;
  int s_star = 0;
  int k = 0;
  int width = 0;     // floor(sqrt(delta))
  int b_blocks = 0;  // delta - s*
  double ln_n = 0.0;
  double lnln_n = 0.0;
  bool regime_ok = false;  // delta >= ln^{2/eps} n (ln ln n)^{1/eps}
};

/// s* is the smallest value in [floor(delta^{1/2+eps}), that + sqrt(delta)]
/// with delta - s* divisible by floor(sqrt(delta)); k = round(delta^{1/2-eps} / ln ln n),
/// at least 1. Throws PreconditionError unless eps is in (0, 1/4), n >= 16 and
/// delta >= 4; InternalError if no s* qualifies.
PipelineParams choose_parameters(long long n, int delta, double eps);

/// round(delta^{1/2-eps} / lnln_n), at least 1.
int choose_k(int delta, double eps, double lnln_n);

/// Target weight function for B vertices.
double h_b(const PipelineParams& p, int degree, int i);
/// Largest allowed multiplicity of one weight among B vertices after Step 2.
int step2_cap(const PipelineParams& p);
/// floor(2016 n ln n ln ln n / delta^{1+eps}) + 1.
double step3_bound(const PipelineParams& p);
/// Unclamped label probabilities.
double active_probability(const PipelineParams& p, int i);
double removable_probability(const PipelineParams& p, int degree);

/// Range of weights a vertex of S_i can end with.
struct WeightInterval {
  double lo = 0.0;
  double hi = 0.0;
};
WeightInterval s_interval(const PipelineParams& p, int degree, int i);

struct PipelineState {
  const Graph* graph = nullptr;
  PipelineParams params;
  std::uint64_t seed = 0;
  std::vector<double> x;       // X_v
  std::vector<char> in_s;
  std::vector<int> block;      // i of B_i or j of S_j
  std::vector<char> active;    // per edge, S-B edges only
  std::vector<char> removable;
  std::vector<int> quarter;    // edge weight in quarters, 0..4
  std::vector<int> weight;     // vertex weight in quarters
  int active_clamps = 0;       // S blocks whose active probability left [0,1]
  int removable_clamps = 0;    // B vertices whose removable probability exceeded 1
  std::vector<int> reductions;          // per B vertex, edges turned off in Step 2
  std::vector<int> b_weight_after_step2;
  std::vector<std::vector<Vertex>> conflicts;  // L(v), empty outside S
  std::vector<int> window;     // b with J = {12b, ..., 12b+11} quarters; -1 if none
  std::vector<char> processed;

  bool desk_mode() const { return active_clamps > 0 || removable_clamps > 0; }
  std::vector<Vertex> s_vertices() const;
  std::vector<Vertex> b_vertices() const;
};

/// Places v in B_i or S_j by X_v and labels every S-B edge active and
/// removable independently. `x` replaces the drawn X_v when given.
PipelineState partition_and_label(const Graph& g, const PipelineParams& p, std::uint64_t seed,
                                  std::optional<std::span<const double>> x = std::nullopt);

struct Lemma51Report {
  std::array<bool, 5> holds{};
  std::array<int, 5> violations{};  // offending vertices (or windows for item i)
  bool all() const { return holds[0] && holds[1] && holds[2] && holds[3] && holds[4]; }
};

Lemma51Report verify_lemma51(const PipelineState& state);

struct Step2Report {
  bool ok = false;
  bool exact_targets = false;   // every B vertex reached floor(h_B)
  bool bucket_shift = false;    // the bucket shift was used for the spreading pass
  int target_misses = 0;
  int cap = 0;
  int b_multiplicity = 0;
  int max_reduction = 0;
  double reduction_allowance = 0.0;  // 27 sqrt(delta) ln n at the smallest degree
  std::string failure;
};

/// Step 1 weights, then Step 2: each B vertex is turned down to floor(h_B) and
/// the weights are spread so no value is held by more than step2_cap B
/// vertices, only ever switching off active and removable S-B edges. When a
/// clamp fired, out-of-reach targets are recorded as misses and the spreading
/// falls back to an earliest-deadline sweep over [weight - budget, weight].
Step2Report step1_step2(PipelineState& state);

struct ConflictReport {
  double mean_size = 0.0;
  double mean_bound = 0.0;  // mean of 42 n deg ln n / (k delta^{1+eps})
  int max_size = 0;
};

ConflictReport build_conflict_sets(PipelineState& state);

struct Step3Report {
  bool ok = false;
  int processed = 0;
  int short_progressions = 0;  // |P| < 34
  int unanchored = 0;          // no 12-window fits inside P
  int max_shared = 0;          // most earlier conflicting vertices sharing a chosen window
  bool lambda_contained = true;
  bool conserved = true;
  bool quarters_in_range = true;
};

Step3Report step3_quarter_weights(PipelineState& state);

struct FinalizeReport {
  SpanningSubgraph h;
  bool deviations_ok = false;        // every S vertex within (-1, +1]
  bool b_frozen = false;
  bool collisions_explained = false; // equal S weights imply a conflict and a shared window
  int m = 0;
  int m_b = 0;
  int m_s = 0;
  double bound = 0.0;
};

FinalizeReport finalize(PipelineState& state);

/// Every vertex weight equals the sum of its edge quarters.
bool weights_conserved(const PipelineState& state);

enum class PipelineStatus { ok, retries_exhausted, regime_failure };

struct PipelineRun {
  PipelineStatus status = PipelineStatus::retries_exhausted;
  int attempts = 0;
  std::uint64_t seed = 0;      // seed of the accepted (or last) attempt
  PipelineParams params;
  Lemma51Report lemma;
  bool lemma_enforced = false;  // false when a clamp downgraded the checks
  int active_clamps = 0;
  int removable_clamps = 0;
  Step2Report step2;
  ConflictReport conflicts;
  Step3Report step3;
  std::optional<FinalizeReport> final;
  std::string failure;
};

constexpr int kPipelineRetries = 20;

PipelineRun run_dense_pipeline(const Graph& g, double eps, std::uint64_t seed, int max_attempts = kPipelineRetries);

std::string pipeline_report_csv(const PipelineRun& run);

}  // namespace irreg
