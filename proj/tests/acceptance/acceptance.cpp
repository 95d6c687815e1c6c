// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <boost/math/special_functions/gamma.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "irreg/catalog.hpp"
#include "irreg/cli_app.hpp"
#include "irreg/dense_pipeline.hpp"
#include "irreg/error.hpp"
#include "irreg/fractional_rounder.hpp"
#include "irreg/generators.hpp"
#include "irreg/graph_io.hpp"
#include "irreg/interval_splitter.hpp"
#include "irreg/oracle.hpp"
#include "irreg/strength_bridge.hpp"
#include "irreg/threshold_sampler.hpp"

namespace fs = std::filesystem;
using namespace irreg;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "irreg_acceptance";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

struct CliResult {
  int code;
  std::string out;
};

CliResult cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str() + err.str()};
}

int max_mult(const SpanningSubgraph& h) {
  std::map<int, int> count;
  int best = 0;
  for (Vertex v = 0; v < h.parent().vertex_count(); ++v) best = std::max(best, ++count[h.degree(v)]);
  return best;
}

// 1. Threshold law on K_{1,9}.
Outcome star_law() {
  const Graph star = star_graph(9);
  Vertex center = 0;
  for (Vertex v = 0; v < star.vertex_count(); ++v) {
    if (star.degree(v) == 9) center = v;
  }
  const int trials = 100000;
  std::vector<int> seen(10, 0);
  for (int t = 0; t < trials; ++t) ++seen[sample_threshold_subgraph(star, t).degree(center)];
  double chi2 = 0.0;
  double worst = 0.0;
  for (int c : seen) {
    const double f = static_cast<double>(c) / trials;
    worst = std::max(worst, std::abs(f - 0.1));
    chi2 += (c - trials / 10.0) * (c - trials / 10.0) / (trials / 10.0);
  }
  const double p = boost::math::gamma_q(4.5, chi2 / 2.0);
  std::ostringstream d;
  d << "max |freq-0.1|=" << std::setprecision(4) << worst << " chi2=" << chi2 << " p=" << p;
  return {worst <= 0.01 && p > 1e-3, d.str()};
}

// 2. prop24 on a random 6-regular graph with n = 3000, through the command line.
Outcome prop24_desk() {
  const Graph g = random_regular(3000, 6, 2024);
  const std::string gp = (work_dir() / "r6.txt").string();
  const std::string hp = (work_dir() / "r6.h").string();
  write_file(gp, write_graph(g));
  const CliResult r = cli({"run", "--algo", "prop24", "--in", gp, "--eps", "0.25", "--retries", "200", "--seed", "1",
                           "--out-subgraph", hp});
  bool ok = r.code == exit_code::ok;
  // Recheck every count from the stored subgraph.
  const SubgraphFile f = read_subgraph(read_file(hp));
  const SpanningSubgraph h = SpanningSubgraph::from_edges(g, f.edges);
  const double target = 3000.0 / 7.0;
  std::vector<int> count(7, 0);
  for (Vertex v = 0; v < 3000; ++v) ++count[h.degree(v)];
  double worst = 0.0;
  for (int c : count) worst = std::max(worst, std::abs(c - target) / target);
  ok = ok && worst <= 0.25 && cli({"verify", "--in", gp, "--subgraph", hp}).code == 0;
  std::ostringstream d;
  std::string summary = r.out;
  if (!summary.empty() && summary.back() == '\n') summary.pop_back();
  d << "worst relative deviation=" << std::setprecision(3) << worst << " [" << summary << "]";
  return {ok, d.str()};
}

// Allowed degree sets recomputed from the formulas, without the library's plan.
DegreeSpec regular_sets(const Graph& g) {
  const int n = g.vertex_count();
  const int d = g.max_degree();
  const int k = (d + 3) / 4;
  const int part = (n + k - 1) / k;
  DegreeSpec s{std::vector<int>(n), std::vector<int>(n)};
  for (Vertex v = 0; v < n; ++v) {
    const int i = v / part + 1;
    s.a[v] = (d + 1) / 2 - i;
    s.b[v] = (d + 1) / 2 + k - i;
  }
  return s;
}

DegreeSpec general_sets(const Graph& g) {
  const int n = g.vertex_count();
  const int k = (g.min_degree() + 3) / 4;
  std::vector<std::pair<int, Vertex>> order;
  for (Vertex v = 0; v < n; ++v) order.push_back({-g.degree(v), v});
  std::sort(order.begin(), order.end());
  DegreeSpec s{std::vector<int>(n), std::vector<int>(n)};
  for (int pos = 0; pos < n; ++pos) {
    const Vertex v = order[pos].second;
    const int j = pos % k + 1;
    s.a[v] = (g.degree(v) + 1) / 2 - j;
    s.b[v] = (g.degree(v) + 1) / 2 + k - j;
  }
  return s;
}

bool members(const SpanningSubgraph& h, const DegreeSpec& s) {
  for (Vertex v = 0; v < h.parent().vertex_count(); ++v) {
    const int x = h.degree(v);
    if (x != s.a[v] && x != s.a[v] + 1 && x != s.b[v] && x != s.b[v] + 1) return false;
  }
  return true;
}

// 3. Regular interval split.
Outcome regular_splits() {
  std::ostringstream d;
  bool ok = true;
  for (auto [deg, n] : std::vector<std::pair<int, int>>{{10, 200}, {12, 300}, {20, 400}}) {
    int good = 0;
    int worst_m = 0;
    const int k = (deg + 3) / 4;
    const int bound = 2 * ((n + k - 1) / k);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const Graph g = random_regular(n, deg, seed);
      try {
        DegreeSetOptions opt;
        opt.seed = seed;
        const SplitResult r = regular_split(g, opt);
        const int m = max_mult(r.h);
        worst_m = std::max(worst_m, m);
        if (members(r.h, regular_sets(g)) && m <= bound) ++good;
      } catch (const BudgetExhausted&) {
      }
    }
    ok = ok && good >= 9;
    d << "(d=" << deg << ",n=" << n << "): " << good << "/10, max m=" << worst_m << "<=" << bound << "; ";
  }
  return {ok, d.str()};
}

// 4. General interval split on non-regular graphs of minimum degree delta.
Outcome general_splits() {
  std::ostringstream d;
  bool ok = true;
  const int n = 300;
  for (int delta : {18, 24}) {
    int good = 0;
    int worst_m = 0;
    const int k = (delta + 3) / 4;
    const int bound = 4 * ((n + k - 1) / k);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const Graph g = random_min_degree(n, delta, static_cast<double>(delta) / (n - 1), seed);
      if (g.min_degree() != delta || g.is_regular()) continue;
      try {
        DegreeSetOptions opt;
        opt.seed = seed;
        const SplitResult r = general_split(g, opt);
        const int m = max_mult(r.h);
        worst_m = std::max(worst_m, m);
        if (members(r.h, general_sets(g)) && m <= bound) ++good;
      } catch (const BudgetExhausted&) {
      }
    }
    ok = ok && good >= 9;
    d << "(delta=" << delta << ",n=" << n << "): " << good << "/10, max m=" << worst_m << "<=" << bound << "; ";
  }
  return {ok, d.str()};
}

// 5. Rounding bound, exact rational check.
Outcome rounding_fuzz() {
  std::mt19937_64 rng(20240501);
  int violations = 0;
  int instances = 0;
  int tight = 0;
  for (; instances < 1000; ++instances) {
    const int n = 2 + static_cast<int>(rng() % 29);
    const double p = 0.05 + 0.5 * std::uniform_real_distribution<double>(0, 1)(rng);
    const Graph g = random_min_degree(n, 1, p, rng());
    FractionalWeights z(g.edge_count());
    for (Rational& q : z) {
      const long den = 1 + static_cast<long>(rng() % 16);
      q = Rational(static_cast<long>(rng() % (den + 1)), den);
      q.canonicalize();
    }
    const SpanningSubgraph h = round_weights(g, z);
    std::vector<Rational> diff(n, 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const Rational x = h.contains(e) ? 1 : 0;
      diff[g.edge(e).u] += x - z[e];
      diff[g.edge(e).v] += x - z[e];
    }
    for (const Rational& dv : diff) {
      if (!(dv > -1 && dv <= 1)) ++violations;
      if (dv == 1) ++tight;
    }
  }
  const Graph c3 = cycle_graph(3);
  const FractionalWeights half(3, Rational(1, 2));
  const SpanningSubgraph h3 = round_weights(c3, half);
  bool c3_ok = true;
  for (Vertex v = 0; v < 3; ++v) c3_ok = c3_ok && h3.degree(v) == 2;  // 2 = 1 + 1
  std::ostringstream d;
  d << instances << " instances, " << violations << " violations, " << tight
    << " vertices at the upper bound; C3 halves -> sum x = sum z + 1 at every vertex: " << (c3_ok ? "yes" : "no");
  return {violations == 0 && c3_ok, d.str()};
}

// 6. Strength bounds over the catalog.
Outcome strength_catalog() {
  int graphs = 0;
  int violations = 0;
  std::map<std::string, int> per_case;
  std::map<std::string, int> worst_gap;
  for (int m = 4; m <= 9; ++m) {
    for (const Graph& g : connected_graphs_by_edges(m)) {
      ++graphs;
      const IrregularWeighting w = irregularity_strength(g, 12);
      if (!is_irregular(g, w)) ++violations;
      const StrengthResult r = strength_to_subgraph(g, w);
      const bool bip = g.is_bipartite();
      const bool reg = g.is_regular();
      const int bound = 2 * w.s - (bip ? 1 : 0) - (reg ? 2 : 0);
      const int achieved = max_mult(r.h);
      if (achieved > bound || r.bound != bound) ++violations;
      const std::string name = to_string(r.which);
      ++per_case[name];
      worst_gap[name] = std::max(worst_gap[name], achieved - bound);
    }
  }
  std::ostringstream d;
  d << graphs << " graphs, " << violations << " violations;";
  for (const auto& [name, count] : per_case) d << ' ' << name << ':' << count << " (max m-bound " << worst_gap[name] << ')';
  return {violations == 0 && graphs == 5 + 12 + 30 + 79 + 227 + 710, d.str()};
}

// 7. Conjecture scan, two-C4 tightness and C3 parity.
Outcome conjecture_scan() {
  int graphs = 0;
  int counterexamples = 0;
  for (int n = 1; n <= 6; ++n) {
    for (const Graph& g : connected_graphs_by_order(n)) {
      ++graphs;
      const Conjecture12Result r = check_conjecture12(g);
      const Rational bound = Rational(n, g.min_degree() + 1) + 2;
      if (!(Rational(r.min_m) <= bound) || r.holds != (Rational(r.min_m) <= bound)) ++counterexamples;
      if (max_mult(SpanningSubgraph::from_edges(g, r.witness)) != r.min_m) ++counterexamples;
    }
  }
  const Graph two = cycle_union(8, 4);
  const MinMResult tm = min_m_bruteforce(two);
  const bool tight = tm.min_m == 4 && Rational(4) > Rational(8, 3) + 1;
  const Graph c3 = cycle_graph(3);
  bool flat_possible = false;
  for (std::uint32_t mask = 0; mask < 8; ++mask) {
    std::vector<EdgeId> ids;
    for (EdgeId e = 0; e < 3; ++e) {
      if (mask >> e & 1U) ids.push_back(e);
    }
    flat_possible |= max_mult(SpanningSubgraph::from_edges(c3, ids)) == 1;
  }
  const bool parity = parity_lower_bound(3, 2) && !flat_possible;
  std::ostringstream d;
  d << graphs << " connected graphs (n<=6), " << counterexamples << " counterexamples; two C4: min m=" << tm.min_m
    << " > 11/3: " << (tight ? "yes" : "no") << "; C3 flat profile infeasible: " << (parity ? "yes" : "no");
  return {graphs == 143 && counterexamples == 0 && tight && parity, d.str()};
}

// 8. Dense pipeline at n = 2000, delta = 800, eps = 0.24.
Outcome dense_pipeline() {
  const Graph g = random_min_degree(2000, 800, 0.42, 1);
  const PipelineRun run = run_dense_pipeline(g, 0.24, 1, kPipelineRetries);
  std::ostringstream d;
  d << "delta=" << g.min_degree() << " s*=" << run.params.s_star << " k=" << run.params.k
    << " attempts=" << run.attempts;
  if (run.status != PipelineStatus::ok) {
    d << " status=" << (run.status == PipelineStatus::regime_failure ? "regime_failure" : "retries_exhausted") << " ("
      << run.failure << ")";
    return {false, d.str()};
  }
  // Replay the accepted attempt stage by stage and check each invariant here.
  PipelineState st = partition_and_label(g, run.params, run.seed);
  const int cap = step2_cap(run.params);
  bool ok = step1_step2(st).ok;
  std::map<int, int> bcount;
  int b_mult = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!st.in_s[v]) b_mult = std::max(b_mult, ++bcount[st.weight[v]]);
  }
  auto conserved = [&] {
    std::vector<int> w(g.vertex_count(), 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      w[g.edge(e).u] += st.quarter[e];
      w[g.edge(e).v] += st.quarter[e];
    }
    return w == st.weight;
  };
  bool conservation = conserved();
  build_conflict_sets(st);
  conservation = conservation && conserved();
  const Step3Report s3 = step3_quarter_weights(st);
  conservation = conservation && conserved();
  bool lambda = s3.lambda_contained;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (st.in_s[v] && !(st.weight[v] == 12 * st.window[v] || st.weight[v] == 12 * st.window[v] + 1)) lambda = false;
  }
  const std::vector<int> before = st.weight;
  const FinalizeReport fin = finalize(st);
  conservation = conservation && conserved();
  bool deviations = true;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!st.in_s[v]) continue;
    const int dq = 4 * fin.h.degree(v) - before[v];  // quarters
    if (dq <= -4 || dq > 4) deviations = false;
  }
  const bool same_h = fin.h == run.final->h;
  ok = ok && b_mult <= cap && lambda && conservation && deviations && same_h && fin.b_frozen;
  d << " m_B=" << b_mult << "<=cap " << cap << " Lambda=" << (lambda ? "ok" : "broken")
    << " conservation=" << (conservation ? "ok" : "broken") << " deviations in (-1,1]=" << (deviations ? "yes" : "no")
    << " B frozen=" << (fin.b_frozen ? "yes" : "no") << " | measured m(H)=" << fin.m << " vs formula bound "
    << std::fixed << std::setprecision(0) << fin.bound << " (asymptotic, not asserted)";
  return {ok, d.str()};
}

// 9. Every construction against the oracle, every stored output through verify.
Outcome cross_module() {
  std::vector<Graph> instances;
  for (int m = 3; m <= 7; ++m) {
    for (const Graph& g : connected_graphs_by_edges(m)) instances.push_back(g);
  }
  instances.push_back(cycle_union(8, 4));
  instances.push_back(complete_graph(4));
  instances.push_back(random_regular(8, 3, 1));
  instances.push_back(random_regular(10, 3, 2));
  instances.push_back(random_regular(10, 4, 3));
  instances.push_back(random_regular(12, 4, 4));
  instances.push_back(random_min_degree(12, 3, 0.2, 5));

  int runs = 0;
  int below_oracle = 0;
  int verify_failures = 0;
  int errors = 0;
  std::mt19937_64 rng(99);
  int idx = 0;
  for (const Graph& g : instances) {
    if (g.edge_count() > kOracleEdgeCap) continue;
    const int oracle = min_m_bruteforce(g).min_m;
    const std::string base = (work_dir() / ("x" + std::to_string(idx++))).string();
    write_file(base + ".g", write_graph(g));
    FractionalWeights z(g.edge_count());
    std::string ztext;
    for (Rational& q : z) {
      const long den = 1 + static_cast<long>(rng() % 16);
      q = Rational(static_cast<long>(rng() % (den + 1)), den);
      q.canonicalize();
      ztext += format_rational(q) + "\n";
    }
    write_file(base + ".z", ztext);

    std::vector<std::vector<std::string>> algos{{"threshold"}, {"prop25", "--eps", "0.3", "--retries", "20"},
                                                {"round", "--z", base + ".z"}};
    if (g.is_regular()) {
      algos.push_back({"prop24", "--eps", "0.3", "--retries", "20"});
      algos.push_back({"split-regular"});
    }
    algos.push_back({"split-general"});
    if (g.edge_count() <= kMaxStrengthEdges && g.vertex_count() >= 3) algos.push_back({"strength", "--cap", "12"});

    for (const auto& algo : algos) {
      const std::string hp = base + "." + algo[0] + ".h";
      std::vector<std::string> args{"run", "--algo", algo[0], "--in", base + ".g", "--seed", "3", "--out-subgraph", hp};
      args.insert(args.end(), algo.begin() + 1, algo.end());
      const CliResult r = cli(args);
      if (r.code != exit_code::ok && r.code != exit_code::retries_exhausted) {
        ++errors;
        std::cerr << "  " << algo[0] << " on instance " << idx - 1 << ": exit " << r.code << ": " << r.out;
        continue;
      }
      ++runs;
      const SpanningSubgraph h = SpanningSubgraph::from_edges(g, read_subgraph(read_file(hp)).edges);
      if (max_mult(h) < oracle) ++below_oracle;
      if (cli({"verify", "--in", base + ".g", "--subgraph", hp}).code != exit_code::ok) ++verify_failures;
    }
  }
  std::ostringstream d;
  d << instances.size() << " instances, " << runs << " stored outputs, " << below_oracle << " below the oracle minimum, "
    << verify_failures << " verify failures, " << errors << " run errors (dense needs more than "
    << kOracleEdgeCap << " edges and is not covered)";
  return {below_oracle == 0 && verify_failures == 0 && errors == 0, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 threshold law on K_{1,9}", star_law},
      {"2 prop24 on 6-regular n=3000", prop24_desk},
      {"3 regular split bound", regular_splits},
      {"4 general split bound", general_splits},
      {"5 rounding bound fuzz", rounding_fuzz},
      {"6 strength bounds on catalog", strength_catalog},
      {"7 conjecture scan n<=6", conjecture_scan},
      {"8 dense pipeline n=2000", dense_pipeline},
      {"9 cross-module consistency", cross_module},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << name << " (" << std::fixed << std::setprecision(1)
              << secs << " s): " << o.detail << std::endl;
    std::cout.unsetf(std::ios::fixed);
    if (!o.pass) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
