#include "irreg/cli_app.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <sstream>
#include <thread>

#include "irreg/dense_pipeline.hpp"
#include "irreg/error.hpp"
#include "irreg/fractional_rounder.hpp"
#include "irreg/generators.hpp"
#include "irreg/graph_io.hpp"
#include "irreg/interval_splitter.hpp"
#include "irreg/oracle.hpp"
#include "irreg/strength_bridge.hpp"
#include "irreg/threshold_sampler.hpp"

namespace irreg {

namespace {

struct GenArgs {
  std::string model;
  int n = 0;
  int d = -1;
  int length = 4;
  double p = -1.0;
  std::uint64_t seed = 0;
  std::string out;
};

struct RunArgs {
  std::string algo;
  std::string in;
  double eps = 0.25;
  std::uint64_t seed = 0;
  int retries = -1;
  std::string out_profile;
  std::string out_report;
  std::string out_subgraph;
  std::string z;
  int cap = kDefaultStrengthCap;
  int trials = 1;
  int jobs = 0;
};

struct OracleArgs {
  std::string in;
  std::string check;
  int jobs = 0;
};

struct VerifyArgs {
  std::string in;
  std::string subgraph;
  std::string z;
};

using Annotations = std::vector<std::pair<std::string, std::string>>;

struct RunOutput {
  int code = exit_code::ok;
  std::string summary;
  std::optional<SpanningSubgraph> h;
  Annotations notes;
  std::string report;
};

int default_jobs() {
  if (const char* env = std::getenv("IRREG_JOBS")) {
    const int j = std::atoi(env);
    if (j > 0) return j;
  }
  return 1;
}

std::string fmt(double x, int digits = 3) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

std::string suffixed(const std::string& path, int trial, int trials) {
  return trials > 1 ? path + "." + std::to_string(trial) : path;
}

int gen_command(const GenArgs& a, std::ostream& out) {
  Graph g;
  if (a.model == "regular") {
    if (a.d < 0) throw PreconditionError("--d is required for the regular model");
    g = random_regular(a.n, a.d, a.seed);
  } else if (a.model == "cycle-union") {
    if (a.d >= 0 && a.d != 2) throw PreconditionError("cycle-union graphs are 2-regular");
    g = cycle_union(a.n, a.length);
  } else {
    if (a.d < 0) throw PreconditionError("--d/--delta is required for the er-mindeg model");
    const double p = a.p >= 0.0 ? a.p : (a.n > 1 ? static_cast<double>(a.d) / (a.n - 1) : 0.0);
    g = random_min_degree(a.n, a.d, p, a.seed);
  }
  const std::string text = write_graph(g);
  if (a.out.empty()) {
    out << text;
  } else {
    write_file(a.out, text);
  }
  return exit_code::ok;
}

RunOutput run_algorithm(const Graph& g, const RunArgs& a, std::uint64_t seed) {
  RunOutput r;
  std::ostringstream summary;
  summary << "algo=" << a.algo << " seed=" << seed;
  r.notes.push_back({"algo", a.algo});
  r.notes.push_back({"seed", std::to_string(seed)});
  const int retries = a.retries > 0 ? a.retries : kDefaultSamplerRetries;
  if (a.algo == "threshold") {
    r.h = sample_threshold_subgraph(g, seed);
  } else if (a.algo == "prop24" || a.algo == "prop25") {
    SamplerResult res = a.algo == "prop24" ? run_prop24(g, a.eps, retries, seed)
                                           : run_prop25_26_27(g, a.eps, std::nullopt, retries, seed);
    r.report = sampler_report_csv(res.report);
    r.h = std::move(res.h);
    const double bound = a.algo == "prop24"
                             ? (1.0 + a.eps) * g.vertex_count() / (g.max_degree() + 1.0)
                             : res.report.final_bound;
    summary << " condition=" << fmt(res.report.condition_value, 6)
            << " condition_holds=" << (res.report.condition_holds ? "true" : "false")
            << " retries=" << res.report.retries;
    if (res.report.success) {
      r.notes.push_back({"bound", fmt(bound, 6)});
      summary << " bound=" << fmt(bound);
    } else {
      r.code = exit_code::retries_exhausted;
      summary << " status=retries_exhausted";
    }
  } else if (a.algo == "split-regular" || a.algo == "split-general") {
    DegreeSetOptions opt;
    opt.seed = seed;
    try {
      SplitResult res = a.algo == "split-regular" ? regular_split(g, opt) : general_split(g, opt);
      std::ostringstream rep;
      rep << "k,trivial,max_overlap,bound,restarts,expansions\n"
          << res.group_size << ',' << (res.trivial ? "true" : "false") << ',' << res.max_overlap << ','
          << res.bound << ',' << res.stats.restarts << ',' << res.stats.expansions << '\n';
      r.report = rep.str();
      r.notes.push_back({"bound", std::to_string(res.bound)});
      summary << (res.trivial ? " regime=trivial" : "") << " bound=" << res.bound;
      r.h = std::move(res.h);
    } catch (const BudgetExhausted& e) {
      r.code = exit_code::retries_exhausted;
      summary << " status=solver_budget_exhausted";
    }
  } else if (a.algo == "round") {
    if (a.z.empty()) throw PreconditionError("--z is required for --algo round");
    const FractionalWeights z = read_weights(read_file(a.z));
    r.h = round_weights(g, z);
    const BoundReport b = verify_bound(g, z, *r.h);
    std::ostringstream rep;
    rep << "vertex,deviation\n";
    for (Vertex v = 0; v < g.vertex_count(); ++v) rep << v << ',' << format_rational(b.deviation[v]) << '\n';
    r.report = rep.str();
    r.notes.push_back({"z", a.z});
    summary << " deviations=";
    for (Vertex v = 0; v < g.vertex_count(); ++v) summary << (v ? "," : "") << format_rational(b.deviation[v]);
    summary << " bound_holds=" << (b.holds() ? "true" : "false");
    if (!b.holds()) r.code = exit_code::internal;
  } else if (a.algo == "strength") {
    const IrregularWeighting w = irregularity_strength(g, a.cap);
    StrengthResult res = strength_to_subgraph(g, w);
    r.report = "graph,s,bound_kind,bound,m\n" + strength_csv_row(graph_hash(g), w, res) + "\n";
    r.notes.push_back({"bound", std::to_string(res.bound)});
    summary << " s=" << w.s << " bound_kind=" << to_string(res.which) << " bound=" << res.bound;
    r.h = std::move(res.h);
  } else if (a.algo == "dense") {
    PipelineRun run = run_dense_pipeline(g, a.eps, seed, a.retries > 0 ? a.retries : kPipelineRetries);
    r.report = pipeline_report_csv(run);
    summary << " attempts=" << run.attempts << " desk_mode=" << (run.lemma_enforced ? "false" : "true");
    if (run.status == PipelineStatus::ok) {
      summary << " m_B=" << run.final->m_b << " cap_B=" << step2_cap(run.params) << " m_S=" << run.final->m_s
              << " formula_bound=" << fmt(run.final->bound);
      r.notes.push_back({"bound_b", std::to_string(step2_cap(run.params))});
      r.h = std::move(run.final->h);
    } else {
      r.code = run.status == PipelineStatus::regime_failure ? exit_code::regime_failure
                                                           : exit_code::retries_exhausted;
      summary << " status=" << (r.code == exit_code::regime_failure ? "regime_failure" : "retries_exhausted")
              << " reason=\"" << run.failure << "\"";
    }
  } else {
    throw PreconditionError("unknown algorithm " + a.algo);
  }
  if (r.h) {
    const DegreeProfile p = degree_profile(*r.h);
    summary << " m=" << p.max_multiplicity << " edges=" << r.h->edge_count();
  }
  r.summary = summary.str();
  return r;
}

int run_command(const RunArgs& a, std::ostream& out) {
  const Graph g = read_graph(read_file(a.in));
  const int trials = std::max(1, a.trials);
  const int jobs = std::max(1, std::min(trials, a.jobs > 0 ? a.jobs : default_jobs()));
  std::vector<std::optional<RunOutput>> results(trials);
  std::vector<std::exception_ptr> errors(trials);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int t = next++; t < trials; t = next++) {
      try {
        results[t] = run_algorithm(g, a, a.seed + static_cast<std::uint64_t>(t));
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  int code = exit_code::ok;
  for (int t = 0; t < trials; ++t) {
    if (errors[t]) std::rethrow_exception(errors[t]);
    RunOutput& r = *results[t];
    out << r.summary << '\n';
    if (r.h) {
      if (!a.out_profile.empty()) write_file(suffixed(a.out_profile, t, trials), profile_csv(degree_profile(*r.h)));
      if (!a.out_subgraph.empty()) write_file(suffixed(a.out_subgraph, t, trials), write_subgraph(*r.h, r.notes));
    }
    if (!a.out_report.empty() && !r.report.empty()) write_file(suffixed(a.out_report, t, trials), r.report);
    if (code == exit_code::ok) code = r.code;
  }
  return code;
}

int oracle_command(const OracleArgs& a, std::ostream& out) {
  const Graph g = read_graph(read_file(a.in));
  OracleOptions opt;
  opt.threads = a.jobs > 0 ? a.jobs : default_jobs();
  if (a.check == "min-m") {
    const MinMResult r = min_m_bruteforce(g, opt);
    out << "min_m=" << r.min_m << " witness=";
    for (std::size_t i = 0; i < r.witness.size(); ++i) out << (i ? "," : "") << r.witness[i];
    out << '\n';
  } else if (a.check == "conj11") {
    const Conjecture11Result r = check_conjecture11(g, opt);
    out << "deviation=" << format_rational(r.best_deviation) << " feasible=" << (r.feasible ? "true" : "false")
        << '\n';
  } else {
    const Conjecture12Result r = check_conjecture12(g, opt);
    out << "min_m=" << r.min_m << " bound=" << fmt(r.bound.get_d()) << " holds=" << (r.holds ? "true" : "false")
        << '\n';
    if (!r.holds) out << "COUNTEREXAMPLE graph=" << graph_hash(g) << '\n';
  }
  return exit_code::ok;
}

int verify_command(const VerifyArgs& a, std::ostream& out) {
  const Graph g = read_graph(read_file(a.in));
  const SubgraphFile f = read_subgraph(read_file(a.subgraph));
  bool ok = true;
  std::ostringstream why;
  if (f.graph_hash != graph_hash(g)) {
    ok = false;
    why << " hash_mismatch";
  }
  for (EdgeId e : f.edges) {
    if (e < 0 || e >= g.edge_count()) throw ParseError("edge index " + std::to_string(e) + " out of range");
  }
  const SpanningSubgraph h = SpanningSubgraph::from_edges(g, f.edges);
  const DegreeProfile p = degree_profile(h);
  out << profile_csv(p);
  std::string algo;
  std::string z_path = a.z;
  for (const auto& [key, value] : f.annotations) {
    if (key == "algo") algo = value;
    if (key == "z" && z_path.empty()) z_path = value;
    if (key == "bound" && p.max_multiplicity > std::stod(value)) {
      ok = false;
      why << " m_above_bound";
    }
  }
  if (algo == "split-regular" || algo == "split-general") {
    const SplitResult plan = algo == "split-regular" ? plan_regular_split(g) : plan_general_split(g);
    if (!plan.trivial) {
      for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (!plan.spec.allows(v, h.degree(v))) {
          ok = false;
          why << " degree_outside_set@" << v;
          break;
        }
      }
    }
  }
  if (!z_path.empty()) {
    const FractionalWeights z = read_weights(read_file(z_path));
    if (!verify_bound(g, z, h).holds()) {
      ok = false;
      why << " rounding_bound_violated";
    }
  }
  out << "verify: m=" << p.max_multiplicity << " holds=" << (ok ? "true" : "false") << why.str() << '\n';
  return ok ? exit_code::ok : exit_code::verify_failed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spanning subgraphs with few repeated degrees"};
  app.name("irreg");
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "INI/TOML file; keys go under [gen], [run], [oracle] or [verify]");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a graph as an edge list");
  gen_cmd->add_option("--model", gen.model, "Graph model")
      ->required()
      ->check(CLI::IsMember({"regular", "cycle-union", "er-mindeg"}));
  gen_cmd->add_option("--n", gen.n, "Number of vertices")->required()->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--d,--delta", gen.d, "Degree (regular) or minimum degree (er-mindeg)");
  gen_cmd->add_option("--length", gen.length, "Cycle length for cycle-union")->check(CLI::Range(3, 1 << 20));
  gen_cmd->add_option("--p", gen.p, "Edge probability for er-mindeg")->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("--out", gen.out, "Output file (stdout when absent)");

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run a construction on a graph");
  run_cmd->add_option("--algo", run.algo, "Construction")
      ->required()
      ->check(CLI::IsMember(
          {"threshold", "prop24", "prop25", "split-regular", "split-general", "round", "strength", "dense"}));
  run_cmd->add_option("--in", run.in, "Graph file")->required();
  run_cmd->add_option("--eps", run.eps, "Accuracy parameter");
  run_cmd->add_option("--seed", run.seed, "Random seed");
  run_cmd->add_option("--retries", run.retries, "Sampling retries or pipeline resamples");
  run_cmd->add_option("--out-profile", run.out_profile, "Degree profile CSV");
  run_cmd->add_option("--out-report", run.out_report, "Run report CSV");
  run_cmd->add_option("--out-subgraph", run.out_subgraph, "Store H as an edge index list");
  run_cmd->add_option("--z", run.z, "Fractional weights, one p/q per edge (round)");
  run_cmd->add_option("--cap", run.cap, "Largest strength tried (strength)")->check(CLI::PositiveNumber);
  run_cmd->add_option("--trials", run.trials, "Independent seeds seed, seed+1, ...")->check(CLI::PositiveNumber);
  run_cmd->add_option("--jobs", run.jobs, "Worker threads (default IRREG_JOBS or 1)")->check(CLI::PositiveNumber);

  OracleArgs orc;
  auto* orc_cmd = app.add_subcommand("oracle", "Exhaustive checks on a small graph");
  orc_cmd->add_option("--in", orc.in, "Graph file")->required();
  orc_cmd->add_option("--check", orc.check, "Which check")
      ->required()
      ->check(CLI::IsMember({"min-m", "conj11", "conj12"}));
  orc_cmd->add_option("--jobs", orc.jobs, "Worker threads")->check(CLI::PositiveNumber);

  VerifyArgs ver;
  auto* ver_cmd = app.add_subcommand("verify", "Recheck a stored subgraph");
  ver_cmd->add_option("--in", ver.in, "Graph file")->required();
  ver_cmd->add_option("--subgraph", ver.subgraph, "Subgraph file")->required();
  ver_cmd->add_option("--z", ver.z, "Fractional weights to check the rounding bound against");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_code::ok;
  } catch (const CLI::ParseError& e) {
    err << "irreg: " << e.what() << '\n';
    return exit_code::usage;
  }

  try {
    if (gen_cmd->parsed()) return gen_command(gen, out);
    if (run_cmd->parsed()) return run_command(run, out);
    if (orc_cmd->parsed()) return oracle_command(orc, out);
    return verify_command(ver, out);
  } catch (const ParseError& e) {
    err << "irreg: parse error: " << e.what() << '\n';
    return exit_code::parse;
  } catch (const IoError& e) {
    err << "irreg: " << e.what() << '\n';
    return exit_code::io;
  } catch (const CapExceeded& e) {
    err << "irreg: " << e.what() << '\n';
    return exit_code::cap_exceeded;
  } catch (const BudgetExhausted& e) {
    err << "irreg: " << e.what() << '\n';
    return exit_code::retries_exhausted;
  } catch (const PreconditionError& e) {
    err << "irreg: " << e.what() << '\n';
    return exit_code::usage;
  } catch (const std::exception& e) {
    err << "irreg: internal error: " << e.what() << '\n';
    return exit_code::internal;
  }
}

}  // namespace irreg
