// Command-line front end: validate situation files, run a full conflict
// analysis, construct a resolution strategy, or sweep the threshold
// parameter. Exit codes: 0 success, 1 domain or usage error, 2 I/O error,
// 3 resolution gave up before reaching the requested conflict level.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ifca/error.hpp"
#include "ifca/io.hpp"
#include "ifca/measures.hpp"
#include "ifca/report.hpp"
#include "ifca/resolution.hpp"
#include "ifca/situation.hpp"
#include "ifca/thresholds.hpp"
#include "ifca/trisection.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomainError = 1;
constexpr int kExitIoError = 2;
constexpr int kExitNoProgress = 3;

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw ifca::IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw ifca::IoError("writing '" + path + "' failed");
}

std::string strip_json_suffix(const std::string& path) {
  const std::string suffix = ".json";
  if (path.size() > suffix.size() &&
      path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return path.substr(0, path.size() - suffix.size());
  }
  return path;
}

std::vector<std::size_t> resolve_issue_ids(const ifca::ConflictSituation& s,
                                           const std::vector<std::string>& ids) {
  std::vector<std::size_t> indices;
  indices.reserve(ids.size());
  for (const std::string& id : ids) indices.push_back(s.issue_index(id));
  return indices;
}

std::vector<std::size_t> resolve_agent_ids(const ifca::ConflictSituation& s,
                                           const std::vector<std::string>& ids) {
  std::vector<std::size_t> indices;
  indices.reserve(ids.size());
  for (const std::string& id : ids) indices.push_back(s.agent_index(id));
  return indices;
}

int run_validate(const std::string& path) {
  try {
    const ifca::ConflictSituation s = ifca::load_situation_file(path);
    std::cout << "ok: " << s.agent_count() << " agents, " << s.issue_count()
              << " issues\n";
    return kExitOk;
  } catch (const ifca::ValidationError& e) {
    std::cerr << path << ": " << e.what();
    return kExitDomainError;
  }
}

struct AnalyzeArgs {
  std::string path;
  std::optional<double> sigma;
  std::vector<double> thresholds; // two values when present
  std::vector<std::string> issues;
  std::vector<std::string> agents;
  std::string level = "all";
  std::string format = "table";
};

int run_analyze(const AnalyzeArgs& args) {
  const ifca::ConflictSituation s = ifca::load_situation_file(args.path);
  ifca::AnalysisOptions options;
  options.issue_bundle = resolve_issue_ids(s, args.issues);
  options.agent_group = resolve_agent_ids(s, args.agents);
  options.sigma = args.sigma;
  if (!args.thresholds.empty()) {
    options.thresholds = ifca::make_thresholds(args.thresholds[0], args.thresholds[1]);
  }
  const ifca::AnalysisReport report = ifca::analyze(s, options);

  if (args.format == "json") {
    nlohmann::ordered_json doc = ifca::render_json(report);
    if (args.level != "all") {
      nlohmann::ordered_json filtered;
      for (const char* key : {"agents", "issues", "bundle", "group"})
        filtered[key] = doc[key];
      if (args.level == "pairs") {
        filtered["conflict_matrix"] = doc["conflict_matrix"];
        filtered["coalitions"] = doc["coalitions"];
      } else if (args.level == "agents") {
        filtered["agent_conflict"] = doc["agent_conflict"];
        filtered["agent_trisection"] = doc["agent_trisection"];
      } else {
        filtered["issue_conflict"] = doc["issue_conflict"];
        filtered["issue_trisection"] = doc["issue_trisection"];
      }
      doc = std::move(filtered);
    }
    std::cout << doc.dump(2) << '\n';
  } else if (args.format == "csv") {
    std::cout << ifca::render_csv(report);
  } else {
    if (args.level == "all") {
      std::cout << ifca::render_text(report);
    } else if (args.level == "pairs") {
      for (std::size_t a = 0; a < report.agents.size(); ++a) {
        std::cout << report.agents[a] << ": conflict "
                  << ifca::join_ids(report.agents, report.coalitions[a].conflict)
                  << ", neutral "
                  << ifca::join_ids(report.agents, report.coalitions[a].neutral)
                  << ", alliance "
                  << ifca::join_ids(report.agents, report.coalitions[a].alliance)
                  << '\n';
      }
    } else if (args.level == "agents") {
      std::cout << "strong " << ifca::join_ids(report.agents, report.agent_trisection.strong)
                << ", weak " << ifca::join_ids(report.agents, report.agent_trisection.weak)
                << ", none " << ifca::join_ids(report.agents, report.agent_trisection.none)
                << '\n';
    } else {
      std::cout << "strong " << ifca::join_ids(report.issues, report.issue_trisection.strong)
                << ", weak " << ifca::join_ids(report.issues, report.issue_trisection.weak)
                << ", none " << ifca::join_ids(report.issues, report.issue_trisection.none)
                << '\n';
    }
  }
  return kExitOk;
}

struct ResolveArgs {
  std::string path;
  double kappa = 0.47;
  std::size_t pair_budget = 1;
  std::size_t runs = 10;
  double sigma = 0.44;
  std::uint64_t seed = 0;
  std::size_t max_iterations = 50;
  ifca::SaParams sa;
  std::string output_prefix; // defaults to the input path without .json
};

void write_resolve_outputs(const ResolveArgs& args, const ifca::ResolutionTrace& trace) {
  const std::string prefix =
      args.output_prefix.empty() ? strip_json_suffix(args.path) : args.output_prefix;

  ifca::save_situation_file(trace.final_situation(), prefix + ".resolved.json");
  write_text_file(prefix + ".trace.json", ifca::trace_to_json(trace).dump(2) + "\n");
  write_text_file(prefix + ".agent-classes.csv",
                  ifca::trisection_cardinality_csv(trace, args.sigma, true));
  write_text_file(prefix + ".issue-classes.csv",
                  ifca::trisection_cardinality_csv(trace, args.sigma, false));
  write_text_file(prefix + ".agent-cm.csv", ifca::measure_series_csv(trace, true));
  write_text_file(prefix + ".issue-cm.csv", ifca::measure_series_csv(trace, false));

  std::cout << ifca::render_trace_table(trace);
  const double final_cm = ifca::group_conflict(
      trace.final_situation(), ifca::index_range(trace.initial.agent_count()),
      ifca::index_range(trace.initial.issue_count()));
  std::cout << "iterations: " << trace.iterations.size()
            << "  final conflict: " << ifca::format_2dp(final_cm) << " ("
            << ifca::format_full(final_cm) << ")\n";
  std::cout << "wrote " << prefix << ".resolved.json, " << prefix << ".trace.json"
            << " and four figure CSVs\n";
}

int run_resolve(const ResolveArgs& args) {
  const ifca::ConflictSituation s = ifca::load_situation_file(args.path);
  try {
    const ifca::ResolutionTrace trace =
        ifca::resolve(s, args.kappa, args.pair_budget, args.runs, args.sigma,
                      args.sa, args.seed, args.max_iterations);
    write_resolve_outputs(args, trace);
    return kExitOk;
  } catch (const ifca::NoProgress& e) {
    std::cerr << "error: " << e.what() << '\n';
    write_resolve_outputs(args, e.trace());
    return kExitNoProgress;
  }
}

struct SensitivityArgs {
  std::string path;
  double sigma_min = 0.05;
  double sigma_max = 0.45;
  std::size_t steps = 41;
  std::string output; // stdout when empty
};

int run_sensitivity(const SensitivityArgs& args) {
  const ifca::ConflictSituation s = ifca::load_situation_file(args.path);
  const std::string csv = ifca::sensitivity_csv(s, args.sigma_min, args.sigma_max, args.steps);
  if (args.output.empty()) {
    std::cout << csv;
  } else {
    write_text_file(args.output, csv);
  }
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-way conflict analysis over intuitionistic fuzzy preferences"};
  app.require_subcommand(1);

  std::string validate_path;
  CLI::App* validate = app.add_subcommand("validate", "Check a situation file");
  validate->add_option("file", validate_path, "situation JSON file")->required();

  AnalyzeArgs analyze_args;
  CLI::App* analyze = app.add_subcommand("analyze", "Conflict measures and trisections");
  analyze->add_option("file", analyze_args.path, "situation JSON file")->required();
  analyze->add_option("--sigma", analyze_args.sigma,
                      "loss scaling in (0, 0.5); derives the thresholds");
  analyze->add_option("--thresholds", analyze_args.thresholds,
                      "explicit lower,upper cut pair")
      ->delimiter(',')
      ->expected(2);
  analyze->add_option("--issues", analyze_args.issues, "issue bundle (default: all)")
      ->delimiter(',');
  analyze->add_option("--agents", analyze_args.agents, "agent group (default: all)")
      ->delimiter(',');
  analyze->add_option("--level", analyze_args.level, "all|pairs|agents|issues")
      ->check(CLI::IsMember({"all", "pairs", "agents", "issues"}));
  analyze->add_option("--format", analyze_args.format, "table|json|csv")
      ->check(CLI::IsMember({"table", "json", "csv"}));

  ResolveArgs resolve_args;
  CLI::App* resolve = app.add_subcommand("resolve", "Iterative conflict resolution");
  resolve->add_option("file", resolve_args.path, "situation JSON file")->required();
  resolve->add_option("--kappa", resolve_args.kappa, "target group conflict in (0, 1)")
      ->required();
  resolve->add_option("--k", resolve_args.pair_budget,
                      "number of issue pairs adjusted per iteration")
      ->required();
  resolve->add_option("--S", resolve_args.runs, "annealing runs per iteration")->capture_default_str();
  resolve->add_option("--sigma", resolve_args.sigma,
                      "loss scaling for the per-iteration thresholds")
      ->required();
  resolve->add_option("--seed", resolve_args.seed, "base random seed")->capture_default_str();
  resolve->add_option("--max-iterations", resolve_args.max_iterations,
                      "give up after this many adjustment rounds")->capture_default_str();
  resolve->add_option("--initial-temperature", resolve_args.sa.initial_temperature,
                      "annealing start temperature")->capture_default_str();
  resolve->add_option("--cooling-rate", resolve_args.sa.cooling_rate,
                      "geometric cooling factor in (0, 1)")->capture_default_str();
  resolve->add_option("--steps", resolve_args.sa.steps_per_run,
                      "moves per annealing run")->capture_default_str();
  resolve->add_option("--value-step", resolve_args.sa.value_step,
                      "largest per-move change of mu or nu")->capture_default_str();
  resolve->add_option("--swap-probability", resolve_args.sa.swap_probability,
                      "chance a move re-selects a pair")->capture_default_str();
  resolve->add_option("--output-prefix", resolve_args.output_prefix,
                      "prefix for output files (default: input path without .json)");

  SensitivityArgs sensitivity_args;
  CLI::App* sensitivity =
      app.add_subcommand("sensitivity", "Threshold pair across a sigma grid (CSV)");
  sensitivity->add_option("file", sensitivity_args.path, "situation JSON file")->required();
  sensitivity->add_option("--min", sensitivity_args.sigma_min, "smallest sigma")->capture_default_str();
  sensitivity->add_option("--max", sensitivity_args.sigma_max, "largest sigma")->capture_default_str();
  sensitivity->add_option("--steps", sensitivity_args.steps, "grid size")->capture_default_str();
  sensitivity->add_option("--output", sensitivity_args.output,
                          "write the CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitDomainError;
  }

  try {
    if (validate->parsed()) return run_validate(validate_path);
    if (analyze->parsed()) {
      if (!analyze_args.sigma && analyze_args.thresholds.empty()) {
        std::cerr << "error: analyze needs --sigma or --thresholds\n";
        return kExitDomainError;
      }
      if (analyze_args.sigma && !(*analyze_args.sigma > 0.0 && *analyze_args.sigma < 0.5)) {
        std::cerr << "error: --sigma must lie strictly inside (0, 0.5)\n";
        return kExitDomainError;
      }
      return run_analyze(analyze_args);
    }
    if (resolve->parsed()) return run_resolve(resolve_args);
    if (sensitivity->parsed()) return run_sensitivity(sensitivity_args);
  } catch (const ifca::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIoError;
  } catch (const ifca::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomainError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomainError;
  }
  return kExitDomainError;
}
