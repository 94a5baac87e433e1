#ifndef IFCA_REPORT_HPP
#define IFCA_REPORT_HPP

#include <charconv>
#include <cstddef>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ifca/measures.hpp"
#include "ifca/resolution.hpp"
#include "ifca/situation.hpp"
#include "ifca/thresholds.hpp"
#include "ifca/trisection.hpp"

namespace ifca {

// Shortest decimal string that round-trips the value. Machine outputs use
// this; only human tables round.
inline std::string format_full(double v) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, v);
  return std::string(buffer, result.ptr);
}

// Two-decimal rendering with half-away-from-zero rounding.
inline std::string format_2dp(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.2f", round2(v));
  return std::string(buffer);
}

struct AnalysisOptions {
  std::vector<std::size_t> issue_bundle;  // empty means all issues
  std::vector<std::size_t> agent_group;   // empty means all agents
  std::optional<double> sigma;            // derive thresholds when present
  std::optional<ThresholdPair> thresholds; // explicit cuts win over sigma
};

// Everything one analysis pass produces. Numbers are full precision; the
// renderers decide how many digits to show.
struct AnalysisReport {
  std::vector<std::string> agents;
  std::vector<std::string> issues;
  std::vector<std::size_t> issue_bundle;
  std::vector<std::size_t> agent_group;
  ConflictMatrix conflicts;
  std::vector<double> agent_measures; // CM(a, J) for every agent
  std::vector<double> issue_measures; // CM(B, i) for every issue
  double group_measure = 0.0;         // CM(B, J)
  double lambda_sn = 0.0;
  double lambda_ns = 0.0;
  std::optional<double> sigma;
  ThresholdPair thresholds;
  std::vector<Coalitions> coalitions; // per agent, over the conflict matrix
  Trisection<std::size_t> agent_trisection;
  Trisection<std::size_t> issue_trisection;
};

inline AnalysisReport analyze(const ConflictSituation& s,
                              const AnalysisOptions& options) {
  std::vector<std::size_t> bundle = options.issue_bundle.empty()
                                        ? index_range(s.issue_count())
                                        : options.issue_bundle;
  std::vector<std::size_t> group = options.agent_group.empty()
                                       ? index_range(s.agent_count())
                                       : options.agent_group;
  if (!options.sigma && !options.thresholds) {
    throw Error("either sigma or explicit thresholds are required");
  }

  AnalysisReport report{s.agents(),
                        s.issues(),
                        bundle,
                        group,
                        conflict_matrix(s, bundle),
                        {},
                        {},
                        0.0,
                        0.0,
                        0.0,
                        options.sigma,
                        ThresholdPair{},
                        {},
                        {},
                        {}};

  for (std::size_t a = 0; a < s.agent_count(); ++a)
    report.agent_measures.push_back(agent_conflict(s, a, bundle));
  for (std::size_t i = 0; i < s.issue_count(); ++i)
    report.issue_measures.push_back(issue_conflict(s, group, i));
  report.group_measure = group_conflict(s, group, bundle);

  const auto [lambda_sn, lambda_ns] = derive_losses(s, bundle);
  report.lambda_sn = lambda_sn;
  report.lambda_ns = lambda_ns;
  if (options.thresholds) {
    report.thresholds = *options.thresholds;
  } else {
    report.thresholds = thresholds_from_sigma(
        make_loss_profile(lambda_sn, lambda_ns, *options.sigma));
  }

  for (std::size_t a = 0; a < s.agent_count(); ++a)
    report.coalitions.push_back(agent_coalitions(report.conflicts, a, report.thresholds));
  report.agent_trisection = trisect_agents(s, bundle, report.thresholds);
  report.issue_trisection = trisect_issues(s, group, report.thresholds);
  return report;
}

// "{a1, a2}" style rendering of an index set.
inline std::string join_ids(const std::vector<std::string>& ids,
                            const std::vector<std::size_t>& indices) {
  std::string out = "{";
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (k > 0) out += ", ";
    out += ids[indices[k]];
  }
  return out + "}";
}

namespace detail {

inline nlohmann::ordered_json ids_json(const std::vector<std::string>& ids,
                                       const std::vector<std::size_t>& indices) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (std::size_t i : indices) arr.push_back(ids[i]);
  return arr;
}

} // namespace detail

// Human-readable tables, rounded to the two decimals used in publications.
inline std::string render_text(const AnalysisReport& r) {
  std::ostringstream out;
  const std::size_t n = r.agents.size();

  out << "situation: " << n << " agents, " << r.issues.size() << " issues\n";
  out << "bundle: " << join_ids(r.issues, r.issue_bundle)
      << "  group: " << join_ids(r.agents, r.agent_group) << "\n\n";

  out << "pairwise conflict over the bundle\n";
  out << "     ";
  for (const std::string& id : r.agents) {
    out << ' ';
    for (std::size_t pad = id.size(); pad < 4; ++pad) out << ' ';
    out << id;
  }
  out << '\n';
  for (std::size_t a = 0; a < n; ++a) {
    out << "  " << r.agents[a] << ":";
    for (std::size_t b = 0; b < n; ++b) out << " " << format_2dp(r.conflicts.at(a, b));
    out << '\n';
  }

  out << "\nper-agent conflict\n";
  for (std::size_t a = 0; a < n; ++a)
    out << "  " << r.agents[a] << ": " << format_2dp(r.agent_measures[a]) << '\n';
  out << "per-issue conflict (group)\n";
  for (std::size_t i = 0; i < r.issues.size(); ++i)
    out << "  " << r.issues[i] << ": " << format_2dp(r.issue_measures[i]) << '\n';
  out << "group conflict: " << format_2dp(r.group_measure) << '\n';

  out << "\nlosses: lambda_sn = " << format_2dp(r.lambda_sn)
      << ", lambda_ns = " << format_2dp(r.lambda_ns) << '\n';
  if (r.sigma) out << "sigma: " << format_full(*r.sigma) << '\n';
  out << "thresholds: lower = " << format_2dp(r.thresholds.lower)
      << ", upper = " << format_2dp(r.thresholds.upper) << '\n';

  out << "\ncoalitions per agent (conflict / neutral / alliance)\n";
  for (std::size_t a = 0; a < n; ++a) {
    out << "  " << r.agents[a] << ": "
        << join_ids(r.agents, r.coalitions[a].conflict) << " / "
        << join_ids(r.agents, r.coalitions[a].neutral) << " / "
        << join_ids(r.agents, r.coalitions[a].alliance) << '\n';
  }
  out << "agents: strong " << join_ids(r.agents, r.agent_trisection.strong)
      << ", weak " << join_ids(r.agents, r.agent_trisection.weak)
      << ", none " << join_ids(r.agents, r.agent_trisection.none) << '\n';
  out << "issues: strong " << join_ids(r.issues, r.issue_trisection.strong)
      << ", weak " << join_ids(r.issues, r.issue_trisection.weak)
      << ", none " << join_ids(r.issues, r.issue_trisection.none) << '\n';
  return out.str();
}

// Machine form, full precision.
inline nlohmann::ordered_json render_json(const AnalysisReport& r) {
  nlohmann::ordered_json doc;
  doc["agents"] = r.agents;
  doc["issues"] = r.issues;
  doc["bundle"] = detail::ids_json(r.issues, r.issue_bundle);
  doc["group"] = detail::ids_json(r.agents, r.agent_group);

  nlohmann::ordered_json matrix = nlohmann::ordered_json::array();
  for (std::size_t a = 0; a < r.agents.size(); ++a) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t b = 0; b < r.agents.size(); ++b) row.push_back(r.conflicts.at(a, b));
    matrix.push_back(std::move(row));
  }
  doc["conflict_matrix"] = std::move(matrix);

  nlohmann::ordered_json agent_cm = nlohmann::ordered_json::object();
  for (std::size_t a = 0; a < r.agents.size(); ++a)
    agent_cm[r.agents[a]] = r.agent_measures[a];
  doc["agent_conflict"] = std::move(agent_cm);

  nlohmann::ordered_json issue_cm = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < r.issues.size(); ++i)
    issue_cm[r.issues[i]] = r.issue_measures[i];
  doc["issue_conflict"] = std::move(issue_cm);

  doc["group_conflict"] = r.group_measure;
  doc["lambda_sn"] = r.lambda_sn;
  doc["lambda_ns"] = r.lambda_ns;
  if (r.sigma) doc["sigma"] = *r.sigma;
  doc["alpha_lower"] = r.thresholds.lower;
  doc["alpha_upper"] = r.thresholds.upper;

  nlohmann::ordered_json coalitions = nlohmann::ordered_json::object();
  for (std::size_t a = 0; a < r.agents.size(); ++a) {
    nlohmann::ordered_json row;
    row["conflict"] = detail::ids_json(r.agents, r.coalitions[a].conflict);
    row["neutral"] = detail::ids_json(r.agents, r.coalitions[a].neutral);
    row["alliance"] = detail::ids_json(r.agents, r.coalitions[a].alliance);
    coalitions[r.agents[a]] = std::move(row);
  }
  doc["coalitions"] = std::move(coalitions);

  nlohmann::ordered_json agents_tri;
  agents_tri["strong"] = detail::ids_json(r.agents, r.agent_trisection.strong);
  agents_tri["weak"] = detail::ids_json(r.agents, r.agent_trisection.weak);
  agents_tri["none"] = detail::ids_json(r.agents, r.agent_trisection.none);
  doc["agent_trisection"] = std::move(agents_tri);

  nlohmann::ordered_json issues_tri;
  issues_tri["strong"] = detail::ids_json(r.issues, r.issue_trisection.strong);
  issues_tri["weak"] = detail::ids_json(r.issues, r.issue_trisection.weak);
  issues_tri["none"] = detail::ids_json(r.issues, r.issue_trisection.none);
  doc["issue_trisection"] = std::move(issues_tri);
  return doc;
}

// Tidy rows: section,row,col,value. Full precision.
inline std::string render_csv(const AnalysisReport& r) {
  std::ostringstream out;
  out << "section,row,col,value\n";
  for (std::size_t a = 0; a < r.agents.size(); ++a)
    for (std::size_t b = 0; b < r.agents.size(); ++b)
      out << "conflict_matrix," << r.agents[a] << ',' << r.agents[b] << ','
          << format_full(r.conflicts.at(a, b)) << '\n';
  for (std::size_t a = 0; a < r.agents.size(); ++a)
    out << "agent_conflict," << r.agents[a] << ",," << format_full(r.agent_measures[a]) << '\n';
  for (std::size_t i = 0; i < r.issues.size(); ++i)
    out << "issue_conflict," << r.issues[i] << ",," << format_full(r.issue_measures[i]) << '\n';
  out << "group_conflict,,," << format_full(r.group_measure) << '\n';
  out << "lambda,sn,," << format_full(r.lambda_sn) << '\n';
  out << "lambda,ns,," << format_full(r.lambda_ns) << '\n';
  out << "threshold,lower,," << format_full(r.thresholds.lower) << '\n';
  out << "threshold,upper,," << format_full(r.thresholds.upper) << '\n';
  return out.str();
}

// Machine form of a resolution trace.
inline nlohmann::ordered_json trace_to_json(const ResolutionTrace& trace) {
  const ConflictSituation& initial = trace.initial;
  nlohmann::ordered_json doc;
  nlohmann::ordered_json iterations = nlohmann::ordered_json::array();
  for (const IterationRecord& it : trace.iterations) {
    nlohmann::ordered_json row;
    row["t"] = it.index;
    row["target"] = initial.agent_id(it.target);
    nlohmann::ordered_json adjustments = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < it.plan.adjustments.size(); ++k) {
      const Adjustment& adj = it.plan.adjustments[k];
      const Ifn& old_value = it.previous_values[k];
      nlohmann::ordered_json entry;
      entry["pair"] = {initial.issue_id(adj.issue_pair.first),
                       initial.issue_id(adj.issue_pair.second)};
      entry["old"] = {old_value.mu, old_value.nu};
      entry["new"] = {adj.value.mu, adj.value.nu};
      adjustments.push_back(std::move(entry));
    }
    row["adjustments"] = std::move(adjustments);
    row["L"] = it.objective_value;
    row["cm"] = it.group_conflict;
    row["alpha_lower"] = it.thresholds.lower;
    row["alpha_upper"] = it.thresholds.upper;
    iterations.push_back(std::move(row));
  }
  doc["iterations"] = std::move(iterations);
  doc["final_cm"] = group_conflict(trace.final_situation(),
                                   index_range(initial.agent_count()),
                                   index_range(initial.issue_count()));
  return doc;
}

// Per-iteration summary: one block per iteration, one row per adjusted pair.
inline std::string render_trace_table(const ResolutionTrace& trace) {
  std::ostringstream out;
  out << "t  target  pair        old          new          delta         L       cm      thresholds\n";
  for (const IterationRecord& it : trace.iterations) {
    for (std::size_t k = 0; k < it.plan.adjustments.size(); ++k) {
      const Adjustment& adj = it.plan.adjustments[k];
      const Ifn& old_value = it.previous_values[k];
      if (k == 0) {
        out << it.index << "  " << trace.initial.agent_id(it.target) << "    ";
      } else {
        out << "         ";
      }
      out << "  (" << trace.initial.issue_id(adj.issue_pair.first) << ","
          << trace.initial.issue_id(adj.issue_pair.second) << ")  ("
          << format_2dp(old_value.mu) << "," << format_2dp(old_value.nu)
          << ") -> (" << format_2dp(adj.value.mu) << ","
          << format_2dp(adj.value.nu) << ")  (" << format_2dp(adj.value.mu - old_value.mu)
          << "," << format_2dp(adj.value.nu - old_value.nu) << ")";
      if (k == 0) {
        char line[96];
        std::snprintf(line, sizeof line, "  %.4f  %.4f  (%s, %s)",
                      it.objective_value, it.group_conflict,
                      format_2dp(it.thresholds.lower).c_str(),
                      format_2dp(it.thresholds.upper).c_str());
        out << line;
      }
      out << '\n';
    }
  }
  return out.str();
}

// Per-iteration class counts for the agent or issue set. Row 0 is the
// unmodified situation; each row uses that iteration's own thresholds.
inline std::string trisection_cardinality_csv(const ResolutionTrace& trace,
                                              double sigma, bool agents) {
  std::ostringstream out;
  out << "iteration,strong,weak,none\n";
  const std::vector<std::size_t> everyone = index_range(trace.initial.agent_count());
  const std::vector<std::size_t> bundle = index_range(trace.initial.issue_count());
  auto emit = [&](std::size_t t, const ConflictSituation& s, const ThresholdPair& cuts) {
    if (agents) {
      const auto tri = trisect_agents(s, bundle, cuts);
      out << t << ',' << tri.strong.size() << ',' << tri.weak.size() << ','
          << tri.none.size() << '\n';
    } else {
      const auto tri = trisect_issues(s, everyone, cuts);
      out << t << ',' << tri.strong.size() << ',' << tri.weak.size() << ','
          << tri.none.size() << '\n';
    }
  };
  const auto [lambda_sn, lambda_ns] = derive_losses(trace.initial, bundle);
  emit(0, trace.initial,
       thresholds_from_sigma(make_loss_profile(lambda_sn, lambda_ns, sigma)));
  for (const IterationRecord& it : trace.iterations)
    emit(it.index, it.situation, it.thresholds);
  return out.str();
}

// Per-agent (or per-issue) conflict measures across iterations.
inline std::string measure_series_csv(const ResolutionTrace& trace, bool agents) {
  std::ostringstream out;
  const ConflictSituation& initial = trace.initial;
  const std::vector<std::size_t> everyone = index_range(initial.agent_count());
  const std::vector<std::size_t> bundle = index_range(initial.issue_count());
  out << "iteration";
  for (const std::string& id : agents ? initial.agents() : initial.issues())
    out << ',' << id;
  out << '\n';
  auto emit = [&](std::size_t t, const ConflictSituation& s) {
    out << t;
    if (agents) {
      for (std::size_t a = 0; a < s.agent_count(); ++a)
        out << ',' << format_full(agent_conflict(s, a, bundle));
    } else {
      for (std::size_t i = 0; i < s.issue_count(); ++i)
        out << ',' << format_full(issue_conflict(s, everyone, i));
    }
    out << '\n';
  };
  emit(0, initial);
  for (const IterationRecord& it : trace.iterations) emit(it.index, it.situation);
  return out.str();
}

// Threshold pair across a sigma grid; checks the expected monotone shape
// (lower never decreases, upper never increases) before returning.
inline std::string sensitivity_csv(const ConflictSituation& s, double sigma_min,
                                   double sigma_max, std::size_t steps) {
  if (!(sigma_min > 0.0 && sigma_max < 0.5 && sigma_min <= sigma_max)) {
    throw InvalidSigma("sigma range must satisfy 0 < min <= max < 0.5");
  }
  if (steps < 2) throw Error("a sensitivity sweep needs at least two steps");
  const std::vector<std::size_t> bundle = index_range(s.issue_count());
  const auto [lambda_sn, lambda_ns] = derive_losses(s, bundle);
  std::ostringstream out;
  out << "sigma,alpha_lower,alpha_upper\n";
  double previous_lower = -1.0;
  double previous_upper = 2.0;
  for (std::size_t k = 0; k < steps; ++k) {
    const double sigma = sigma_min + (sigma_max - sigma_min) *
                                         static_cast<double>(k) /
                                         static_cast<double>(steps - 1);
    const ThresholdPair cuts =
        thresholds_from_sigma(make_loss_profile(lambda_sn, lambda_ns, sigma));
    if (cuts.lower < previous_lower || cuts.upper > previous_upper) {
      throw Error("threshold series is not monotone at sigma = " +
                  std::to_string(sigma));
    }
    previous_lower = cuts.lower;
    previous_upper = cuts.upper;
    out << format_full(sigma) << ',' << format_full(cuts.lower) << ','
        << format_full(cuts.upper) << '\n';
  }
  return out.str();
}

} // namespace ifca

#endif // IFCA_REPORT_HPP
