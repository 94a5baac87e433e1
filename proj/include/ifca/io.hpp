#ifndef IFCA_IO_HPP
#define IFCA_IO_HPP

#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ifca/error.hpp"
#include "ifca/situation.hpp"

namespace ifca {

namespace detail {

inline std::vector<std::vector<double>> read_grid(const nlohmann::json& node,
                                                  const std::string& agent,
                                                  const char* field,
                                                  std::size_t expected) {
  if (!node.is_array()) {
    throw ParseError("field '" + std::string(field) + "' of agent '" + agent +
                     "' must be an array of rows");
  }
  if (node.size() != expected) {
    throw ParseError("grid of agent '" + agent + "' has " +
                     std::to_string(node.size()) + " rows, expected " +
                     std::to_string(expected));
  }
  std::vector<std::vector<double>> grid;
  grid.reserve(expected);
  for (std::size_t r = 0; r < node.size(); ++r) {
    const auto& row = node[r];
    if (!row.is_array() || row.size() != expected) {
      throw ParseError("row " + std::to_string(r) + " of agent '" + agent +
                       "' must hold " + std::to_string(expected) + " numbers");
    }
    std::vector<double> values;
    values.reserve(expected);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (!row[c].is_number()) {
        throw ParseError("entry (" + std::to_string(r) + ", " +
                         std::to_string(c) + ") of agent '" + agent +
                         "' is not a number");
      }
      values.push_back(row[c].get<double>());
    }
    grid.push_back(std::move(values));
  }
  return grid;
}

} // namespace detail

// Reads a situation from its JSON representation. The compact form stores
// only the mu grids; nu is the transposed grid. A verbose form with
// explicit "nu" grids is accepted and cross-checked against reciprocity.
// Throws ParseError for structural problems and ValidationError (with the
// full per-cell report across all agents) for invariant violations.
inline ConflictSituation load_situation(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("top level must be a JSON object");
  for (const char* field : {"agents", "issues", "mu"}) {
    if (!doc.contains(field))
      throw ParseError("missing required field '" + std::string(field) + "'");
  }

  auto read_ids = [&](const char* field) {
    std::vector<std::string> ids;
    if (!doc[field].is_array())
      throw ParseError("field '" + std::string(field) + "' must be an array");
    for (const auto& v : doc[field]) {
      if (!v.is_string())
        throw ParseError("field '" + std::string(field) + "' must hold strings");
      ids.push_back(v.get<std::string>());
    }
    return ids;
  };
  const std::vector<std::string> agents = read_ids("agents");
  const std::vector<std::string> issues = read_ids("issues");
  if (agents.empty()) throw ParseError("a situation needs at least one agent");
  if (issues.size() < 2) {
    throw ParseError("a situation needs at least two issues, got " +
                     std::to_string(issues.size()));
  }

  const bool verbose = doc.contains("nu");
  const std::size_t m = issues.size();
  std::vector<IfnGrid> grids;
  grids.reserve(agents.size());
  for (const std::string& agent : agents) {
    if (!doc["mu"].contains(agent))
      throw ParseError("no mu grid for agent '" + agent + "'");
    const auto mu = detail::read_grid(doc["mu"][agent], agent, "mu", m);
    IfnGrid grid(m, std::vector<Ifn>(m));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) grid[i][j] = Ifn{mu[i][j], mu[j][i]};
    if (verbose) {
      if (!doc["nu"].contains(agent))
        throw ParseError("no nu grid for agent '" + agent + "'");
      const auto nu = detail::read_grid(doc["nu"][agent], agent, "nu", m);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) grid[i][j].nu = nu[i][j];
    }
    grids.push_back(std::move(grid));
  }

  // collect violations across all agents so one pass reports everything
  ValidationReport combined;
  for (std::size_t a = 0; a < agents.size(); ++a) {
    ValidationReport report = validate_grid(grids[a]);
    for (ValidationIssue& issue : report.issues) {
      issue.detail = "agent '" + agents[a] + "': " + issue.detail;
      combined.issues.push_back(std::move(issue));
    }
  }
  if (!combined.ok()) throw ValidationError(std::move(combined));

  std::vector<PreferenceMatrix> prefs;
  prefs.reserve(agents.size());
  for (const IfnGrid& grid : grids) prefs.push_back(PreferenceMatrix::from_entries(grid));
  return ConflictSituation(agents, issues, std::move(prefs));
}

inline ConflictSituation load_situation(const std::string& text) {
  std::istringstream in(text);
  return load_situation(in);
}

inline ConflictSituation load_situation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return load_situation(in);
}

// Serializes a situation in the compact form (mu grids only). Values keep
// full precision, so load(save(x)) reproduces x exactly.
inline nlohmann::ordered_json situation_to_json(const ConflictSituation& s) {
  nlohmann::ordered_json doc;
  doc["agents"] = s.agents();
  doc["issues"] = s.issues();
  nlohmann::ordered_json mu = nlohmann::ordered_json::object();
  const std::size_t m = s.issue_count();
  for (std::size_t a = 0; a < s.agent_count(); ++a) {
    std::vector<std::vector<double>> grid(m);
    for (std::size_t i = 0; i < m; ++i) {
      grid[i].resize(m);
      for (std::size_t j = 0; j < m; ++j) grid[i][j] = s.preferences(a).mu(i, j);
    }
    mu[s.agent_id(a)] = grid;
  }
  doc["mu"] = std::move(mu);
  return doc;
}

inline void save_situation(const ConflictSituation& s, std::ostream& out) {
  out << situation_to_json(s).dump(2) << '\n';
}

inline void save_situation_file(const ConflictSituation& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  save_situation(s, out);
  if (!out) throw IoError("writing '" + path + "' failed");
}

} // namespace ifca

#endif // IFCA_IO_HPP
