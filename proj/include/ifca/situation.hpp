#ifndef IFCA_SITUATION_HPP
#define IFCA_SITUATION_HPP

#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ifca/error.hpp"
#include "ifca/ifn.hpp"

namespace ifca {

// A raw m x m grid of intuitionistic fuzzy numbers, as read from a file or
// assembled by hand, before any invariant has been established.
using IfnGrid = std::vector<std::vector<Ifn>>;

struct ValidationIssue {
  enum class Rule { ValueRange, Simplex, Reciprocity, Diagonal };

  Rule rule;
  std::size_t row = 0;
  std::size_t col = 0;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }

  std::string to_string() const {
    std::ostringstream out;
    for (const auto& v : issues) {
      const char* rule = "";
      switch (v.rule) {
        case ValidationIssue::Rule::ValueRange: rule = "value-range"; break;
        case ValidationIssue::Rule::Simplex: rule = "simplex"; break;
        case ValidationIssue::Rule::Reciprocity: rule = "reciprocity"; break;
        case ValidationIssue::Rule::Diagonal: rule = "diagonal"; break;
      }
      out << rule << " at (" << v.row << ", " << v.col << "): " << v.detail
          << '\n';
    }
    return out.str();
  }
};

// Raised when a grid or file fails validation; carries the full report.
class ValidationError : public Error {
public:
  explicit ValidationError(ValidationReport report)
      : Error("validation failed:\n" + report.to_string()),
        report_(std::move(report)) {}

  const ValidationReport& report() const { return report_; }

private:
  ValidationReport report_;
};

// Checks every structural rule of a preference grid and reports each
// violated cell. Violations are report entries, not exceptions, so a
// caller can show them all at once. The grid must be square.
inline ValidationReport validate_grid(const IfnGrid& grid) {
  ValidationReport report;
  const std::size_t m = grid.size();
  const double tol = kValidationTolerance;
  auto add = [&](ValidationIssue::Rule rule, std::size_t r, std::size_t c,
                 std::string detail) {
    report.issues.push_back({rule, r, c, std::move(detail)});
  };

  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const Ifn& v = grid[i][j];
      if (!(v.mu >= -tol && v.mu <= 1.0 + tol) ||
          !(v.nu >= -tol && v.nu <= 1.0 + tol)) {
        add(ValidationIssue::Rule::ValueRange, i, j,
            "(" + std::to_string(v.mu) + ", " + std::to_string(v.nu) + ")");
        continue;
      }
      if (v.mu + v.nu > 1.0 + tol) {
        add(ValidationIssue::Rule::Simplex, i, j,
            "mu + nu = " + std::to_string(v.mu + v.nu));
      }
      if (i == j && (std::abs(v.mu - 0.5) > tol || std::abs(v.nu - 0.5) > tol)) {
        add(ValidationIssue::Rule::Diagonal, i, j,
            "diagonal entry must be (0.5, 0.5)");
      }
      if (i < j && std::abs(v.mu - grid[j][i].nu) > tol) {
        add(ValidationIssue::Rule::Reciprocity, i, j,
            "mu(" + std::to_string(i) + ", " + std::to_string(j) +
                ") = " + std::to_string(v.mu) + " but nu(" + std::to_string(j) +
                ", " + std::to_string(i) + ") = " + std::to_string(grid[j][i].nu));
      }
      if (i < j && std::abs(v.nu - grid[j][i].mu) > tol) {
        add(ValidationIssue::Rule::Reciprocity, j, i,
            "mu(" + std::to_string(j) + ", " + std::to_string(i) +
                ") = " + std::to_string(grid[j][i].mu) + " but nu(" +
                std::to_string(i) + ", " + std::to_string(j) +
                ") = " + std::to_string(v.nu));
      }
    }
  }
  return report;
}

// One agent's reciprocal preference matrix over all issue pairs. Only the
// mu grid is stored; reciprocity (nu(i, j) = mu(j, i)) holds by
// construction. Immutable after construction.
class PreferenceMatrix {
public:
  // Builds from a full grid of (mu, nu) entries, validating every
  // invariant. Throws ValidationError listing each violated cell.
  static PreferenceMatrix from_entries(const IfnGrid& grid) {
    require_square(grid);
    ValidationReport report = validate_grid(grid);
    if (!report.ok()) throw ValidationError(std::move(report));
    const std::size_t m = grid.size();
    std::vector<double> mu(m * m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) mu[i * m + j] = grid[i][j].mu;
    return PreferenceMatrix(m, std::move(mu));
  }

  // Builds from a mu grid alone; nu is the transposed grid. This is the
  // compact file representation.
  static PreferenceMatrix from_mu_grid(const std::vector<std::vector<double>>& mu) {
    IfnGrid grid(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) {
      if (mu[i].size() != mu.size()) {
        throw ParseError("mu grid row " + std::to_string(i) + " has " +
                         std::to_string(mu[i].size()) + " columns, expected " +
                         std::to_string(mu.size()));
      }
      grid[i].resize(mu.size());
      for (std::size_t j = 0; j < mu.size(); ++j)
        grid[i][j] = Ifn{mu[i][j], mu[j][i]};
    }
    return from_entries(grid);
  }

  std::size_t size() const { return size_; }

  double mu(std::size_t i, std::size_t j) const { return mu_[i * size_ + j]; }
  double nu(std::size_t i, std::size_t j) const { return mu_[j * size_ + i]; }
  double pi(std::size_t i, std::size_t j) const { return 1.0 - mu(i, j) - nu(i, j); }

  Ifn entry(std::size_t i, std::size_t j) const { return Ifn{mu(i, j), nu(i, j)}; }

  // The stored mu grid, row-major.
  const std::vector<double>& mu_values() const { return mu_; }

  friend bool operator==(const PreferenceMatrix&, const PreferenceMatrix&) = default;

private:
  PreferenceMatrix(std::size_t size, std::vector<double> mu)
      : size_(size), mu_(std::move(mu)) {}

  static void require_square(const IfnGrid& grid) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (grid[i].size() != grid.size()) {
        throw ParseError("grid row " + std::to_string(i) + " has " +
                         std::to_string(grid[i].size()) + " columns, expected " +
                         std::to_string(grid.size()));
      }
    }
  }

  std::size_t size_;
  std::vector<double> mu_;
};

// Convenience: validation report for an already-constructed matrix. Such a
// matrix is reciprocal by construction, so the report is empty unless the
// matrix was built from a tampered grid (which from_entries prevents).
inline ValidationReport validate_matrix(const PreferenceMatrix& matrix) {
  IfnGrid grid(matrix.size());
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    grid[i].resize(matrix.size());
    for (std::size_t j = 0; j < matrix.size(); ++j) grid[i][j] = matrix.entry(i, j);
  }
  return validate_grid(grid);
}

// A whole conflict situation: agents, issues, and one preference matrix
// per agent. Immutable after construction; safe to share across threads.
class ConflictSituation {
public:
  ConflictSituation(std::vector<std::string> agents,
                    std::vector<std::string> issues,
                    std::vector<PreferenceMatrix> preferences)
      : agents_(std::move(agents)),
        issues_(std::move(issues)),
        preferences_(std::move(preferences)) {
    if (agents_.empty()) throw ParseError("a situation needs at least one agent");
    if (issues_.size() < 2) {
      throw ParseError("a situation needs at least two issues, got " +
                       std::to_string(issues_.size()));
    }
    if (preferences_.size() != agents_.size()) {
      throw ParseError("expected one preference matrix per agent: " +
                       std::to_string(agents_.size()) + " agents but " +
                       std::to_string(preferences_.size()) + " matrices");
    }
    for (std::size_t a = 0; a < preferences_.size(); ++a) {
      if (preferences_[a].size() != issues_.size()) {
        throw ParseError("matrix of agent '" + agents_[a] + "' is " +
                         std::to_string(preferences_[a].size()) + "x" +
                         std::to_string(preferences_[a].size()) + " but there are " +
                         std::to_string(issues_.size()) + " issues");
      }
    }
    build_index(agents_, agent_index_, "agent");
    build_index(issues_, issue_index_, "issue");
  }

  std::size_t agent_count() const { return agents_.size(); }
  std::size_t issue_count() const { return issues_.size(); }

  const std::vector<std::string>& agents() const { return agents_; }
  const std::vector<std::string>& issues() const { return issues_; }

  const std::string& agent_id(std::size_t a) const { return agents_[a]; }
  const std::string& issue_id(std::size_t i) const { return issues_[i]; }

  std::size_t agent_index(std::string_view id) const {
    auto it = agent_index_.find(std::string(id));
    if (it == agent_index_.end())
      throw UnknownAgent("unknown agent '" + std::string(id) + "'");
    return it->second;
  }

  std::size_t issue_index(std::string_view id) const {
    auto it = issue_index_.find(std::string(id));
    if (it == issue_index_.end())
      throw UnknownIssue("unknown issue '" + std::string(id) + "'");
    return it->second;
  }

  const PreferenceMatrix& preferences(std::size_t a) const {
    if (a >= preferences_.size())
      throw UnknownAgent("agent index " + std::to_string(a) + " out of range");
    return preferences_[a];
  }

  const std::vector<PreferenceMatrix>& all_preferences() const { return preferences_; }

  friend bool operator==(const ConflictSituation&, const ConflictSituation&) = default;

private:
  static void build_index(const std::vector<std::string>& ids,
                          std::unordered_map<std::string, std::size_t>& index,
                          const char* kind) {
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (!index.emplace(ids[i], i).second) {
        throw ParseError("duplicate " + std::string(kind) + " id '" + ids[i] + "'");
      }
    }
  }

  std::vector<std::string> agents_;
  std::vector<std::string> issues_;
  std::vector<PreferenceMatrix> preferences_;
  std::unordered_map<std::string, std::size_t> agent_index_;
  std::unordered_map<std::string, std::size_t> issue_index_;
};

// 0..count-1, the canonical "everything" subset.
inline std::vector<std::size_t> index_range(std::size_t count) {
  std::vector<std::size_t> all(count);
  for (std::size_t i = 0; i < count; ++i) all[i] = i;
  return all;
}

} // namespace ifca

#endif // IFCA_SITUATION_HPP
