#ifndef IFCA_MEASURES_HPP
#define IFCA_MEASURES_HPP

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ifca/error.hpp"
#include "ifca/ifn.hpp"
#include "ifca/situation.hpp"

namespace ifca {

namespace detail {

inline void check_agent(const ConflictSituation& s, std::size_t a) {
  if (a >= s.agent_count())
    throw UnknownAgent("agent index " + std::to_string(a) + " out of range");
}

inline void check_issue(const ConflictSituation& s, std::size_t i) {
  if (i >= s.issue_count())
    throw UnknownIssue("issue index " + std::to_string(i) + " out of range");
}

inline void check_issue_subset(const ConflictSituation& s,
                               std::span<const std::size_t> subset) {
  std::vector<bool> seen(s.issue_count(), false);
  for (std::size_t i : subset) {
    check_issue(s, i);
    if (seen[i]) throw Error("issue index " + std::to_string(i) + " listed twice");
    seen[i] = true;
  }
}

inline void check_agent_subset(const ConflictSituation& s,
                               std::span<const std::size_t> subset) {
  std::vector<bool> seen(s.agent_count(), false);
  for (std::size_t a : subset) {
    check_agent(s, a);
    if (seen[a]) throw Error("agent index " + std::to_string(a) + " listed twice");
    seen[a] = true;
  }
}

} // namespace detail

// Conflict between agents a and b on the single issue pair (i, j): the
// normalized distance between their preference values there.
inline double pair_conflict(const ConflictSituation& s, std::size_t a,
                            std::size_t b, std::size_t i, std::size_t j) {
  detail::check_agent(s, a);
  detail::check_agent(s, b);
  detail::check_issue(s, i);
  detail::check_issue(s, j);
  return conflict_distance(s.preferences(a).entry(i, j),
                           s.preferences(b).entry(i, j));
}

inline double pair_conflict(const ConflictSituation& s, std::string_view a,
                            std::string_view b, std::string_view i,
                            std::string_view j) {
  return pair_conflict(s, s.agent_index(a), s.agent_index(b), s.issue_index(i),
                       s.issue_index(j));
}

// Conflict between agents a and b over an issue bundle J (|J| >= 2): the
// mean of pair_conflict over all ordered pairs of distinct issues in J.
inline double bundle_conflict(const ConflictSituation& s, std::size_t a,
                              std::size_t b, std::span<const std::size_t> bundle) {
  detail::check_agent(s, a);
  detail::check_agent(s, b);
  detail::check_issue_subset(s, bundle);
  if (bundle.size() < 2) {
    throw BundleTooSmall("issue bundle needs at least two issues, got " +
                         std::to_string(bundle.size()));
  }
  const PreferenceMatrix& ra = s.preferences(a);
  const PreferenceMatrix& rb = s.preferences(b);
  double sum = 0.0;
  for (std::size_t i : bundle) {
    for (std::size_t j : bundle) {
      if (i == j) continue;
      sum += conflict_distance(ra.entry(i, j), rb.entry(i, j));
    }
  }
  const double count = static_cast<double>(bundle.size() * (bundle.size() - 1));
  return sum / count;
}

// Symmetric zero-diagonal table of bundle conflicts between all agents.
class ConflictMatrix {
public:
  ConflictMatrix(std::vector<std::string> agents, std::vector<double> values)
      : agents_(std::move(agents)), values_(std::move(values)) {
    const std::size_t n = agents_.size();
    if (values_.size() != n * n) {
      throw Error("conflict matrix needs " + std::to_string(n * n) +
                  " values, got " + std::to_string(values_.size()));
    }
    for (std::size_t a = 0; a < n; ++a) {
      if (values_[a * n + a] != 0.0)
        throw Error("conflict matrix diagonal must be zero");
      for (std::size_t b = 0; b < n; ++b) {
        const double v = values_[a * n + b];
        if (!(v >= 0.0 && v <= 1.0))
          throw Error("conflict value " + std::to_string(v) + " outside [0, 1]");
        if (v != values_[b * n + a])
          throw Error("conflict matrix must be symmetric");
      }
    }
  }

  // Row-major construction from a square grid, e.g. a published table.
  static ConflictMatrix from_grid(std::vector<std::string> agents,
                                  const std::vector<std::vector<double>>& grid) {
    std::vector<double> values;
    values.reserve(grid.size() * grid.size());
    for (const auto& row : grid) {
      if (row.size() != grid.size()) throw Error("conflict grid is not square");
      values.insert(values.end(), row.begin(), row.end());
    }
    return ConflictMatrix(std::move(agents), std::move(values));
  }

  std::size_t size() const { return agents_.size(); }

  double at(std::size_t a, std::size_t b) const {
    if (a >= size() || b >= size())
      throw UnknownAgent("conflict matrix index out of range");
    return values_[a * size() + b];
  }

  const std::vector<std::string>& agents() const { return agents_; }

  std::size_t agent_index(std::string_view id) const {
    auto it = std::find(agents_.begin(), agents_.end(), id);
    if (it == agents_.end())
      throw UnknownAgent("unknown agent '" + std::string(id) + "'");
    return static_cast<std::size_t>(it - agents_.begin());
  }

private:
  std::vector<std::string> agents_;
  std::vector<double> values_;
};

// Tabulates bundle_conflict for every agent pair.
inline ConflictMatrix conflict_matrix(const ConflictSituation& s,
                                      std::span<const std::size_t> bundle) {
  detail::check_issue_subset(s, bundle);
  if (bundle.size() < 2) {
    throw BundleTooSmall("issue bundle needs at least two issues, got " +
                         std::to_string(bundle.size()));
  }
  const std::size_t n = s.agent_count();
  std::vector<double> values(n * n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double v = bundle_conflict(s, a, b, bundle);
      values[a * n + b] = v;
      values[b * n + a] = v;
    }
  }
  return ConflictMatrix(s.agents(), std::move(values));
}

// Conflict of one agent against everyone else over a bundle: the mean of
// bundle_conflict(a, b) over all agents b. Zero for a single-agent
// situation.
inline double agent_conflict(const ConflictSituation& s, std::size_t a,
                             std::span<const std::size_t> bundle) {
  detail::check_agent(s, a);
  detail::check_issue_subset(s, bundle);
  if (bundle.size() < 2) {
    throw BundleTooSmall("issue bundle needs at least two issues, got " +
                         std::to_string(bundle.size()));
  }
  const std::size_t n = s.agent_count();
  if (n == 1) return 0.0;
  double sum = 0.0;
  for (std::size_t b = 0; b < n; ++b) {
    if (b == a) continue; // the b == a term is zero anyway
    sum += bundle_conflict(s, a, b, bundle);
  }
  return sum / static_cast<double>(n - 1);
}

inline double agent_conflict(const ConflictSituation& s, std::string_view a,
                             std::span<const std::size_t> bundle) {
  return agent_conflict(s, s.agent_index(a), bundle);
}

// Conflict of an agent group B (|B| >= 2) on one issue i: pair conflicts of
// (i, j) averaged over all other issues j and all ordered agent pairs in B.
inline double issue_conflict(const ConflictSituation& s,
                             std::span<const std::size_t> group, std::size_t i) {
  detail::check_agent_subset(s, group);
  detail::check_issue(s, i);
  if (group.size() < 2) {
    throw GroupTooSmall("agent group needs at least two agents, got " +
                        std::to_string(group.size()));
  }
  const std::size_t m = s.issue_count();
  double sum = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    if (j == i) continue;
    for (std::size_t a : group) {
      for (std::size_t b : group) {
        if (a == b) continue;
        sum += conflict_distance(s.preferences(a).entry(i, j),
                                 s.preferences(b).entry(i, j));
      }
    }
  }
  const double norm = static_cast<double>((m - 1) * group.size() * (group.size() - 1));
  return sum / norm;
}

inline double issue_conflict(const ConflictSituation& s,
                             std::span<const std::size_t> group,
                             std::string_view i) {
  return issue_conflict(s, group, s.issue_index(i));
}

// Conflict of an agent group over a bundle: the mean of agent_conflict
// (taken against the whole agent set) over the group's members.
inline double group_conflict(const ConflictSituation& s,
                             std::span<const std::size_t> group,
                             std::span<const std::size_t> bundle) {
  detail::check_agent_subset(s, group);
  if (group.empty()) throw EmptyGroup("agent group is empty");
  double sum = 0.0;
  for (std::size_t a : group) sum += agent_conflict(s, a, bundle);
  return sum / static_cast<double>(group.size());
}

} // namespace ifca

#endif // IFCA_MEASURES_HPP
