#ifndef IFCA_TRISECTION_HPP
#define IFCA_TRISECTION_HPP

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "ifca/error.hpp"
#include "ifca/ifn.hpp"
#include "ifca/measures.hpp"
#include "ifca/situation.hpp"
#include "ifca/thresholds.hpp"

namespace ifca {

// A partition of some universe into strong-, weak-, and non-conflict
// elements. The three sets are disjoint and cover the universe.
template <typename Element>
struct Trisection {
  std::vector<Element> strong;
  std::vector<Element> weak;
  std::vector<Element> none;

  void insert(ConflictClass cls, Element element) {
    switch (cls) {
      case ConflictClass::Strong: strong.push_back(std::move(element)); break;
      case ConflictClass::Weak: weak.push_back(std::move(element)); break;
      case ConflictClass::None: none.push_back(std::move(element)); break;
    }
  }
};

using AgentPair = std::pair<std::size_t, std::size_t>;

// Measures are quantized to the two-decimal resolution used in reports
// before they meet the cuts, so classifications agree with tabulated
// values regardless of how many digits the table shows.
inline ConflictClass classify_reported(double value, const ThresholdPair& t) {
  return classify(round2(value), t);
}

// Sorts every ordered agent pair into conflict (strong), neutrality (weak),
// or alliance (none) by its tabulated conflict value. (a, b) and (b, a)
// always land together; (a, a) always lands in alliance.
inline Trisection<AgentPair> trisect_pairs(const ConflictMatrix& conflicts,
                                           const ThresholdPair& thresholds) {
  Trisection<AgentPair> result;
  for (std::size_t a = 0; a < conflicts.size(); ++a) {
    for (std::size_t b = 0; b < conflicts.size(); ++b) {
      result.insert(classify_reported(conflicts.at(a, b), thresholds), {a, b});
    }
  }
  return result;
}

// The three coalitions of one agent: a row slice of trisect_pairs.
struct Coalitions {
  std::vector<std::size_t> conflict;
  std::vector<std::size_t> neutral;
  std::vector<std::size_t> alliance;
};

inline Coalitions agent_coalitions(const ConflictMatrix& conflicts,
                                   std::size_t agent,
                                   const ThresholdPair& thresholds) {
  if (agent >= conflicts.size())
    throw UnknownAgent("agent index " + std::to_string(agent) + " out of range");
  Coalitions c;
  for (std::size_t b = 0; b < conflicts.size(); ++b) {
    switch (classify_reported(conflicts.at(agent, b), thresholds)) {
      case ConflictClass::Strong: c.conflict.push_back(b); break;
      case ConflictClass::Weak: c.neutral.push_back(b); break;
      case ConflictClass::None: c.alliance.push_back(b); break;
    }
  }
  return c;
}

// Trisection of the agent set by each agent's conflict against everyone
// else over the bundle.
inline Trisection<std::size_t> trisect_agents(const ConflictSituation& s,
                                              std::span<const std::size_t> bundle,
                                              const ThresholdPair& thresholds) {
  Trisection<std::size_t> result;
  for (std::size_t a = 0; a < s.agent_count(); ++a) {
    result.insert(classify_reported(agent_conflict(s, a, bundle), thresholds), a);
  }
  return result;
}

// Trisection of the issue set by the group's conflict on each issue.
inline Trisection<std::size_t> trisect_issues(const ConflictSituation& s,
                                              std::span<const std::size_t> group,
                                              const ThresholdPair& thresholds) {
  Trisection<std::size_t> result;
  for (std::size_t i = 0; i < s.issue_count(); ++i) {
    result.insert(classify_reported(issue_conflict(s, group, i), thresholds), i);
  }
  return result;
}

} // namespace ifca

#endif // IFCA_TRISECTION_HPP
