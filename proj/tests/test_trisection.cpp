#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "ifca/trisection.hpp"

#include "support/generators.hpp"
#include "support/reference_data.hpp"

using ifca::index_range;

namespace {

std::vector<std::size_t> ids(const ifca::ConflictSituation& s,
                             const std::vector<const char*>& names, bool agents) {
  std::vector<std::size_t> out;
  for (const char* name : names)
    out.push_back(agents ? s.agent_index(name) : s.issue_index(name));
  return out;
}

std::vector<std::size_t> agent_ids(const std::vector<const char*>& names) {
  return ids(testdata::middle_east(), names, true);
}

std::vector<std::size_t> issue_ids(const std::vector<const char*>& names) {
  return ids(testdata::middle_east(), names, false);
}

} // namespace

TEST_CASE("coalitions with the derived cut pair match the reference table") {
  const auto matrix = ifca::conflict_matrix(testdata::middle_east(), index_range(5));
  const auto cuts = ifca::make_thresholds(0.41, 0.53);

  struct Row {
    const char* agent;
    std::vector<const char*> conflict, neutral, alliance;
  };
  const std::vector<Row> expected = {
      {"a1", {"a2", "a3", "a5", "a6"}, {}, {"a1", "a4"}},
      {"a2", {"a1"}, {"a3", "a4", "a5"}, {"a2", "a6"}},
      {"a3", {"a1", "a4", "a6"}, {"a2", "a5"}, {"a3"}},
      {"a4", {"a3"}, {"a2", "a6"}, {"a1", "a4", "a5"}},
      {"a5", {"a1"}, {"a2", "a3", "a6"}, {"a4", "a5"}},
      {"a6", {"a1", "a3"}, {"a4", "a5"}, {"a2", "a6"}},
  };
  for (const Row& row : expected) {
    const auto c = ifca::agent_coalitions(
        matrix, testdata::middle_east().agent_index(row.agent), cuts);
    CHECK(c.conflict == agent_ids(row.conflict));
    CHECK(c.neutral == agent_ids(row.neutral));
    CHECK(c.alliance == agent_ids(row.alliance));
  }

  // the published table itself is an equally valid input
  const auto published = testdata::bundle_conflict_matrix();
  for (const Row& row : expected) {
    const auto c = ifca::agent_coalitions(
        published, testdata::middle_east().agent_index(row.agent), cuts);
    CHECK(c.conflict == agent_ids(row.conflict));
    CHECK(c.neutral == agent_ids(row.neutral));
    CHECK(c.alliance == agent_ids(row.alliance));
  }
}

TEST_CASE("coalitions with the wider cut pair match the reference table") {
  const auto matrix = ifca::conflict_matrix(testdata::middle_east(), index_range(5));
  const auto cuts = ifca::make_thresholds(0.40, 0.60);

  struct Row {
    const char* agent;
    std::vector<const char*> conflict, neutral, alliance;
  };
  const std::vector<Row> expected = {
      {"a1", {"a2", "a3", "a6"}, {"a5"}, {"a1", "a4"}},
      {"a2", {"a1"}, {"a3", "a4", "a5"}, {"a2", "a6"}},
      {"a3", {"a1", "a4"}, {"a2", "a5", "a6"}, {"a3"}},
      {"a4", {"a3"}, {"a2", "a6"}, {"a1", "a4", "a5"}},
      {"a5", {}, {"a1", "a2", "a3", "a6"}, {"a4", "a5"}},
      {"a6", {"a1"}, {"a3", "a4", "a5"}, {"a2", "a6"}},
  };
  for (const Row& row : expected) {
    const auto c = ifca::agent_coalitions(
        matrix, testdata::middle_east().agent_index(row.agent), cuts);
    CHECK(c.conflict == agent_ids(row.conflict));
    CHECK(c.neutral == agent_ids(row.neutral));
    CHECK(c.alliance == agent_ids(row.alliance));
  }
}

TEST_CASE("trisect_pairs classifies mirrored pairs together and covers A x A") {
  const auto matrix = ifca::conflict_matrix(testdata::middle_east(), index_range(5));
  testgen::Engine rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto cuts = testgen::random_thresholds(rng);
    const auto tri = ifca::trisect_pairs(matrix, cuts);
    CHECK(tri.strong.size() + tri.weak.size() + tri.none.size() == 36);
    auto contains = [](const std::vector<ifca::AgentPair>& v, ifca::AgentPair p) {
      return std::find(v.begin(), v.end(), p) != v.end();
    };
    for (std::size_t a = 0; a < 6; ++a) {
      CHECK(contains(tri.none, {a, a})); // self pairs always ally
      for (std::size_t b = 0; b < 6; ++b) {
        const bool in_strong = contains(tri.strong, {a, b});
        CHECK(in_strong == contains(tri.strong, {b, a}));
      }
    }
  }
}

TEST_CASE("trisect_agents matches both reference threshold choices") {
  const auto& s = testdata::middle_east();
  const auto issues = index_range(5);

  const auto subjective = ifca::trisect_agents(s, issues, ifca::make_thresholds(0.50, 0.60));
  CHECK(subjective.strong == agent_ids({"a1"}));
  CHECK(subjective.weak == agent_ids({"a2", "a3"}));
  CHECK(subjective.none == agent_ids({"a4", "a5", "a6"}));

  const auto derived = ifca::trisect_agents(s, issues, ifca::make_thresholds(0.41, 0.53));
  CHECK(derived.strong == agent_ids({"a1", "a2", "a3"}));
  CHECK(derived.weak == agent_ids({"a4", "a5", "a6"}));
  CHECK(derived.none.empty());
}

TEST_CASE("trisect_issues matches both reference threshold choices") {
  const auto& s = testdata::middle_east();
  const auto agents = index_range(6);

  const auto subjective = ifca::trisect_issues(s, agents, ifca::make_thresholds(0.52, 0.55));
  CHECK(subjective.strong == issue_ids({"i5"}));
  CHECK(subjective.weak == issue_ids({"i2", "i4"}));
  CHECK(subjective.none == issue_ids({"i1", "i3"}));

  const auto derived = ifca::trisect_issues(s, agents, ifca::make_thresholds(0.41, 0.53));
  CHECK(derived.strong == issue_ids({"i2", "i4", "i5"}));
  CHECK(derived.weak == issue_ids({"i1", "i3"}));
  CHECK(derived.none.empty());
}

TEST_CASE("wide-open thresholds leave every bundled agent in the middle") {
  const auto& s = testdata::middle_east();
  const auto tri = ifca::trisect_agents(s, index_range(5), ifca::make_thresholds(0.0, 1.0));
  CHECK(tri.strong.empty());
  CHECK(tri.none.empty());
  CHECK(tri.weak.size() == 6);
}

TEST_CASE("identical agents put every issue in the non-conflict class") {
  const auto twins = testdata::situation_from_mu({
      {{0.5, 0.9}, {0.05, 0.5}},
      {{0.5, 0.9}, {0.05, 0.5}},
  });
  const auto tri = ifca::trisect_issues(twins, index_range(2), ifca::make_thresholds(0.1, 0.6));
  CHECK(tri.none.size() == 2);
}

TEST_CASE("group and bundle preconditions propagate") {
  const auto& s = testdata::middle_east();
  const std::vector<std::size_t> one = {0};
  CHECK_THROWS_AS(ifca::trisect_agents(s, one, ifca::make_thresholds(0.4, 0.6)),
                  ifca::BundleTooSmall);
  CHECK_THROWS_AS(ifca::trisect_issues(s, one, ifca::make_thresholds(0.4, 0.6)),
                  ifca::GroupTooSmall);
  const auto matrix = ifca::conflict_matrix(s, index_range(5));
  CHECK_THROWS_AS(ifca::agent_coalitions(matrix, 17, ifca::make_thresholds(0.4, 0.6)),
                  ifca::UnknownAgent);
}

TEST_CASE("every trisection partitions its universe") {
  testgen::Engine rng(1234);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = testgen::random_situation(rng, 2, 5, 2, 5);
    const auto cuts = testgen::random_thresholds(rng);
    const auto agents = ifca::trisect_agents(s, index_range(s.issue_count()), cuts);
    std::vector<std::size_t> all;
    all.insert(all.end(), agents.strong.begin(), agents.strong.end());
    all.insert(all.end(), agents.weak.begin(), agents.weak.end());
    all.insert(all.end(), agents.none.begin(), agents.none.end());
    std::sort(all.begin(), all.end());
    CHECK(all == index_range(s.agent_count()));

    const auto issues = ifca::trisect_issues(s, index_range(s.agent_count()), cuts);
    all.clear();
    all.insert(all.end(), issues.strong.begin(), issues.strong.end());
    all.insert(all.end(), issues.weak.begin(), issues.weak.end());
    all.insert(all.end(), issues.none.begin(), issues.none.end());
    std::sort(all.begin(), all.end());
    CHECK(all == index_range(s.issue_count()));
  }
}

TEST_CASE("measures sitting exactly on a cut take the outer class") {
  // round2 of the a6 measure is exactly 0.50; a cut at 0.50 keeps it out
  const auto& s = testdata::middle_east();
  const auto at_cut = ifca::trisect_agents(s, index_range(5), ifca::make_thresholds(0.50, 0.63));
  CHECK(std::find(at_cut.none.begin(), at_cut.none.end(), 5) != at_cut.none.end());
  // and the a1 measure 0.63 reaches the upper cut
  CHECK(at_cut.strong == agent_ids({"a1"}));
}

TEST_CASE("raising the upper cut never grows the strong class") {
  testgen::Engine rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = testgen::random_situation(rng, 2, 5, 2, 5);
    const double lower = testgen::uniform(rng, 0.0, 0.4);
    const double upper = testgen::uniform(rng, lower + 0.05, 0.9);
    const double higher = std::min(1.0, upper + testgen::uniform(rng, 0.01, 0.1));
    const auto base =
        ifca::trisect_agents(s, index_range(s.issue_count()),
                             ifca::make_thresholds(lower, upper));
    const auto raised =
        ifca::trisect_agents(s, index_range(s.issue_count()),
                             ifca::make_thresholds(lower, higher));
    CHECK(raised.strong.size() <= base.strong.size());

    const double lowered = std::max(0.0, lower - testgen::uniform(rng, 0.01, 0.1));
    const auto loosened =
        ifca::trisect_agents(s, index_range(s.issue_count()),
                             ifca::make_thresholds(lowered, upper));
    CHECK(loosened.none.size() <= base.none.size());
  }
}
