// Minimal tour of the library: load a situation, look at a few conflict
// measures, derive thresholds, and run the resolution loop.

#include <cstdio>

#include "ifca/io.hpp"
#include "ifca/measures.hpp"
#include "ifca/resolution.hpp"
#include "ifca/thresholds.hpp"
#include "ifca/trisection.hpp"

int main(int argc, char** argv) {
  const char* path = argc > 1 ? argv[1] : "data/middle-east.json";
  const ifca::ConflictSituation s = ifca::load_situation_file(path);
  const auto issues = ifca::index_range(s.issue_count());
  const auto agents = ifca::index_range(s.agent_count());

  std::printf("%zu agents, %zu issues\n", s.agent_count(), s.issue_count());
  for (std::size_t a = 0; a < s.agent_count(); ++a) {
    std::printf("  conflict of %s against the rest: %.2f\n",
                s.agent_id(a).c_str(), ifca::agent_conflict(s, a, issues));
  }
  std::printf("group conflict: %.2f\n", ifca::group_conflict(s, agents, issues));

  const auto [lambda_sn, lambda_ns] = ifca::derive_losses(s, issues);
  const ifca::ThresholdPair cuts = ifca::thresholds_from_sigma(
      ifca::make_loss_profile(lambda_sn, lambda_ns, 0.44));
  std::printf("derived thresholds: (%.2f, %.2f)\n", cuts.lower, cuts.upper);

  const auto tri = ifca::trisect_agents(s, issues, cuts);
  std::printf("strong/weak/non-conflict agents: %zu/%zu/%zu\n",
              tri.strong.size(), tri.weak.size(), tri.none.size());

  const ifca::ResolutionTrace trace =
      ifca::resolve(s, 0.47, 2, 10, 0.44, ifca::SaParams{}, 7);
  std::printf("resolution finished after %zu iterations\n", trace.iterations.size());
  return 0;
}
