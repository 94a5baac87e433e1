#ifndef IFCA_RESOLUTION_HPP
#define IFCA_RESOLUTION_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ifca/error.hpp"
#include "ifca/ifn.hpp"
#include "ifca/measures.hpp"
#include "ifca/situation.hpp"
#include "ifca/thresholds.hpp"

namespace ifca {

// One adjusted issue pair: the replacement value for position (i, j).
// Position (j, i) is implied by reciprocity.
struct Adjustment {
  std::pair<std::size_t, std::size_t> issue_pair;
  Ifn value;
};

// A bounded modification of one agent's preferences: exactly k distinct
// off-diagonal issue pairs receive new values.
struct AdjustmentPlan {
  std::size_t target = 0;
  std::vector<Adjustment> adjustments;
};

// Knobs of one annealing run. The defaults are sized for objectives on the
// order of 0.5 and finish desk-scale instances in milliseconds.
struct SaParams {
  double initial_temperature = 0.05;
  double cooling_rate = 0.97;
  std::size_t steps_per_run = 2000;
  double value_step = 0.15;      // max per-move perturbation of mu / nu
  double swap_probability = 0.2; // chance a move re-selects a pair
};

inline void validate(const SaParams& p) {
  if (!(p.initial_temperature > 0.0))
    throw Error("initial_temperature must be positive");
  if (!(p.cooling_rate > 0.0 && p.cooling_rate < 1.0))
    throw Error("cooling_rate must lie in (0, 1)");
  if (p.steps_per_run == 0) throw Error("steps_per_run must be positive");
  if (!(p.value_step > 0.0)) throw Error("value_step must be positive");
  if (!(p.swap_probability >= 0.0 && p.swap_probability <= 1.0))
    throw Error("swap_probability must lie in [0, 1]");
}

inline void validate_plan(const ConflictSituation& s, const AdjustmentPlan& plan) {
  if (plan.target >= s.agent_count()) {
    throw PlanInvalid("target agent index " + std::to_string(plan.target) +
                      " out of range");
  }
  const std::size_t m = s.issue_count();
  std::vector<bool> taken(m * m, false);
  for (const Adjustment& adj : plan.adjustments) {
    const auto [i, j] = adj.issue_pair;
    if (i >= m || j >= m) throw PlanInvalid("issue pair index out of range");
    if (i == j) throw PlanInvalid("diagonal positions cannot be adjusted");
    const std::size_t lo = std::min(i, j);
    const std::size_t hi = std::max(i, j);
    if (taken[lo * m + hi]) {
      throw PlanInvalid("issue pair (" + std::to_string(i) + ", " +
                        std::to_string(j) + ") adjusted twice");
    }
    taken[lo * m + hi] = true;
    const double tol = kValidationTolerance;
    if (!(adj.value.mu >= -tol && adj.value.mu <= 1.0 + tol) ||
        !(adj.value.nu >= -tol && adj.value.nu <= 1.0 + tol)) {
      throw PlanInvalid("replacement value outside [0, 1]");
    }
    if (adj.value.mu + adj.value.nu > 1.0 + tol) {
      throw PlanInvalid("replacement value violates mu + nu <= 1");
    }
  }
}

// Returns a new situation with the target's matrix rewritten at the plan's
// pairs (and their reciprocal positions). Everything else is untouched.
inline ConflictSituation apply_plan(const ConflictSituation& s,
                                    const AdjustmentPlan& plan) {
  validate_plan(s, plan);
  const std::size_t m = s.issue_count();
  std::vector<double> mu = s.preferences(plan.target).mu_values();
  for (const Adjustment& adj : plan.adjustments) {
    const auto [i, j] = adj.issue_pair;
    mu[i * m + j] = adj.value.mu;
    mu[j * m + i] = adj.value.nu;
  }
  std::vector<std::vector<double>> grid(m);
  for (std::size_t i = 0; i < m; ++i)
    grid[i].assign(mu.begin() + static_cast<std::ptrdiff_t>(i * m),
                   mu.begin() + static_cast<std::ptrdiff_t>((i + 1) * m));
  std::vector<PreferenceMatrix> prefs;
  prefs.reserve(s.agent_count());
  for (std::size_t a = 0; a < s.agent_count(); ++a) {
    if (a == plan.target) {
      prefs.push_back(PreferenceMatrix::from_mu_grid(grid));
    } else {
      prefs.push_back(s.preferences(a));
    }
  }
  return ConflictSituation(s.agents(), s.issues(), std::move(prefs));
}

namespace detail {

// Deterministic uniform draws. The standard distributions are not pinned
// across implementations, so the mapping from engine output to doubles and
// index ranges is spelled out here.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform index in [0, n); n must be positive. The modulo bias is below
  // n / 2^64, far under anything observable here.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

private:
  std::mt19937_64 engine_;
};

// Evaluates the resolution objective
//   L = CM(target, I) + rho * sum over ordered pairs of |d mu| + |d nu|
// against a scratch copy of the target's grid, so one evaluation costs
// O(n m^2) and allocates nothing.
class ObjectiveEvaluator {
public:
  ObjectiveEvaluator(const ConflictSituation& s, std::size_t target)
      : m_(s.issue_count()), n_(s.agent_count()), target_(target) {
    if (target_ >= n_) {
      throw UnknownAgent("agent index " + std::to_string(target_) +
                         " out of range");
    }
    if (n_ < 2) {
      throw GroupTooSmall(
          "conflict resolution needs at least two agents; the penalty "
          "weight 1/(m(m-1)(n-1)) is undefined otherwise");
    }
    grids_.reserve(n_);
    for (std::size_t a = 0; a < n_; ++a) grids_.push_back(s.preferences(a).mu_values());
    scratch_ = grids_[target_];
    rho_ = 1.0 / static_cast<double>(m_ * (m_ - 1) * (n_ - 1));
  }

  double rho() const { return rho_; }

  double evaluate(std::span<const std::pair<std::size_t, std::size_t>> pairs,
                  std::span<const Ifn> values) {
    scratch_ = grids_[target_];
    double penalty = 0.0;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const auto [i, j] = pairs[k];
      penalty += std::abs(values[k].mu - grids_[target_][i * m_ + j]) +
                 std::abs(values[k].nu - grids_[target_][j * m_ + i]);
      scratch_[i * m_ + j] = values[k].mu;
      scratch_[j * m_ + i] = values[k].nu;
    }
    double cm = 0.0;
    for (std::size_t b = 0; b < n_; ++b) {
      if (b == target_) continue;
      cm += bundle_conflict_flat(scratch_, grids_[b]);
    }
    cm /= static_cast<double>(n_ - 1);
    // each unordered adjustment appears once as (i, j) and once mirrored
    return cm + rho_ * 2.0 * penalty;
  }

private:
  double bundle_conflict_flat(const std::vector<double>& ga,
                              const std::vector<double>& gb) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < m_; ++j) {
        if (i == j) continue;
        sum += conflict_distance(Ifn{ga[i * m_ + j], ga[j * m_ + i]},
                                 Ifn{gb[i * m_ + j], gb[j * m_ + i]});
      }
    }
    return sum / static_cast<double>(m_ * (m_ - 1));
  }

  std::size_t m_;
  std::size_t n_;
  std::size_t target_;
  std::vector<std::vector<double>> grids_;
  std::vector<double> scratch_;
  double rho_;
};

} // namespace detail

// Full objective of a plan: the target's post-adjustment conflict against
// everyone plus the scaled adjustment magnitude.
inline double objective(const ConflictSituation& s, const AdjustmentPlan& plan) {
  validate_plan(s, plan);
  detail::ObjectiveEvaluator eval(s, plan.target);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<Ifn> values;
  pairs.reserve(plan.adjustments.size());
  values.reserve(plan.adjustments.size());
  for (const Adjustment& adj : plan.adjustments) {
    pairs.push_back(adj.issue_pair);
    values.push_back(adj.value);
  }
  return eval.evaluate(pairs, values);
}

// Largest number of adjustable pairs for an m-issue situation.
inline std::size_t max_pair_budget(const ConflictSituation& s) {
  return s.issue_count() * (s.issue_count() - 1) / 2;
}

// Anneals over (pair selection, replacement values) for one target agent
// and returns the best feasible plan found with its objective value.
// Deterministic for a fixed seed; the result is never worse than leaving
// the preferences unchanged.
inline std::pair<AdjustmentPlan, double> sa_optimize(const ConflictSituation& s,
                                                     std::size_t target,
                                                     std::size_t pair_budget,
                                                     const SaParams& params,
                                                     std::uint64_t seed) {
  validate(params);
  detail::check_agent(s, target);
  const std::size_t m = s.issue_count();
  const std::size_t max_budget = max_pair_budget(s);
  if (pair_budget < 1 || pair_budget > max_budget) {
    throw InvalidK("pair budget " + std::to_string(pair_budget) +
                   " outside 1 <= k <= " + std::to_string(max_budget));
  }
  detail::ObjectiveEvaluator eval(s, target);
  detail::Rng rng(seed);

  std::vector<std::pair<std::size_t, std::size_t>> all_pairs;
  all_pairs.reserve(max_budget);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) all_pairs.emplace_back(i, j);

  // Start from the pairs where the target disagrees with the others most,
  // at their current values, so the initial objective is CM(target, I).
  std::vector<std::size_t> order(all_pairs.size());
  std::vector<double> contribution(all_pairs.size(), 0.0);
  for (std::size_t p = 0; p < all_pairs.size(); ++p) {
    order[p] = p;
    const auto [i, j] = all_pairs[p];
    for (std::size_t b = 0; b < s.agent_count(); ++b) {
      if (b == target) continue;
      contribution[p] += pair_conflict(s, target, b, i, j);
    }
  }
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (contribution[x] != contribution[y]) return contribution[x] > contribution[y];
    return x < y;
  });

  const PreferenceMatrix& current = s.preferences(target);
  auto original_value = [&](std::size_t p) {
    const auto [i, j] = all_pairs[p];
    return current.entry(i, j);
  };

  std::vector<std::size_t> selected(order.begin(),
                                    order.begin() + static_cast<std::ptrdiff_t>(pair_budget));
  std::sort(selected.begin(), selected.end());
  std::vector<std::pair<std::size_t, std::size_t>> state_pairs(pair_budget);
  std::vector<Ifn> state_values(pair_budget);
  for (std::size_t k = 0; k < pair_budget; ++k) {
    state_pairs[k] = all_pairs[selected[k]];
    state_values[k] = original_value(selected[k]);
  }

  double current_objective = eval.evaluate(state_pairs, state_values);
  std::vector<std::size_t> best_selected = selected;
  std::vector<Ifn> best_values = state_values;
  double best_objective = current_objective;

  double temperature = params.initial_temperature;
  std::vector<std::size_t> unselected;
  std::vector<std::size_t> trial_selected;
  std::vector<Ifn> trial_values;
  for (std::size_t step = 0; step < params.steps_per_run; ++step) {
    trial_selected = selected;
    trial_values = state_values;

    unselected.clear();
    for (std::size_t p = 0; p < all_pairs.size(); ++p) {
      if (std::find(selected.begin(), selected.end(), p) == selected.end())
        unselected.push_back(p);
    }

    if (!unselected.empty() && rng.uniform01() < params.swap_probability) {
      // swap one selected pair for an unselected one; the incoming pair
      // starts at its current entries so it carries no penalty yet
      const std::size_t slot = rng.below(pair_budget);
      const std::size_t incoming = unselected[rng.below(unselected.size())];
      trial_selected[slot] = incoming;
      trial_values[slot] = original_value(incoming);
    } else {
      const std::size_t slot = rng.below(pair_budget);
      double mu = trial_values[slot].mu + rng.uniform(-params.value_step, params.value_step);
      double nu = trial_values[slot].nu + rng.uniform(-params.value_step, params.value_step);
      mu = std::clamp(mu, 0.0, 1.0);
      nu = std::clamp(nu, 0.0, 1.0);
      if (mu + nu > 1.0) {
        const double scale = 1.0 / (mu + nu);
        mu *= scale;
        nu *= scale;
      }
      trial_values[slot] = Ifn{mu, nu};
    }

    for (std::size_t k = 0; k < pair_budget; ++k)
      state_pairs[k] = all_pairs[trial_selected[k]];
    const double trial_objective = eval.evaluate(state_pairs, trial_values);
    const double delta = trial_objective - current_objective;
    if (delta <= 0.0 || rng.uniform01() < std::exp(-delta / temperature)) {
      selected = trial_selected;
      state_values = trial_values;
      current_objective = trial_objective;
      if (current_objective < best_objective) {
        best_objective = current_objective;
        best_selected = selected;
        best_values = state_values;
      }
    }
    temperature *= params.cooling_rate;
  }

  AdjustmentPlan plan;
  plan.target = target;
  std::vector<std::size_t> slots(pair_budget);
  for (std::size_t k = 0; k < pair_budget; ++k) slots[k] = k;
  std::sort(slots.begin(), slots.end(), [&](std::size_t x, std::size_t y) {
    return best_selected[x] < best_selected[y];
  });
  for (std::size_t slot : slots) {
    plan.adjustments.push_back({all_pairs[best_selected[slot]], best_values[slot]});
  }
  return {std::move(plan), best_objective};
}

// One applied adjustment round and everything recomputed after it.
struct IterationRecord {
  std::size_t index = 0; // t, counted from 1
  std::size_t target = 0;
  AdjustmentPlan plan;
  std::vector<Ifn> previous_values; // entries the plan replaced, same order
  double objective_value = 0.0;     // best L of the iteration's runs
  double group_conflict = 0.0;      // CM on the post-iteration situation
  ThresholdPair thresholds;         // re-derived on the post-iteration situation
  ConflictSituation situation;      // post-iteration state
};

struct ResolutionTrace {
  ConflictSituation initial;
  std::vector<IterationRecord> iterations;

  const ConflictSituation& final_situation() const {
    return iterations.empty() ? initial : iterations.back().situation;
  }
};

// The iteration cap was reached with group conflict still above kappa.
// Carries everything accomplished so far.
class NoProgress : public Error {
public:
  NoProgress(const std::string& message, ResolutionTrace trace)
      : Error(message), trace_(std::move(trace)) {}

  const ResolutionTrace& trace() const { return trace_; }

private:
  ResolutionTrace trace_;
};

// Outer resolution loop: while group conflict exceeds kappa, pick the
// agent with the largest conflict measure (ties to the earlier agent),
// anneal `runs` times with seeds seed, seed + 1, ..., apply the best plan
// found, and record the round. Iteration t uses seeds offset by
// (t - 1) * runs so no two runs ever share a seed.
inline ResolutionTrace resolve(const ConflictSituation& s, double kappa,
                               std::size_t pair_budget, std::size_t runs,
                               double sigma, const SaParams& params,
                               std::uint64_t seed,
                               std::size_t max_iterations = 50) {
  if (!(kappa > 0.0 && kappa < 1.0))
    throw Error("kappa = " + std::to_string(kappa) + " must lie in (0, 1)");
  if (runs == 0) throw Error("the number of annealing runs must be positive");
  if (!(sigma > 0.0 && sigma < 0.5)) {
    throw InvalidSigma("sigma = " + std::to_string(sigma) +
                       " must lie strictly inside (0, 0.5)");
  }
  validate(params);

  const std::vector<std::size_t> everyone = index_range(s.agent_count());
  const std::vector<std::size_t> whole_bundle = index_range(s.issue_count());

  ResolutionTrace trace{s, {}};
  ConflictSituation current = s;
  for (std::size_t t = 1;; ++t) {
    if (group_conflict(current, everyone, whole_bundle) <= kappa) break;
    if (t > max_iterations) {
      throw NoProgress("group conflict still above " + std::to_string(kappa) +
                           " after " + std::to_string(max_iterations) +
                           " iterations",
                       std::move(trace));
    }

    std::size_t target = 0;
    double target_measure = -1.0;
    for (std::size_t a = 0; a < s.agent_count(); ++a) {
      const double measure = agent_conflict(current, a, whole_bundle);
      if (measure > target_measure) {
        target_measure = measure;
        target = a;
      }
    }

    AdjustmentPlan best_plan;
    double best_objective = 0.0;
    for (std::size_t run = 0; run < runs; ++run) {
      auto [plan, value] = sa_optimize(current, target, pair_budget, params,
                                       seed + (t - 1) * runs + run);
      if (run == 0 || value < best_objective) {
        best_objective = value;
        best_plan = std::move(plan);
      }
    }

    IterationRecord record{t,
                           target,
                           best_plan,
                           {},
                           best_objective,
                           0.0,
                           ThresholdPair{},
                           current};
    const PreferenceMatrix& before = current.preferences(target);
    for (const Adjustment& adj : best_plan.adjustments) {
      record.previous_values.push_back(
          before.entry(adj.issue_pair.first, adj.issue_pair.second));
    }
    current = apply_plan(current, best_plan);
    record.group_conflict = group_conflict(current, everyone, whole_bundle);
    const auto [lambda_sn, lambda_ns] = derive_losses(current, whole_bundle);
    record.thresholds =
        thresholds_from_sigma(make_loss_profile(lambda_sn, lambda_ns, sigma));
    record.situation = current;
    trace.iterations.push_back(std::move(record));
  }
  return trace;
}

} // namespace ifca

#endif // IFCA_RESOLUTION_HPP
