#ifndef IFCA_THRESHOLDS_HPP
#define IFCA_THRESHOLDS_HPP

#include <cstddef>
#include <span>
#include <string>
#include <utility>

#include "ifca/error.hpp"
#include "ifca/measures.hpp"
#include "ifca/situation.hpp"

namespace ifca {

// The three classes every trisection sorts its elements into.
enum class ConflictClass { Strong, Weak, None };

// A (lower, upper) cut pair with 0 <= lower < upper <= 1. Values at or
// above upper are strong, at or below lower are none, strictly between
// are weak.
struct ThresholdPair {
  double lower = 0.0;
  double upper = 1.0;

  friend bool operator==(const ThresholdPair&, const ThresholdPair&) = default;
};

inline ThresholdPair make_thresholds(double lower, double upper) {
  if (!(lower >= 0.0 && lower < upper && upper <= 1.0)) {
    throw Error("thresholds must satisfy 0 <= lower < upper <= 1, got (" +
                std::to_string(lower) + ", " + std::to_string(upper) + ")");
  }
  return ThresholdPair{lower, upper};
}

// Exact classification of a value against a cut pair.
inline ConflictClass classify(double value, const ThresholdPair& t) {
  if (value >= t.upper) return ConflictClass::Strong;
  if (value <= t.lower) return ConflictClass::None;
  return ConflictClass::Weak;
}

// Misclassification costs for the three assignment actions, together with
// the scaling sigma applied to the hedging (weak) action. lambda_sn is the
// cost of calling an ally a conflicter, lambda_ns the reverse; the two sum
// to 1 when derived from data.
struct LossProfile {
  double lambda_sn = 0.5;
  double lambda_ns = 0.5;
  double sigma = 0.25;
};

inline LossProfile make_loss_profile(double lambda_sn, double lambda_ns,
                                     double sigma) {
  if (!(lambda_sn >= 0.0 && lambda_sn <= 1.0) ||
      !(lambda_ns >= 0.0 && lambda_ns <= 1.0)) {
    throw Error("loss components must lie in [0, 1]");
  }
  if (!(sigma > 0.0 && sigma < 0.5)) {
    throw InvalidSigma("sigma = " + std::to_string(sigma) +
                       " must lie strictly inside (0, 0.5)");
  }
  return LossProfile{lambda_sn, lambda_ns, sigma};
}

// Data-driven relative losses over an issue bundle: lambda_sn is the mean
// of (1 - bundle_conflict) over ordered agent pairs, lambda_ns the mean of
// bundle_conflict over the same pairs. They are complementary, so
// lambda_sn + lambda_ns = 1.
inline std::pair<double, double> derive_losses(const ConflictSituation& s,
                                               std::span<const std::size_t> bundle) {
  const std::size_t n = s.agent_count();
  if (n < 2) {
    throw GroupTooSmall("deriving losses needs at least two agents, got " +
                        std::to_string(n));
  }
  double mean_conflict = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      mean_conflict += 2.0 * bundle_conflict(s, a, b, bundle);
    }
  }
  mean_conflict /= static_cast<double>(n * (n - 1));
  return {1.0 - mean_conflict, mean_conflict};
}

// Minimum-risk cut pair for a loss profile:
//   upper = lambda_sn (1 - sigma) / (lambda_sn (1 - sigma) + sigma lambda_ns)
//   lower = sigma lambda_sn / (sigma lambda_sn + lambda_ns (1 - sigma))
// lower < upper holds for every sigma in (0, 0.5).
inline ThresholdPair thresholds_from_sigma(const LossProfile& losses) {
  if (!(losses.sigma > 0.0 && losses.sigma < 0.5)) {
    throw InvalidSigma("sigma = " + std::to_string(losses.sigma) +
                       " must lie strictly inside (0, 0.5)");
  }
  if (losses.lambda_sn <= 0.0 || losses.lambda_ns <= 0.0) {
    throw DegenerateLosses("threshold formulas collapse when a loss is zero");
  }
  const double sn = losses.lambda_sn;
  const double ns = losses.lambda_ns;
  const double sigma = losses.sigma;
  const double upper = sn * (1.0 - sigma) / (sn * (1.0 - sigma) + sigma * ns);
  const double lower = sigma * sn / (sigma * sn + ns * (1.0 - sigma));
  return ThresholdPair{lower, upper};
}

// Expected losses of the three actions at a given conflict level.
// Diagnostic surface: the minimum-loss action always agrees with
// classify() under thresholds_from_sigma.
struct ExpectedLosses {
  double strong = 0.0;
  double weak = 0.0;
  double none = 0.0;
};

inline ExpectedLosses expected_losses(const LossProfile& losses, double conflict) {
  ExpectedLosses r;
  r.strong = losses.lambda_sn * (1.0 - conflict);
  r.none = losses.lambda_ns * conflict;
  r.weak = losses.sigma * (r.strong + r.none);
  return r;
}

// Picks the action with the smallest expected loss. Ties resolve toward
// the outer classes, matching the closed (>= / <=) outer cuts.
inline ConflictClass classify_by_min_loss(const LossProfile& losses,
                                          double conflict) {
  const ExpectedLosses r = expected_losses(losses, conflict);
  if (r.strong <= r.weak && r.strong <= r.none) return ConflictClass::Strong;
  if (r.none <= r.weak && r.none <= r.strong) return ConflictClass::None;
  return ConflictClass::Weak;
}

} // namespace ifca

#endif // IFCA_THRESHOLDS_HPP
