#ifndef IFCA_IFN_HPP
#define IFCA_IFN_HPP

#include <cmath>
#include <string>

#include "ifca/error.hpp"

namespace ifca {

// Absolute tolerance for equality checks on values that went through a
// decimal-text round trip (file loading). Values derived in-process are
// exact and never need it.
inline constexpr double kValidationTolerance = 1e-9;

// An intuitionistic fuzzy number: a preference degree mu and a
// non-preference degree nu with mu + nu <= 1. The remainder
// pi() = 1 - mu - nu is the hesitation degree.
struct Ifn {
  double mu = 0.5;
  double nu = 0.5;

  double pi() const { return 1.0 - mu - nu; }

  friend bool operator==(const Ifn&, const Ifn&) = default;
};

// The value stored at the mirrored matrix position (j, i).
inline Ifn reciprocal(const Ifn& v) { return Ifn{v.nu, v.mu}; }

// Validating constructor. Throws OutOfRange if a component leaves [0, 1]
// and SimplexViolation if mu + nu > 1, both beyond kValidationTolerance.
inline Ifn make_ifn(double mu, double nu) {
  const double tol = kValidationTolerance;
  if (!(mu >= -tol && mu <= 1.0 + tol)) {
    throw OutOfRange("mu = " + std::to_string(mu) + " is outside [0, 1]");
  }
  if (!(nu >= -tol && nu <= 1.0 + tol)) {
    throw OutOfRange("nu = " + std::to_string(nu) + " is outside [0, 1]");
  }
  if (mu + nu > 1.0 + tol) {
    throw SimplexViolation("mu + nu = " + std::to_string(mu + nu) +
                           " exceeds 1");
  }
  return Ifn{mu, nu};
}

// Normalized distance between two intuitionistic fuzzy numbers; the
// conflict contributed by one issue pair. Always in [0, 1]. The hesitation
// difference equals -(dmu + dnu); computing it that way keeps the distance
// exactly invariant under swapping the issue pair.
inline double conflict_distance(const Ifn& x, const Ifn& y) {
  const double dmu = x.mu - y.mu;
  const double dnu = x.nu - y.nu;
  return 0.5 * (std::abs(dmu) + std::abs(dnu) + std::abs(dmu + dnu));
}

// Half-away-from-zero rounding to two decimals, the resolution at which
// measures and thresholds appear in reports.
inline double round2(double v) {
  return std::copysign(std::floor(std::abs(v) * 100.0 + 0.5) / 100.0, v);
}

} // namespace ifca

#endif // IFCA_IFN_HPP
