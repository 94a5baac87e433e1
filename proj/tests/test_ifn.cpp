#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "ifca/ifn.hpp"

#include "support/generators.hpp"

using Catch::Approx;

TEST_CASE("make_ifn accepts valid pairs and exposes the hesitation degree") {
  const ifca::Ifn v = ifca::make_ifn(0.93, 0.05);
  CHECK(v.mu == 0.93);
  CHECK(v.nu == 0.05);
  CHECK(v.pi() == Approx(0.02).margin(1e-12));

  const ifca::Ifn diag = ifca::make_ifn(0.5, 0.5);
  CHECK(diag.pi() == 0.0);
}

TEST_CASE("make_ifn rejects out-of-range components") {
  CHECK_THROWS_AS(ifca::make_ifn(-0.1, 0.2), ifca::OutOfRange);
  CHECK_THROWS_AS(ifca::make_ifn(1.2, 0.0), ifca::OutOfRange);
  CHECK_THROWS_AS(ifca::make_ifn(0.2, -0.1), ifca::OutOfRange);
  CHECK_THROWS_AS(ifca::make_ifn(0.2, 1.0001), ifca::OutOfRange);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(ifca::make_ifn(nan, 0.2), ifca::OutOfRange);
}

TEST_CASE("make_ifn rejects pairs off the simplex") {
  CHECK_THROWS_AS(ifca::make_ifn(0.7, 0.5), ifca::SimplexViolation);
  CHECK_THROWS_AS(ifca::make_ifn(0.51, 0.51), ifca::SimplexViolation);
  // within tolerance of the boundary is fine
  CHECK_NOTHROW(ifca::make_ifn(0.7, 0.3 + 1e-12));
}

TEST_CASE("components always sum to one with the hesitation degree") {
  testgen::Engine rng(101);
  for (int k = 0; k < 500; ++k) {
    const double mu = testgen::uniform(rng, 0.0, 1.0);
    const double nu = testgen::uniform(rng, 0.0, 1.0 - mu);
    const ifca::Ifn v = ifca::make_ifn(mu, nu);
    CHECK(std::abs(v.mu + v.nu + v.pi() - 1.0) <= 1e-15);
  }
}

TEST_CASE("conflict_distance is a bounded metric-like distance") {
  const ifca::Ifn a{0.97, 0.02};
  const ifca::Ifn b{0.12, 0.85};
  CHECK(ifca::conflict_distance(a, b) == Approx(0.85).margin(1e-12));
  CHECK(ifca::conflict_distance(a, a) == 0.0);
  CHECK(ifca::conflict_distance(a, b) == ifca::conflict_distance(b, a));

  testgen::Engine rng(7);
  for (int k = 0; k < 500; ++k) {
    auto draw = [&] {
      const double mu = testgen::uniform(rng, 0.0, 1.0);
      return ifca::Ifn{mu, testgen::uniform(rng, 0.0, 1.0 - mu)};
    };
    const ifca::Ifn x = draw(), y = draw(), z = draw();
    const double xy = ifca::conflict_distance(x, y);
    CHECK(xy >= 0.0);
    CHECK(xy <= 1.0);
    CHECK(ifca::conflict_distance(x, y) + ifca::conflict_distance(y, z) >=
          ifca::conflict_distance(x, z) - 1e-12);
  }
}

TEST_CASE("round2 rounds half away from zero at two decimals") {
  CHECK(ifca::round2(0.5004) == 0.50);
  CHECK(ifca::round2(0.528166666667) == 0.53);
  CHECK(ifca::round2(0.535) == 0.54);
  CHECK(ifca::round2(-0.125) == -0.13);
  CHECK(ifca::round2(0.0) == 0.0);
  CHECK(ifca::round2(1.0) == 1.0);
}
