#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "krein/bounds.hpp"
#include "oracles.hpp"

using namespace krein;

TEST_CASE("Birman-Schwinger count bound") {
  const ProblemParams unit(1, 1);
  // (2bc)^{-1} int 6 sech^2 = 6 tanh(20)
  CHECK(birman_schwinger_bound(Potential::poschl_teller(2, -6), unit, 20.0) ==
        doctest::Approx(6.0 * oracle::sech2_integral(0, 20)).epsilon(1e-8));
  CHECK(std::abs(birman_schwinger_bound(Potential::poschl_teller(2, -6), unit, 20.0) - 6.0) < 0.01);
  CHECK(birman_schwinger_bound(Potential::square_well(-3, 0.5), ProblemParams(2, 1), 5.0) ==
        doctest::Approx(3.0 / 4.0).epsilon(1e-10));
  CHECK(birman_schwinger_bound(Potential::zero(), unit, 20.0) == 0.0);
  // only the negative part enters
  CHECK(birman_schwinger_bound(Potential::gaussian_well(2.0, 1.0), unit, 20.0) == 0.0);
}

TEST_CASE("Bargmann bound") {
  const ProblemParams unit(1, 1);
  const auto pt = bargmann_bound(Potential::poschl_teller(2, -6), unit, 20.0);
  REQUIRE(pt.has_value());
  CHECK(*pt >= 1.0);
  // midpoint rule for 1 + int |x| (6 sech^2 - 1)_+
  double acc = 0.0;
  const double h = 1e-4;
  for (double x = -20 + h / 2; x < 20; x += h) {
    const double neg = std::max(6.0 / std::pow(std::cosh(x), 2) - 1.0, 0.0);
    acc += std::abs(x) * neg * h;
  }
  CHECK(*pt == doctest::Approx(1.0 + acc).epsilon(1e-5));
  CHECK_FALSE(bargmann_bound(Potential::zero(), unit, 20.0).has_value());
  CHECK_FALSE(bargmann_bound(Potential::gaussian_well(-0.9, 1.0), unit, 20.0).has_value());
}

TEST_CASE("bounds grow with the amplitude") {
  const ProblemParams unit(1, 1);
  double prev_bs = -1.0, prev_b = 0.0;
  for (double s : {1.0, 2.0, 4.0, 8.0}) {
    const Potential p = Potential::scaled(Potential::gaussian_well(-1.0, 1.0), s);
    const double bs = birman_schwinger_bound(p, unit, 15.0);
    const double b = bargmann_bound(p, unit, 15.0).value_or(0.0);
    CHECK(bs > prev_bs);
    CHECK(b >= prev_b);
    prev_bs = bs;
    prev_b = b;
  }
}

TEST_CASE("report predicates") {
  const ProblemParams unit(1, 1);
  const BoundsReport r = compute_bounds(Potential::poschl_teller(2, -6), unit, 20.0, 1, 1);
  CHECK(r.bargmann_holds());
  CHECK(r.birman_schwinger_holds());
  BoundsReport tight = r;
  tight.kappa_minus_observed = 7;
  CHECK_FALSE(tight.birman_schwinger_holds());
  const BoundsReport none = compute_bounds(Potential::zero(), unit, 20.0, 0, 0);
  CHECK_FALSE(none.bargmann.has_value());
  CHECK(none.bargmann_holds());
  CHECK(none.birman_schwinger == 0.0);
}
