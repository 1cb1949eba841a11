#include <cmath>
#include <numbers>

#include "doctest.h"
#include "polyspin/semiclassics.hpp"
#include "test_util.hpp"

using namespace polyspin;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("kappa profile reproduces the closed form at u = 0") {
  // At u = 0 energy conservation along the geodesic solves in closed form:
  // kappa^2 = (1 - cos 4 theta) / (7 + cos 4 theta).
  for (int k = 0; k <= 20; ++k) {
    const double theta = kPi / 2.0 * k / 20.0;
    const double want = std::sqrt((1.0 - std::cos(4.0 * theta)) /
                                  (7.0 + std::cos(4.0 * theta)));
    INFO("theta = ", theta);
    CHECK(std::abs(kappa_profile(0.0, theta) - want) < 1e-10);
  }
  CHECK(kappa_profile(0.0, kPi / 4.0) == doctest::Approx(1.0 / std::sqrt(3.0)));
}

TEST_CASE("kappa is symmetric about the barrier top") {
  for (double u : {-0.5, -0.3, -0.1, 0.0, 0.05}) {
    for (double theta : {0.1, 0.4, 0.7}) {
      INFO("u = ", u, " theta = ", theta);
      CHECK(std::abs(kappa_profile(u, theta) - kappa_profile(u, kPi / 2.0 - theta)) <
            1e-10);
    }
    CHECK(kappa_profile(u, 0.0) < 1e-10);
    CHECK(kappa_profile(u, kPi / 2.0) < 1e-10);
  }
}

TEST_CASE("kappa profile rejects parameters outside the single-path window") {
  CHECK_THROWS_AS(kappa_profile(-0.7, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(kappa_profile(0.1, 0.5), std::invalid_argument);
}

TEST_CASE("action constant fixtures and monotonicity") {
  const double c0 = action_c(0.0);
  CHECK(std::abs(c0 - 0.5 * std::log(3.0)) < 1e-7);

  // The action grows with u: the barrier flattens toward u = -2/3 where the
  // two-fold saddles touch the four-fold wells.
  const double cm4 = action_c(-0.4);
  const double cm2 = action_c(-0.2);
  const double cp = action_c(0.05);
  CHECK(cm4 < cm2);
  CHECK(cm2 < c0);
  CHECK(c0 < cp);
  // Regression values from this implementation, quadrature tolerance 1e-8.
  CHECK(cm2 == doctest::Approx(0.389338516).epsilon(1e-6));
  CHECK(cm4 == doctest::Approx(0.275627573).epsilon(1e-6));
}

TEST_CASE("icosahedral action sits in the expected window") {
  const double c = action_c_icosahedral();
  CHECK(c > 0.27);
  CHECK(c < 0.29);
  // Regression: quadrature reproducibility of this implementation.
  CHECK(c == doctest::Approx(0.277258872).epsilon(1e-6));
}

TEST_CASE("oscillation count follows J times the solid-angle cap") {
  CHECK(oscillation_count(Group::O, SpinValue(48)) == doctest::Approx(2.0));
  CHECK(oscillation_count(Group::O, SpinValue(24)) == doctest::Approx(1.0));
  CHECK(oscillation_count(Group::Y, SpinValue(60)) == doctest::Approx(1.0));
}
