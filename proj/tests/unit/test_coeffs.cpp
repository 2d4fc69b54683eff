#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "dynbc/coeffs.hpp"
#include "dynbc/errors.hpp"

using namespace dynbc;

TEST_CASE("oscillating with eps = 0 equals laplace_shift") {
  const auto osc = preset_oscillating(-1.0, 0.0, 1.0);
  const auto ref = preset_laplace_shift(-1.0);
  CHECK(osc.time_constant);
  for (const auto& x : default_coefficient_samples())
    for (double t : {0.0, 0.3, 1.0, 7.5, kInfiniteTime})
      CHECK(max_abs_difference(osc.at(t, x), ref.at(t, x)) == 0.0);
}

TEST_CASE("presets validate parameters") {
  CHECK_THROWS_AS(preset_laplace_shift(0.0), InvalidParameter);
  CHECK_THROWS_AS(preset_laplace_shift(1.0), InvalidParameter);
  CHECK_THROWS_AS(preset_oscillating(-1.0, 1.0, 1.0), InvalidParameter);
  CHECK_THROWS_AS(preset_oscillating(-1.0, 0.5, 0.0), InvalidParameter);
  CHECK_THROWS_AS(preset_advection(-1.0, Vec2(1.0, 0.0)), InvalidParameter);
  CHECK_NOTHROW(preset_advection(-1.0, Vec2(0.6, 0.6)));
}

TEST_CASE("oscillating Hoelder modulus on [0, 10]") {
  const auto osc = preset_oscillating(-1.0, 0.5, 1.0);
  std::vector<double> times;
  for (int i = 0; i <= 100; ++i) times.push_back(0.1 * i);
  const double m = holder_modulus_estimate(osc, times);
  CHECK(m > 0.0);
  CHECK(m <= 1.0);
}

TEST_CASE("single pair Hoelder estimate is the one-pair quotient") {
  const auto osc = preset_oscillating(-1.0, 0.5, 1.0);
  const std::vector<double> times{0.5, 2.0};
  const double expected = 0.5 * std::abs(std::exp(-0.5) * std::sin(0.5) - std::exp(-2.0) * std::sin(2.0)) / 1.5;
  CHECK(holder_modulus_estimate(osc, times) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(holder_modulus_estimate(preset_laplace_shift(-1.0), times) == 0.0);
}

TEST_CASE("oscillating family approaches its limit monotonically at the crests") {
  // |a(t) - a_inf| = |eps| e^{-t} |sin t| is monotone along t = pi/2 + k pi.
  const auto osc = preset_oscillating(-1.0, 0.5, 1.0);
  const auto samples = default_coefficient_samples();
  double previous = limit_distance(osc, 0.5 * std::numbers::pi, samples);
  CHECK(previous == doctest::Approx(0.5 * std::exp(-0.5 * std::numbers::pi)).epsilon(1e-14));
  for (int k = 1; k <= 10; ++k) {
    const double d = limit_distance(osc, 0.5 * std::numbers::pi + k * std::numbers::pi, samples);
    CHECK(d < previous);
    previous = d;
  }
  CHECK(limit_distance(osc, kInfiniteTime, samples) == 0.0);
}

TEST_CASE("coefficient flags") {
  const auto lap = preset_laplace_shift(-2.0);
  CHECK(lap.symmetric);
  CHECK(lap.time_constant);
  CHECK(lap.coercivity_floor == 1.0);
  CHECK(preset_laplace_shift(-0.25).coercivity_floor == 0.25);
  const auto adv = preset_advection(-1.0, Vec2(0.3, 0.0));
  CHECK_FALSE(adv.symmetric);
  CHECK(preset_advection(-1.0, Vec2::Zero()).symmetric);
  CHECK_FALSE(preset_oscillating(-1.0, 0.5, 1.0).time_constant);
}

TEST_CASE("adjoint family swaps b and c and transposes a") {
  const auto adv = preset_advection(-1.0, Vec2(0.3, -0.2));
  const auto adj = adjoint_family(adv);
  const Point x(0.1, 0.2);
  const auto s = adv.at(1.0, x);
  const auto a = adj.at(1.0, x);
  CHECK(a.c == s.b);
  CHECK(a.b == s.c);
  CHECK(a.a == s.a.transpose());
  CHECK(a.d == s.d);
  const auto twice = adjoint_family(adj);
  CHECK(max_abs_difference(twice.at(2.0, x), s) == 0.0);
}
