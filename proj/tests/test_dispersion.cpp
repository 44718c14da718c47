#include "dhe/dispersion.hpp"

#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <random>

#include "support/oracles.hpp"

using dhe::a_from_b_advection;
using dhe::a_from_b_heat;
using dhe::Complex;
using dhe::dispersion_residual_advection;
using dhe::dispersion_residual_heat;
using dhe::PhysicalParams;
using dhe::RatePair;

namespace {
bool matches_as_set(std::vector<Complex> got, std::vector<Complex> want, double tol) {
  if (got.size() != want.size()) return false;
  for (const Complex& w : want) {
    const auto it = std::min_element(got.begin(), got.end(), [&](Complex a, Complex b) {
      return std::abs(a - w) < std::abs(b - w);
    });
    if (it == got.end() || std::abs(*it - w) > tol) return false;
    got.erase(it);
  }
  return true;
}
}  // namespace

TEST_CASE("a_from_b_heat spot values") {
  CHECK(matches_as_set(a_from_b_heat({1.0, 0.0, 0.0}, 1.0), {{1.0, 0.0}, {-1.0, 0.0}}, 1e-15));
  const double e = std::exp(1.0);
  CHECK(matches_as_set(a_from_b_heat({1.0, 2.0, 0.0}, 1.0), {{e, 0.0}, {-e, 0.0}}, 1e-14));
  CHECK(matches_as_set(a_from_b_heat({4.0, 0.0, 0.0}, -1.0), {{0.0, 0.5}, {0.0, -0.5}}, 1e-15));

  const auto degenerate = a_from_b_heat({1.0, 1.0, 0.0}, 0.0);
  REQUIRE(degenerate.size() == 1);
  CHECK(degenerate[0] == Complex(0.0, 0.0));

  CHECK_THROWS_AS(a_from_b_heat({1.0, 0.0, 0.5}, 1.0), dhe::DomainError);
}

TEST_CASE("dispersion_residual_heat spot values") {
  CHECK(dispersion_residual_heat({1.0, 0.0, 0.0}, {{1.0, 0.0}, {1.0, 0.0}}) == 0.0);
  const double sqrt_e = std::sqrt(std::exp(1.0));
  CHECK(dispersion_residual_heat({1.0, 1.0, 0.0}, {{sqrt_e, 0.0}, {1.0, 0.0}}) < 1e-15);
  CHECK(dispersion_residual_heat({1.0, 1.0, 0.0}, {{1.0, 0.0}, {1.0, 0.0}}) ==
        Catch::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
}

TEST_CASE("a_from_b_advection spot values") {
  // eps = 0 reduces to the pure diffusion rates
  CHECK(matches_as_set(a_from_b_advection({1.0, 0.0, 0.0}, 1.0), {{1.0, 0.0}, {-1.0, 0.0}},
                       1e-15));
  // factorable quadratic a^2 - 3a + 2
  CHECK(matches_as_set(a_from_b_advection({1.0, 0.0, 3.0}, -2.0), {{1.0, 0.0}, {2.0, 0.0}},
                       1e-14));

  // residual check against the quadratic-formula oracle
  const PhysicalParams params{1.0, 1.0, 1.0};
  const auto roots = a_from_b_advection(params, 1.0);
  const auto oracle = testsupport::quadratic_roots(1.0, -1.0, -std::exp(1.0));
  CHECK(matches_as_set(roots, {oracle[0], oracle[1]}, 1e-12));
  for (const Complex& r : roots) {
    CHECK(std::abs(r * r - r - std::exp(1.0)) <= 1e-12);
    CHECK(dispersion_residual_advection(params, {r, {1.0, 0.0}}) <= 1e-12);
  }
}

TEST_CASE("dispersion_residual_advection spot values") {
  CHECK(dispersion_residual_advection({1.0, 0.0, 0.0}, {{1.0, 0.0}, {1.0, 0.0}}) == 0.0);
  CHECK(dispersion_residual_advection({1.0, 0.0, 2.0}, {{2.0, 0.0}, {0.0, 0.0}}) == 0.0);
  CHECK(dispersion_residual_advection({2.0, 1.0, 1.0}, {{1.0, 0.0}, {1.0, 0.0}}) ==
        Catch::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
}

TEST_CASE("dispersion residual property over random draws") {
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> uD(0.1, 5.0);
  std::uniform_real_distribution<double> uTau(0.0, 2.0);
  std::uniform_real_distribution<double> uB(-3.0, 3.0);
  std::uniform_real_distribution<double> uEps(0.0, 3.0);

  for (int i = 0; i < 1000; ++i) {
    const double D = uD(rng), tau = uTau(rng), b = uB(rng);
    const double scale = std::max(1.0, std::abs(b * std::exp(b * tau)));

    const PhysicalParams heat{D, tau, 0.0};
    for (const Complex& a : a_from_b_heat(heat, b)) {
      CHECK(dispersion_residual_heat(heat, {a, {b, 0.0}}) <= 1e-12 * scale);
      if (b > 0.0) CHECK(a.imag() == 0.0);
      if (b < 0.0) {
        CHECK(a.real() == 0.0);
        CHECK(a.imag() != 0.0);
      }
    }

    const double eps = uEps(rng);
    const PhysicalParams adv{D, tau, eps};
    const auto roots = a_from_b_advection(adv, b);
    REQUIRE(roots.size() == 2);
    for (const Complex& a : roots)
      CHECK(dispersion_residual_advection(adv, {a, {b, 0.0}}) <= 1e-12 * scale);

    // ordering a_minus < 0 < a_plus with the positive root dominating
    if (b > 0.0 && eps > 0.0) {
      CHECK(roots[0].real() > 0.0);
      CHECK(roots[1].real() < 0.0);
      CHECK(roots[0].real() > std::abs(roots[1].real()));
      CHECK(roots[0].imag() == 0.0);
      CHECK(roots[1].imag() == 0.0);
    }
  }
}

TEST_CASE("advection rates reduce to diffusion rates as eps -> 0") {
  std::mt19937 rng(555);
  std::uniform_real_distribution<double> uD(0.1, 5.0);
  std::uniform_real_distribution<double> uTau(0.0, 2.0);
  std::uniform_real_distribution<double> uB(-3.0, 3.0);
  for (int i = 0; i < 300; ++i) {
    const double D = uD(rng), tau = uTau(rng);
    double b = uB(rng);
    if (b == 0.0) b = 0.5;
    const auto heat = a_from_b_heat({D, tau, 0.0}, b);
    const auto adv = a_from_b_advection({D, tau, 0.0}, b);
    const double scale = std::max(1.0, std::abs(heat[0]));
    CHECK(matches_as_set(adv, heat, 1e-12 * scale));
  }
}

TEST_CASE("residual operations accept complex temporal rates") {
  // residuals are defined for complex b even though a_from_b is real-only
  const PhysicalParams params{1.0, 1.0, 0.0};
  const Complex b(-0.3, 1.2);
  const Complex a = std::sqrt(b * std::exp(b * params.tau) / params.D);
  CHECK(dispersion_residual_heat(params, {a, b}) < 1e-14);
}
