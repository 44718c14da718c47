#pragma once

// Algebra linking the temporal rate b and spatial rate a of exponential
// solutions exp(a*x + b*t):
//
//   pure delayed diffusion:    b * exp(b*tau) = D * a^2
//   delayed advection-diffusion: D * a^2 - eps * a - b * exp(b*tau) = 0

#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "dhe/errors.hpp"
#include "dhe/lambert_w.hpp"

namespace dhe {

struct PhysicalParams {
  double D = 1.0;        // diffusivity, length^2 / time
  double tau = 0.0;      // response delay, time
  double epsilon = 0.0;  // advection speed, length / time

  void validate() const {
    if (!(D > 0.0)) throw DomainError("PhysicalParams: D must be > 0");
    if (!(tau >= 0.0)) throw DomainError("PhysicalParams: tau must be >= 0");
    if (!(epsilon >= 0.0)) throw DomainError("PhysicalParams: epsilon must be >= 0");
  }
};

// A spatial/temporal exponent pair; valid instances satisfy the governing
// dispersion relation (see the residual functions).
struct RatePair {
  Complex a;
  Complex b;
};

/// |b*exp(b*tau) - D*a^2| for the pure diffusion relation.
inline double dispersion_residual_heat(const PhysicalParams& params, const RatePair& pair) {
  const Complex lhs = pair.b * std::exp(pair.b * params.tau);
  const Complex rhs = params.D * pair.a * pair.a;
  return std::abs(lhs - rhs);
}

/// |D*a^2 - eps*a - b*exp(b*tau)| for the advection-diffusion relation.
inline double dispersion_residual_advection(const PhysicalParams& params, const RatePair& pair) {
  const Complex value = params.D * pair.a * pair.a - params.epsilon * pair.a -
                        pair.b * std::exp(pair.b * params.tau);
  return std::abs(value);
}

// Spatial rates of the pure delayed heat equation for a real temporal rate.
// b > 0 gives the real pair +/- sqrt(b/D) * exp(b*tau/2); b < 0 gives the
// purely imaginary pair +/- i * sqrt(|b|/D) * exp(-|b|*tau/2). b = 0
// degenerates to the double root a = 0, returned as a singleton.
inline std::vector<Complex> a_from_b_heat(const PhysicalParams& params, double b) {
  params.validate();
  if (params.epsilon != 0.0)
    throw DomainError("a_from_b_heat: requires epsilon = 0 (use a_from_b_advection)");
  if (b == 0.0) return {Complex(0.0, 0.0)};

  const double magnitude = std::sqrt(std::abs(b) / params.D) * std::exp(b * params.tau / 2.0);
  if (b > 0.0) return {Complex(magnitude, 0.0), Complex(-magnitude, 0.0)};
  return {Complex(0.0, magnitude), Complex(0.0, -magnitude)};
}

// The two roots of D*a^2 - eps*a - b*exp(b*tau) = 0 for real b. Real roots
// are ordered {a_plus, a_minus}; a negative discriminant yields a conjugate
// pair {a, conj(a)}. The smaller-magnitude real root comes from the Vieta
// product to avoid cancellation.
inline std::vector<Complex> a_from_b_advection(const PhysicalParams& params, double b) {
  params.validate();
  const double forcing = b * std::exp(b * params.tau);  // b e^{b tau}
  const double disc = params.epsilon * params.epsilon + 4.0 * params.D * forcing;

  if (disc < 0.0) {
    const double re = params.epsilon / (2.0 * params.D);
    const double im = std::sqrt(-disc) / (2.0 * params.D);
    return {Complex(re, im), Complex(re, -im)};
  }

  const double sq = std::sqrt(disc);
  const double a_plus = (params.epsilon + sq) / (2.0 * params.D);
  double a_minus;
  if (a_plus != 0.0) {
    a_minus = -forcing / (params.D * a_plus);
  } else {
    a_minus = 0.0;  // eps = 0 and b e^{b tau} = 0: double root at the origin
  }
  return {Complex(a_plus, 0.0), Complex(a_minus, 0.0)};
}

}  // namespace dhe
