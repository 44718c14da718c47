#pragma once

// Exact modal solver for the Dirichlet problem. The sine modes sin(n*pi*x/L)
// diagonalize the equation; each modal amplitude obeys the scalar delayed
// relation T'(t) = -lambda_n * T(t - tau), which the method of steps
// integrates exactly: on each interval [(m-1)*tau, m*tau] the right-hand
// side is the previous interval's polynomial, so T is itself a polynomial
// of one higher degree. The only approximation in the whole pipeline is the
// sine-series truncation of the initial profile.
//
// Also provides the closed-form exponential families
//   b > 0:  exp(b t) * [A1 cosh(a_plus x) + A2 sinh(a_plus x)]
//   b < 0:  exp(b t) * [B1 cos(a_minus x) + B2 sin(a_minus x)]
// with the spatial rate tied to b through the dispersion relation.

#include <cmath>
#include <cstddef>
#include <sstream>
#include <vector>

#include "dhe/dispersion.hpp"
#include "dhe/errors.hpp"
#include "dhe/field.hpp"
#include "dhe/problem.hpp"
#include "dhe/spectrum.hpp"

namespace dhe {

struct ModalCoefficients {
  std::vector<double> c;  // c[i] multiplies sin((i+1)*pi*x/L)

  double coefficient(int n) const {
    return (n >= 1 && n <= static_cast<int>(c.size())) ? c[n - 1] : 0.0;
  }
};

namespace solver_detail {

inline constexpr int kDefaultQuadratureNodes = 2049;  // composite Simpson, odd
inline constexpr int kSegmentCap = 10000;

// Sine basis with structurally exact zeros at both walls, so superpositions
// satisfy the boundary conditions identically rather than to rounding.
inline double sine_basis(int n, double x, double L) {
  if (x == 0.0 || x == L) return 0.0;
  return std::sin(n * kPi * x / L);
}

}  // namespace solver_detail

// Sine coefficients c_n = (2/L) * integral of f(x) sin(n pi x / L) over
// [0, L], by composite Simpson quadrature. The profile must satisfy the
// Dirichlet compatibility f(0) = f(L) = 0.
inline ModalCoefficients sine_decompose(const Problem& problem, const HistorySpec& f,
                                        int quadrature_nodes = solver_detail::kDefaultQuadratureNodes) {
  problem.validate();
  if (quadrature_nodes < 3 || quadrature_nodes % 2 == 0)
    throw DomainError("sine_decompose: quadrature node count must be odd and >= 3");
  f.check_boundary_compatibility(problem.L, problem.params.tau);

  const int segments = quadrature_nodes - 1;
  const double h = problem.L / segments;
  std::vector<double> fx(quadrature_nodes);
  for (int i = 0; i < quadrature_nodes; ++i)
    fx[i] = f.initial_value(i * h, problem.L, problem.params.tau);

  ModalCoefficients out;
  out.c.resize(problem.n_max);
  for (int n = 1; n <= problem.n_max; ++n) {
    double sum = 0.0;
    for (int i = 0; i < quadrature_nodes; ++i) {
      const double w = (i == 0 || i == quadrature_nodes - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      sum += w * fx[i] * solver_detail::sine_basis(n, i * h, problem.L);
    }
    out.c[n - 1] = (2.0 / problem.L) * sum * h / 3.0;
  }
  return out;
}

// One modal amplitude under constant history, as method-of-steps polynomial
// segments. Segment m covers t in [(m-1)*tau, m*tau] and stores coefficients
// in the local variable s = t - (m-1)*tau.
class ModeTrajectory {
public:
  ModeTrajectory(Mode mode, PhysicalParams params, double history_value, double t_end)
      : mode_(mode), params_(params), c0_(history_value) {
    params_.validate();
    if (!(params_.tau > 0.0))
      throw DomainError("ModeTrajectory: requires tau > 0");
    if (!(t_end > 0.0)) throw DomainError("ModeTrajectory: t_end must be > 0");

    const double tau = params_.tau;
    const int segments = static_cast<int>(std::ceil(t_end / tau - 1e-12));
    if (segments > solver_detail::kSegmentCap) {
      std::ostringstream msg;
      msg << "ModeTrajectory: t_end = " << t_end << " needs " << segments
          << " delay intervals, above the cap of " << solver_detail::kSegmentCap;
      throw ResourceError(msg.str());
    }

    // Degree where the segment coefficients |c0| * (lambda*tau)^j / j! have
    // fallen below any representable contribution.
    const double growth = mode_.lambda_n * tau;
    const int degree_cap = std::max(32, static_cast<int>(std::ceil(8.0 * growth)));

    segments_.reserve(static_cast<std::size_t>(segments));
    std::vector<double> prev = {c0_};
    for (int m = 1; m <= segments; ++m) {
      std::vector<double> cur(std::min<std::size_t>(prev.size() + 1,
                                                    static_cast<std::size_t>(degree_cap) + 1));
      cur[0] = eval_poly(prev, tau);  // continuity with the previous segment
      for (std::size_t j = 0; j + 1 < cur.size(); ++j)
        cur[j + 1] = -mode_.lambda_n * prev[j] / static_cast<double>(j + 1);
      segments_.push_back(cur);
      prev = std::move(cur);
    }
  }

  const Mode& mode() const { return mode_; }
  double history_value() const { return c0_; }
  std::size_t segment_count() const { return segments_.size(); }

  const std::vector<double>& segment_coefficients(std::size_t m) const {
    return segments_.at(m);
  }

  // T(t): history value for t <= 0, Horner evaluation of the owning segment
  // otherwise.
  double value(double t) const {
    if (t <= 0.0) return c0_;
    const double tau = params_.tau;
    std::size_t m = static_cast<std::size_t>(t / tau);
    if (m >= segments_.size()) {
      if (t <= segments_.size() * tau * (1.0 + 1e-12)) {
        m = segments_.size() - 1;
      } else {
        std::ostringstream msg;
        msg << "ModeTrajectory: t = " << t << " beyond computed horizon "
            << segments_.size() * tau;
        throw StateError(msg.str());
      }
    }
    return eval_poly(segments_[m], t - static_cast<double>(m) * tau);
  }

private:
  static double eval_poly(const std::vector<double>& coeff, double s) {
    double acc = 0.0;
    for (std::size_t j = coeff.size(); j-- > 0;) acc = acc * s + coeff[j];
    return acc;
  }

  Mode mode_;
  PhysicalParams params_;
  double c0_;
  std::vector<std::vector<double>> segments_;
};

inline ModeTrajectory evolve_mode(const Mode& mode, const PhysicalParams& params, double c,
                                  double t_end) {
  return ModeTrajectory(mode, params, c, t_end);
}

// Full space-time solution u(x, t) = sum_n T_n(t) sin(n pi x / L) at the
// requested sample points. For tau = 0 the modal amplitudes are the
// classical exponentials. Times inside [-tau, 0] return the (truncated)
// history profile.
inline Field solve_ibvp(const Problem& problem, const std::vector<double>& t_samples,
                        const std::vector<double>& x_samples) {
  problem.validate();
  if (problem.history.kind != HistoryKind::ConstantInTime)
    throw DomainError(
        "solve_ibvp: sampled histories are supported only by the finite-difference solver");

  const ModalCoefficients coeff = sine_decompose(problem, problem.history);
  double t_end = 0.0;
  for (double t : t_samples) t_end = std::max(t_end, t);

  const double tau = problem.params.tau;
  std::vector<ModeTrajectory> trajectories;
  if (tau > 0.0 && t_end > 0.0) {
    trajectories.reserve(static_cast<std::size_t>(problem.n_max));
    for (int n = 1; n <= problem.n_max; ++n)
      trajectories.emplace_back(Mode::make(n, problem.L, problem.params), problem.params,
                                coeff.coefficient(n), t_end);
  }

  Field field;
  field.x = x_samples;
  field.t = t_samples;
  field.u.assign(t_samples.size() * x_samples.size(), 0.0);

  for (std::size_t j = 0; j < t_samples.size(); ++j) {
    const double t = t_samples[j];
    for (int n = 1; n <= problem.n_max; ++n) {
      double amplitude;
      if (t <= 0.0) {
        amplitude = coeff.coefficient(n);
      } else if (tau == 0.0) {
        const Mode mode = Mode::make(n, problem.L, problem.params);
        amplitude = coeff.coefficient(n) * std::exp(-mode.lambda_n * t);
      } else {
        amplitude = trajectories[static_cast<std::size_t>(n - 1)].value(t);
      }
      if (amplitude == 0.0) continue;
      for (std::size_t i = 0; i < x_samples.size(); ++i)
        field.at(j, i) += amplitude * solver_detail::sine_basis(n, x_samples[i], problem.L);
    }
  }
  return field;
}

// Closed-form exponential-type solution for one real temporal rate b != 0.
// The hyperbolic pair carries b > 0 (unbounded in time), the trigonometric
// pair carries b < 0 (decaying); the spatial rate comes from the pure
// diffusion dispersion relation.
class ExponentialSolution {
public:
  ExponentialSolution(PhysicalParams params, double b, double coef_cosh, double coef_sinh,
                      double coef_cos, double coef_sin)
      : params_(params), b_(b), a1_(coef_cosh), a2_(coef_sinh), b1_(coef_cos), b2_(coef_sin) {
    params_.validate();
    if (params_.epsilon != 0.0)
      throw DomainError("ExponentialSolution: advection families are not constructed here");
    if (b == 0.0) throw DomainError("ExponentialSolution: b = 0 is the trivial family");
    spatial_rate_ = std::sqrt(std::abs(b) / params_.D) * std::exp(b * params_.tau / 2.0);
  }

  double operator()(double x, double t) const {
    const double spatial =
        b_ > 0.0 ? a1_ * std::cosh(spatial_rate_ * x) + a2_ * std::sinh(spatial_rate_ * x)
                 : b1_ * std::cos(spatial_rate_ * x) + b2_ * std::sin(spatial_rate_ * x);
    return std::exp(b_ * t) * spatial;
  }

  double temporal_rate() const { return b_; }
  double spatial_rate() const { return spatial_rate_; }

private:
  PhysicalParams params_;
  double b_;
  double a1_, a2_, b1_, b2_;
  double spatial_rate_;
};

struct ExponentialCoefficients {
  double cosh_coef = 0.0;  // A1, used for b > 0
  double sinh_coef = 0.0;  // A2, used for b > 0
  double cos_coef = 0.0;   // B1, used for b < 0
  double sin_coef = 0.0;   // B2, used for b < 0
};

inline ExponentialSolution construct_exponential(const PhysicalParams& params, double b,
                                                 const ExponentialCoefficients& coeffs) {
  return ExponentialSolution(params, b, coeffs.cosh_coef, coeffs.sinh_coef, coeffs.cos_coef,
                             coeffs.sin_coef);
}

}  // namespace dhe
