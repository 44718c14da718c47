#pragma once

// Initial-history data for the delayed evolution: the solution must be
// prescribed on the whole band t in [-tau, 0] before stepping can start.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "dhe/errors.hpp"

namespace dhe {

// Spatial profile f(x) on [0, L]: either a named analytic form or sampled
// nodes interpolated piecewise-linearly.
class SpatialProfile {
public:
  struct SineTerm {
    int n;             // mode index of sin(n*pi*x/L)
    double amplitude;
  };

  static SpatialProfile sine(int n, double amplitude = 1.0) {
    SpatialProfile p;
    p.form_ = Form::SineSum;
    p.sine_terms_ = {{n, amplitude}};
    return p;
  }

  static SpatialProfile sine_sum(std::vector<SineTerm> terms) {
    SpatialProfile p;
    p.form_ = Form::SineSum;
    p.sine_terms_ = std::move(terms);
    return p;
  }

  /// amplitude * x * (L - x); vanishes at both ends by construction.
  static SpatialProfile parabola(double amplitude = 1.0) {
    SpatialProfile p;
    p.form_ = Form::Parabola;
    p.amplitude_ = amplitude;
    return p;
  }

  // Piecewise-linear through (x_i, v_i); x strictly increasing. Sampled
  // arrays over a uniform x grid reduce to this.
  static SpatialProfile piecewise_linear(std::vector<double> xs, std::vector<double> values) {
    if (xs.size() != values.size() || xs.size() < 2)
      throw DomainError("SpatialProfile: piecewise_linear needs >= 2 matching nodes");
    for (std::size_t i = 1; i < xs.size(); ++i)
      if (!(xs[i] > xs[i - 1]))
        throw DomainError("SpatialProfile: piecewise_linear nodes must be strictly increasing");
    SpatialProfile p;
    p.form_ = Form::PiecewiseLinear;
    p.xs_ = std::move(xs);
    p.values_ = std::move(values);
    return p;
  }

  static SpatialProfile zero() { return sine_sum({}); }

  double operator()(double x, double L) const {
    switch (form_) {
      case Form::SineSum: {
        double sum = 0.0;
        for (const auto& term : sine_terms_)
          sum += term.amplitude * std::sin(term.n * kPi * x / L);
        return sum;
      }
      case Form::Parabola:
        return amplitude_ * x * (L - x);
      case Form::PiecewiseLinear: {
        if (x <= xs_.front()) return values_.front();
        if (x >= xs_.back()) return values_.back();
        const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
        const std::size_t i = static_cast<std::size_t>(it - xs_.begin());
        const double t = (x - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
        return values_[i - 1] + t * (values_[i] - values_[i - 1]);
      }
    }
    return 0.0;
  }

  const std::vector<SineTerm>& sine_terms() const { return sine_terms_; }
  bool is_sine_sum() const { return form_ == Form::SineSum; }

private:
  enum class Form { SineSum, Parabola, PiecewiseLinear };

  SpatialProfile() = default;

  static constexpr double kPi = 3.14159265358979323846;

  Form form_ = Form::SineSum;
  std::vector<SineTerm> sine_terms_;
  double amplitude_ = 0.0;
  std::vector<double> xs_, values_;
};

enum class HistoryKind { ConstantInTime, Sampled };

// History band u(x, t) for t in [-tau, 0]. ConstantInTime holds the profile
// fixed over the band (the prescribed-f case); Sampled carries a matrix of
// samples on uniform grids over [0, L] x [-tau, 0] and is supported only by
// the finite-difference solver.
struct HistorySpec {
  HistoryKind kind = HistoryKind::ConstantInTime;
  SpatialProfile profile = SpatialProfile::zero();

  // Sampled data: values[j * nx + i] at x_i = i*L/(nx-1), t_j = -tau + j*tau/(nt-1).
  int sample_nx = 0;
  int sample_nt = 0;
  std::vector<double> samples;

  static HistorySpec constant(SpatialProfile f) {
    HistorySpec h;
    h.kind = HistoryKind::ConstantInTime;
    h.profile = std::move(f);
    return h;
  }

  static HistorySpec sampled(int nx, int nt, std::vector<double> values) {
    if (nx < 2 || nt < 1 || values.size() != static_cast<std::size_t>(nx) * nt)
      throw DomainError("HistorySpec: sampled data dimensions are inconsistent");
    HistorySpec h;
    h.kind = HistoryKind::Sampled;
    h.sample_nx = nx;
    h.sample_nt = nt;
    h.samples = std::move(values);
    return h;
  }

  // Bilinear interpolation of the band; t is clamped to [-tau, 0].
  double value(double x, double t, double L, double tau) const {
    if (kind == HistoryKind::ConstantInTime) return profile(x, L);
    const double xi = std::clamp(x / L, 0.0, 1.0) * (sample_nx - 1);
    const double ti = (sample_nt == 1 || tau == 0.0)
                          ? 0.0
                          : std::clamp((t + tau) / tau, 0.0, 1.0) * (sample_nt - 1);
    const int i0 = std::min(static_cast<int>(xi), sample_nx - 2);
    const int j0 = std::min(static_cast<int>(ti), std::max(sample_nt - 2, 0));
    const double fx = xi - i0;
    const double ft = ti - j0;
    const auto at = [&](int j, int i) { return samples[static_cast<std::size_t>(j) * sample_nx + i]; };
    if (sample_nt == 1) return (1.0 - fx) * at(0, i0) + fx * at(0, i0 + 1);
    const double lo = (1.0 - fx) * at(j0, i0) + fx * at(j0, i0 + 1);
    const double hi = (1.0 - fx) * at(j0 + 1, i0) + fx * at(j0 + 1, i0 + 1);
    return (1.0 - ft) * lo + ft * hi;
  }

  // The profile at t = 0 (what the evolution starts from).
  double initial_value(double x, double L, double tau) const { return value(x, 0.0, L, tau); }

  // Dirichlet compatibility: f(0) = f(L) = 0 within tolerance, scaled by the
  // profile's own magnitude sampled over the interior.
  void check_boundary_compatibility(double L, double tau) const {
    double peak = 0.0;
    for (int i = 1; i < 64; ++i)
      peak = std::max(peak, std::abs(initial_value(L * i / 64.0, L, tau)));
    const double tol = 1e-9 * std::max(1.0, peak);
    const double left = std::abs(initial_value(0.0, L, tau));
    const double right = std::abs(initial_value(L, L, tau));
    if (left > tol || right > tol) {
      std::ostringstream msg;
      msg << "history profile violates u(0)=u(L)=0: |f(0)| = " << left << ", |f(L)| = " << right
          << " (tolerance " << tol << ")";
      throw DomainError(msg.str());
    }
  }
};

}  // namespace dhe
