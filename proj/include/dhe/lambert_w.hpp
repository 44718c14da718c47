#pragma once

// Multi-branch complex Lambert W: the inverse of w -> w*exp(w).
//
// Branch k follows the convention of Corless, Gonnet, Hare, Jeffrey & Knuth
// (Adv. Comput. Math. 5, 1996): the principal branch W_0 is real on
// [-1/e, inf) with a cut on (-inf, -1/e); every other branch is cut along
// (-inf, 0], and cut values are the limits from the upper half plane.
// Im(W_k) approaches 2*pi*k for large |z|.
//
// Evaluation is Halley's iteration seeded per region: a square-root series
// about the fold z = -1/e for the branches that meet there, a [2/2] Pade
// approximant of the origin series on the principal branch, and the
// two-term logarithmic asymptotic log(z) + 2*pi*i*k - log(log(z) + 2*pi*i*k)
// elsewhere.
// Convergence is decided on the residual |w*exp(w) - z|, never on step size
// alone, so returned values always satisfy the defining identity to
// 1e-12 * max(1, |z|).

#include <cmath>
#include <complex>
#include <sstream>
#include <string>

#include "dhe/errors.hpp"

namespace dhe {

using Complex = std::complex<double>;

namespace lw_detail {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kE = 2.71828182845904523536;
inline constexpr double kInvE = 0.36787944117144232160;

// Inputs within this distance of -1/e collapse to the fold value -1 on the
// two branches that meet there; the residual this introduces is below the
// contract by two orders of magnitude.
inline constexpr double kFoldSnap = 1e-15;

// Residual target; the public contract is 1e-12 relative.
inline constexpr double kTol = 1e-13;
inline constexpr int kMaxIter = 64;

// Series for W about the fold in p = +/- sqrt(2 (e z + 1)); +p gives the
// principal side, -p the W_{-1} side (and W_{+1} from below the cut).
template <typename T>
inline T fold_series(const T& p) {
  constexpr double c2 = -1.0 / 3.0;
  constexpr double c3 = 11.0 / 72.0;
  constexpr double c4 = -43.0 / 540.0;
  constexpr double c5 = 769.0 / 17280.0;
  constexpr double c6 = -221.0 / 8505.0;
  return T(-1.0) +
         p * (T(1.0) + p * (T(c2) + p * (T(c3) + p * (T(c4) + p * (T(c5) + p * T(c6))))));
}

template <typename T>
inline T residual(const T& w, const T& expw, const T& z) {
  return w * expw - z;
}

// [2/2] Pade approximant of W_0 about z = 0 (matches the series through
// z^5); usable as a seed well beyond the 1/e convergence radius of the
// series itself.
template <typename T>
inline T pade_origin(const T& z) {
  const T num = T(1.0) + z * (T(19.0 / 10.0) + z * T(17.0 / 60.0));
  const T den = T(1.0) + z * (T(29.0 / 10.0) + z * T(101.0 / 60.0));
  return z * num / den;
}

// One Halley step; r = w*exp(w) - z must be the current residual.
template <typename T>
inline T halley_step(const T& w, const T& expw, const T& r) {
  const T w1 = w + T(1.0);
  return w - r / (expw * w1 - (w + T(2.0)) * r / (T(2.0) * w1));
}

template <typename T>
inline double tolerance_for(const T& z) {
  return kTol * std::max(1.0, std::abs(z));
}

template <typename T>
inline T iterate(T w, const T& z, int branch) {
  for (int i = 0; i < kMaxIter; ++i) {
    const T expw = std::exp(w);
    const T r = residual(w, expw, z);
    if (std::abs(r) <= tolerance_for(z)) {
      // One polishing step: the residual criterion alone can leave w a few
      // orders above machine precision where W is badly conditioned in z
      // (tiny |z| on outer branches).
      return halley_step(w, expw, r);
    }
    w = halley_step(w, expw, r);
  }
  std::ostringstream msg;
  msg << "lambert_w: no convergence after " << kMaxIter << " iterations on branch "
      << branch << " at z = " << z;
  throw NumericError(msg.str());
}

inline std::string domain_message(int k, const std::string& detail) {
  std::ostringstream msg;
  msg << "lambert_w: branch " << k << ": " << detail;
  return msg.str();
}

}  // namespace lw_detail

// Real-restricted fast path. Branch 0 needs x >= -1/e, branch -1 needs
// -1/e <= x < 0; anything else has no real value.
inline double lambert_w_real(int k, double x) {
  using namespace lw_detail;
  if (k != 0 && k != -1)
    throw DomainError(domain_message(k, "no real-valued branch"));

  const double d = x + kInvE;  // distance past the fold
  if (d < -kFoldSnap)
    throw DomainError(domain_message(k, "x < -1/e has no real solution"));
  if (d <= kFoldSnap) return -1.0;

  double w0;
  if (k == 0) {
    if (x == 0.0) return 0.0;
    if (d < 0.3) {
      w0 = fold_series(std::sqrt(2.0 * kE * d));
    } else if (x <= 3.5) {
      w0 = pade_origin(x);
    } else {
      const double l1 = std::log(x);
      const double l2 = std::log(l1);
      w0 = l1 - l2 + l2 / l1;
    }
  } else {  // k == -1
    if (x >= 0.0)
      throw DomainError(domain_message(k, "real values exist only on [-1/e, 0)"));
    if (d < 0.3) {
      w0 = fold_series(-std::sqrt(2.0 * kE * d));
    } else {
      const double lx = std::log(-x);
      w0 = lx - std::log(-lx);
    }
  }
  return iterate(w0, x, k);
}

// Full complex evaluation on branch k. On the branch cuts the value is the
// limit from the upper half plane (an input imaginary part of -0.0 is
// treated as on-cut, not below it).
inline Complex lambert_w(int k, Complex z) {
  using namespace lw_detail;
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw DomainError(domain_message(k, "z must be finite"));
  if (z.imag() == 0.0) z = Complex(z.real(), 0.0);

  if (z == Complex(0.0, 0.0)) {
    if (k == 0) return Complex(0.0, 0.0);
    throw DomainError(domain_message(k, "z = 0 is a logarithmic singularity"));
  }

  // Real-axis segments where the branch is real-valued.
  if (z.imag() == 0.0) {
    const double x = z.real();
    if (k == 0 && x >= -kInvE - kFoldSnap) return Complex(lambert_w_real(0, x), 0.0);
    if (k == -1 && x < 0.0 && x >= -kInvE - kFoldSnap)
      return Complex(lambert_w_real(-1, x), 0.0);
  }

  Complex w0;
  const Complex d = z + kInvE;
  const bool fold_side = (k == 0) || (k == -1 && z.imag() >= 0.0) || (k == 1 && z.imag() < 0.0);
  // The Pade seed has poles at -0.477 and -1.246 on the cut, so beyond
  // |z| = 0.3 its trust region is bounded away from the cut by angle; the
  // wedge around the cut belongs to the fold series or, further out, to the
  // asymptotic seed (there |log z| >= 2.6, within its range).
  const bool pade_zone =
      k == 0 && (std::abs(z) <= 0.3 ||
                 (std::abs(z) <= 3.5 && std::abs(std::arg(z)) <= 2.6));
  if (std::abs(d) < 0.3 && fold_side) {
    const Complex p = std::sqrt(2.0 * kE * d);
    w0 = fold_series(k == 0 ? p : -p);
  } else if (pade_zone) {
    w0 = pade_origin(z);
  } else {
    const Complex l1 = std::log(z) + Complex(0.0, 2.0 * kPi * k);
    const Complex l2 = std::log(l1);
    w0 = l1 - l2 + l2 / l1;
  }

  const Complex w = iterate(w0, z, k);

  // Guard against the iteration crossing into a neighboring branch: a
  // generous Im window per branch, and for the principal branch also the
  // region boundary curve {-eta*cot(eta) + i*eta}, which separates W_0 from
  // the log-type roots that share its Im window near the cut.
  bool in_branch;
  if (k == 0) {
    const double eta = std::abs(w.imag());
    in_branch = eta < kPi + 0.5;
    if (in_branch && eta > 1e-9) {
      const double boundary_re = -eta * std::cos(eta) / std::sin(eta);
      in_branch = w.real() >= boundary_re - 0.5;
    } else if (in_branch) {
      in_branch = w.real() >= -1.5;
    }
  } else if (k > 0) {
    in_branch = w.imag() > (2 * k - 2) * kPi - 0.5 && w.imag() < (2 * k + 1) * kPi + 0.5;
  } else {
    in_branch = w.imag() > (2 * k - 1) * kPi - 0.5 && w.imag() < (2 * k + 2) * kPi + 0.5;
  }
  if (!in_branch) {
    std::ostringstream msg;
    msg << "lambert_w: branch " << k << " iteration left its strip at z = " << z
        << " (w = " << w << ")";
    throw NumericError(msg.str());
  }
  return w;
}

}  // namespace dhe
