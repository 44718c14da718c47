#pragma once

// Temporal spectrum of the Dirichlet modes of the delayed heat equation.
//
// Mode n has wavenumber k_n = n*pi/L and classical decay rate
// lambda_n = D*k_n^2. With delay tau its characteristic equation is
//
//   tau * b * exp(b*tau) = -q_n,   q_n = tau * lambda_n,
//
// whose full complex root set is b_k = W_k(-q_n) / tau over the integer
// branches of the Lambert W function. All roots have negative real parts
// exactly when 0 < q_n < pi/2; since q_n grows like n^2, every tau > 0
// problem has a finite mode index beyond which the modes are unstable.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "dhe/errors.hpp"
#include "dhe/lambert_w.hpp"
#include "dhe/problem.hpp"

namespace dhe {

inline constexpr double kPi = 3.14159265358979323846;

struct Mode {
  int n = 1;            // mode index, n >= 1
  double k_n = 0.0;     // wavenumber n*pi/L
  double lambda_n = 0.0;  // classical decay rate D*k_n^2
  double q_n = 0.0;     // delay product tau*lambda_n

  static Mode make(int n, double L, const PhysicalParams& params) {
    if (n < 1) throw DomainError("Mode: index must be >= 1");
    if (!(L > 0.0)) throw DomainError("Mode: L must be > 0");
    params.validate();
    Mode m;
    m.n = n;
    m.k_n = n * kPi / L;
    m.lambda_n = params.D * m.k_n * m.k_n;
    m.q_n = params.tau * m.lambda_n;
    return m;
  }
};

enum class Regime {
  Classical,         // tau = 0: plain exponential decay at -lambda_n
  RealDecay,         // 0 < q <= 1/e: dominant pair of roots real, decaying
  OscillatoryDecay,  // 1/e < q < pi/2: dominant pair complex, decaying
  Marginal,          // q = pi/2 within band: dominant roots +/- i*pi/(2 tau)
  Unstable           // q > pi/2: dominant root has positive real part
};

inline std::string to_string(Regime r) {
  switch (r) {
    case Regime::Classical: return "CLASSICAL";
    case Regime::RealDecay: return "REAL_DECAY";
    case Regime::OscillatoryDecay: return "OSCILLATORY_DECAY";
    case Regime::Marginal: return "MARGINAL";
    case Regime::Unstable: return "UNSTABLE";
  }
  return "?";
}

// Relative half-width of the marginal band around q = pi/2; classification
// must be deterministic, and exact equality is measure zero.
inline constexpr double kMarginalBand = 1e-9;

// Classify by the q < pi/2 criterion and cross-check against the computed
// rightmost real part; a disagreement outside the marginal band means the
// root computation itself is wrong, which is an internal error, not an
// input error. The subdivision of the stable range at q = 1/e (real versus
// oscillatory decay) refines the criterion: it is where the dominant pair
// leaves the real axis.
inline Regime classify_regime(double q, double rightmost_re, double tol = kMarginalBand) {
  if (!(q >= 0.0)) throw DomainError("classify_regime: q must be >= 0");
  constexpr double kHalfPi = kPi / 2.0;
  constexpr double kInvE = 0.36787944117144232160;

  Regime by_q;
  if (std::abs(q - kHalfPi) <= tol * kHalfPi) {
    by_q = Regime::Marginal;
  } else if (q > kHalfPi) {
    by_q = Regime::Unstable;
  } else if (q > kInvE) {
    by_q = Regime::OscillatoryDecay;
  } else {
    by_q = Regime::RealDecay;
  }

  if (by_q == Regime::Unstable && !(rightmost_re > 0.0)) {
    std::ostringstream msg;
    msg << "classify_regime: q = " << q << " > pi/2 but rightmost Re(b) = " << rightmost_re
        << " is not positive";
    throw NumericError(msg.str());
  }
  if ((by_q == Regime::RealDecay || by_q == Regime::OscillatoryDecay) && !(rightmost_re < 0.0)) {
    std::ostringstream msg;
    msg << "classify_regime: q = " << q << " < pi/2 but rightmost Re(b) = " << rightmost_re
        << " is not negative";
    throw NumericError(msg.str());
  }
  return by_q;
}

// Characteristic roots of one mode across Lambert W branches, keyed by
// branch index. The enumeration window is {-K-1, ..., K} rather than the
// symmetric {-K, ..., K}: on the negative real axis the conjugate partner
// of branch k >= 0 is branch -k-1, so the extra low branch makes the set
// exactly closed under conjugation.
struct RootSet {
  Mode mode;
  std::map<int, Complex> roots;
  Regime regime = Regime::Classical;

  // Root with the largest real part; branch 0 by construction.
  Complex dominant() const { return roots.at(0); }
  int dominant_branch() const { return 0; }

  double rightmost_re() const {
    double re = -std::numeric_limits<double>::infinity();
    for (const auto& [k, b] : roots) re = std::max(re, b.real());
    return re;
  }
};

inline RootSet characteristic_roots(const Mode& mode, const PhysicalParams& params,
                                    int branch_count = 8) {
  params.validate();
  if (branch_count < 1) throw DomainError("characteristic_roots: branch_count must be >= 1");
  if (!(params.tau > 0.0))
    throw DomainError("characteristic_roots: requires tau > 0 (use classical_root)");

  RootSet set;
  set.mode = mode;
  const Complex z(-mode.q_n, 0.0);
  for (int k = -branch_count - 1; k <= branch_count; ++k) {
    try {
      set.roots[k] = lambert_w(k, z) / params.tau;
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "characteristic_roots: mode n = " << mode.n << " (q = " << mode.q_n
          << "), branch " << k << ": " << e.what();
      throw NumericError(msg.str());
    }
  }
  set.regime = classify_regime(mode.q_n, set.roots.at(0).real());
  return set;
}

/// The tau = 0 temporal rate of a mode: plain decay at -lambda_n.
inline Complex classical_root(const Mode& mode) { return Complex(-mode.lambda_n, 0.0); }

inline RootSet classical_root_set(const Mode& mode) {
  RootSet set;
  set.mode = mode;
  set.roots[0] = classical_root(mode);
  set.regime = Regime::Classical;
  return set;
}

// Per-mode stability table for n = 1..n_max, plus the critical indices. The
// index bounds are found from the closed-form threshold on q_n and then
// confirmed by direct inequality evaluation, so a slightly-off square root
// cannot shift them.
struct StabilityTable {
  std::vector<RootSet> rows;
  int n_star = 0;             // largest n with q_n < pi/2; 0 if none, -1 if all (tau = 0)
  int smallest_unstable = 0;  // smallest n with q_n > pi/2; 0 if none (tau = 0)
};

inline StabilityTable stability_table(const Problem& problem, int branch_count = 8) {
  problem.validate();
  StabilityTable table;
  const double tau = problem.params.tau;

  table.rows.reserve(problem.n_max);
  for (int n = 1; n <= problem.n_max; ++n) {
    const Mode mode = Mode::make(n, problem.L, problem.params);
    table.rows.push_back(tau == 0.0 ? classical_root_set(mode)
                                    : characteristic_roots(mode, problem.params, branch_count));
  }

  if (tau == 0.0) {
    table.n_star = -1;
    table.smallest_unstable = 0;
    return table;
  }

  const auto q_of = [&](int n) {
    return Mode::make(n, problem.L, problem.params).q_n;
  };
  constexpr double kHalfPi = kPi / 2.0;
  // q_n = tau*D*(n*pi/L)^2 crosses pi/2 near this index.
  const double guess = (problem.L / kPi) * std::sqrt(kHalfPi / (tau * problem.params.D));
  int n = std::max(1, static_cast<int>(guess));
  while (n > 1 && !(q_of(n) < kHalfPi)) --n;
  while (q_of(n + 1) < kHalfPi) ++n;
  table.n_star = q_of(1) < kHalfPi ? n : 0;

  int m = std::max(1, table.n_star);
  while (!(q_of(m) > kHalfPi)) ++m;
  table.smallest_unstable = m;
  return table;
}

}  // namespace dhe
