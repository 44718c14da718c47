#pragma once

// The Dirichlet initial/boundary-value problem on [0, L]: zero boundary
// values for t > 0 and prescribed history on [-tau, 0].

#include "dhe/dispersion.hpp"
#include "dhe/errors.hpp"
#include "dhe/history.hpp"

namespace dhe {

struct Problem {
  double L = 1.0;
  PhysicalParams params;
  HistorySpec history;
  int n_max = 32;  // sine-series truncation

  void validate() const {
    if (!(L > 0.0)) throw DomainError("Problem: L must be > 0");
    if (n_max < 1) throw DomainError("Problem: n_max must be >= 1");
    params.validate();
  }
};

}  // namespace dhe
