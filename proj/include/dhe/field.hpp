#pragma once

// A sampled space-time solution u(x_i, t_j) on a rectangular grid; the time
// axis may include the history band t in [-tau, 0].

#include <cstddef>
#include <vector>

#include "dhe/errors.hpp"

namespace dhe {

struct Field {
  std::vector<double> x;  // positions, size nx
  std::vector<double> t;  // times, size nt
  std::vector<double> u;  // row-major nt x nx

  double& at(std::size_t j, std::size_t i) { return u[j * x.size() + i]; }
  double at(std::size_t j, std::size_t i) const { return u[j * x.size() + i]; }

  std::size_t nx() const { return x.size(); }
  std::size_t nt() const { return t.size(); }

  void check_consistent() const {
    if (u.size() != x.size() * t.size())
      throw StateError("Field: u dimensions do not match x and t");
  }
};

}  // namespace dhe
