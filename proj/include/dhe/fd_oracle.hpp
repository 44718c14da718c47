#pragma once

// Independent explicit finite-difference solver, used to cross-validate the
// modal path. Time stepping is forward Euler with the whole right-hand side
// evaluated at the delayed level, mirroring the equation's structure:
//
//   u[i, j+1] = u[i, j] + dt * ( D * (u[i+1, j-m] - 2 u[i, j-m] + u[i-1, j-m]) / dx^2
//                              - eps * (u[i, j-m] - u[i-1, j-m]) / dx )
//
// with m = tau/dt held to an exact integer by adjusting dt downward, so the
// history lookup never interpolates. First order in dt, second order in dx.

#include <cmath>
#include <cstddef>
#include <sstream>

#include "dhe/errors.hpp"
#include "dhe/field.hpp"
#include "dhe/problem.hpp"

namespace dhe {

struct Grid {
  int nx = 3;               // node count including both boundaries
  double dx = 0.0;
  double dt = 0.0;          // after delay adjustment
  int steps_per_delay = 0;  // m = tau/dt exactly; 0 when tau = 0
  double t_end = 0.0;
  int n_steps = 0;          // forward steps from t = 0

  // dt_request is an upper bound; it is shrunk so that tau is an exact
  // multiple. The classical diffusion bound D*dt/dx^2 <= 1/2 is enforced on
  // the adjusted step.
  static Grid make(const Problem& problem, int nx, double dt_request, double t_end) {
    problem.validate();
    if (nx < 3) throw DomainError("Grid: nx must be >= 3");
    if (!(dt_request > 0.0)) throw DomainError("Grid: dt must be > 0");
    if (!(t_end > 0.0)) throw DomainError("Grid: t_end must be > 0");

    Grid g;
    g.nx = nx;
    g.dx = problem.L / (nx - 1);
    const double tau = problem.params.tau;
    if (tau > 0.0) {
      const double per_delay = std::ceil(tau / dt_request - 1e-12);
      if (per_delay > 1e8) {
        std::ostringstream msg;
        msg << "Grid: tau/dt = " << per_delay << " steps per delay is beyond any feasible run";
        throw ResourceError(msg.str());
      }
      g.steps_per_delay = static_cast<int>(per_delay);
      g.dt = tau / g.steps_per_delay;
    } else {
      g.steps_per_delay = 0;
      g.dt = dt_request;
    }
    g.t_end = t_end;

    const double diffusion_number = problem.params.D * g.dt / (g.dx * g.dx);
    if (diffusion_number > 0.5) {
      std::ostringstream msg;
      msg << "Grid: D*dt/dx^2 = " << diffusion_number
          << " exceeds the explicit stability bound 0.5 (dt = " << g.dt << ", dx = " << g.dx
          << ")";
      throw DomainError(msg.str());
    }

    // cap checked in floating point before any cast can overflow
    const double steps = std::ceil(t_end / g.dt - 1e-9);
    const double cells = (g.steps_per_delay + steps + 1.0) * nx;
    constexpr double kCellCap = 50'000'000.0;
    if (cells > kCellCap) {
      std::ostringstream msg;
      msg << "Grid: run needs about " << cells << " field cells ("
          << (g.steps_per_delay + steps + 1.0) << " time levels x " << nx
          << " nodes), above the cap of " << kCellCap;
      throw ResourceError(msg.str());
    }
    g.n_steps = static_cast<int>(steps);
    return g;
  }
};

namespace fd_detail {

// Shared stepping kernel; run_heat is exactly this with eps = 0, so the two
// entry points agree bit for bit when the advection term vanishes.
inline void step(const Grid& grid, Field& field, int j, double D, double eps) {
  const int m = grid.steps_per_delay;
  if (j < m)
    throw StateError("fd step: time index lies inside the history band");
  if (static_cast<std::size_t>(j + 1) >= field.nt())
    throw StateError("fd step: field has no room for the next time level");

  const int jd = j - m;  // delayed level feeding the update
  const double dx = grid.dx;
  const int nx = grid.nx;
  for (int i = 1; i + 1 < nx; ++i) {
    const double lap =
        (field.at(jd, i + 1) - 2.0 * field.at(jd, i) + field.at(jd, i - 1)) / (dx * dx);
    const double upwind = (field.at(jd, i) - field.at(jd, i - 1)) / dx;
    field.at(j + 1, i) = field.at(j, i) + grid.dt * (D * lap - eps * upwind);
  }
  field.at(j + 1, 0) = 0.0;
  field.at(j + 1, static_cast<std::size_t>(nx - 1)) = 0.0;
}

}  // namespace fd_detail

// Field sized for the grid, with the history band t in [-tau, 0] filled
// from the problem's HistorySpec and the walls held at zero. Rows past the
// band start as zeros and are produced by stepping.
inline Field make_initial_field(const Grid& grid, const Problem& problem) {
  problem.history.check_boundary_compatibility(problem.L, problem.params.tau);

  Field field;
  const int m = grid.steps_per_delay;
  field.x.resize(static_cast<std::size_t>(grid.nx));
  for (int i = 0; i < grid.nx; ++i) field.x[static_cast<std::size_t>(i)] = i * grid.dx;
  field.t.resize(static_cast<std::size_t>(m + grid.n_steps + 1));
  for (int j = 0; j < static_cast<int>(field.t.size()); ++j)
    field.t[static_cast<std::size_t>(j)] = (j - m) * grid.dt;
  field.u.assign(field.t.size() * field.x.size(), 0.0);

  const double tau = problem.params.tau;
  for (int j = 0; j <= m; ++j) {
    const double t = (j - m) * grid.dt;
    for (int i = 1; i + 1 < grid.nx; ++i)
      field.at(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) =
          problem.history.value(i * grid.dx, t, problem.L, tau);
    // walls stay exactly zero
  }
  return field;
}

namespace fd_detail {

inline Field run(const Grid& grid, const Problem& problem, double eps) {
  Field field = make_initial_field(grid, problem);
  const int m = grid.steps_per_delay;
  for (int j = m; j < m + grid.n_steps; ++j) step(grid, field, j, problem.params.D, eps);
  return field;
}

}  // namespace fd_detail

/// Advance one time level of the pure diffusion scheme (row j -> j+1).
inline void step_heat(const Grid& grid, const Problem& problem, Field& field, int j) {
  fd_detail::step(grid, field, j, problem.params.D, 0.0);
}

inline Field run_heat(const Grid& grid, const Problem& problem) {
  if (problem.params.epsilon != 0.0)
    throw DomainError("run_heat: epsilon must be 0 (use run_advection)");
  return fd_detail::run(grid, problem, 0.0);
}

// Adds the delayed advection term with upwind differencing (stable for
// eps >= 0); requires the advective Courant bound eps*dt/dx <= 1.
inline Field run_advection(const Grid& grid, const Problem& problem) {
  const double courant = problem.params.epsilon * grid.dt / grid.dx;
  if (courant > 1.0) {
    std::ostringstream msg;
    msg << "run_advection: eps*dt/dx = " << courant << " exceeds 1";
    throw DomainError(msg.str());
  }
  return fd_detail::run(grid, problem, problem.params.epsilon);
}

}  // namespace dhe
