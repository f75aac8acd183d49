#pragma once

#include <stdexcept>
#include <vector>

#include "dplab/functionals.hpp"
#include "dplab/grid.hpp"

namespace dplab {

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolverState {
  double t;
  GridFunction u;
  double dt;
  double filter_strength;
};

inline constexpr double kCflFraction = 0.5;
inline constexpr double kDefaultFilterStrength = 36.0;

// Largest admissible step 0.5 dx / max|u|.
double cfl_limit(const GridFunction& u);
// dt <= 0 selects the CFL limit; an explicit dt above the limit is rejected.
SolverState make_state(GridFunction u0, double dt = 0.0, double filter_strength = kDefaultFilterStrength,
                       double t0 = 0.0);

// -1/2 (u^2)_x - 3/2 d/dx (1 - d^2)^{-1} u^2 with u^2 truncated to the lowest two thirds of the spectrum.
GridFunction rhs(const GridFunction& u);
// Multiplies mode j by exp(-strength (|w|/w_max)^36).
GridFunction spectral_filter(const GridFunction& u, double strength);
// One classical Runge-Kutta step followed by the spectral filter.
SolverState step(const SolverState& s);
// Same, with the step size overridden.
SolverState step(const SolverState& s, double dt);

// Time-independent weight with its first four derivatives sampled on the grid.
struct StaticWeight {
  GridFunction g;
  GridFunction d1;
  GridFunction d2;
  GridFunction d3;
  GridFunction d4;
};

// psi((x - center) / K)
StaticWeight psi_weight(const Grid& grid, double center, double K);
StaticWeight constant_weight(const Grid& grid);

// int (4v^2 + 5v_x^2 + v_xx^2) g
double weighted_energy(const GridFunction& u, const GridFunction& g);
// Exact time derivative of weighted_energy under the flow, evaluated at u.
double virial_rate(const GridFunction& u, const StaticWeight& w);
// |difference quotient of the weighted energy - virial_rate at the averaged state|
double virial_residual(const SolverState& s_prev, const SolverState& s_next, const StaticWeight& w);

// J_{i,K}(t) - J_{i,K}(0) along a trajectory with one partition per sample.
std::vector<double> monotonicity_track(const std::vector<SolverState>& trajectory,
                                       const std::vector<WeightPartition>& partitions, std::size_t bump);

}  // namespace dplab
