#pragma once

#include <stdexcept>
#include <vector>

#include "dplab/functionals.hpp"
#include "dplab/grid.hpp"

namespace dplab {

class TrackingLost : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ModulationState {
  std::vector<double> x_tilde;
  std::vector<double> xi1;
  std::vector<Interval> intervals;
  std::vector<double> speeds_est;
  double distance = 0.0;
};

// Per interval, the node maximizing v refined by a parabola through its
// neighbours; on ties the leftmost node is kept without refinement.
std::vector<double> track_argmax(const GridFunction& v, const std::vector<Interval>& intervals);

struct ModulationOptions {
  double tolerance = 1e-9;
  int max_iterations = 20;
  // Largest Newton move per iteration.
  double max_step = 2.0;
};

// r_i = int (v - sum_j R_j(. - x_j)) R_i'(. - x_i) with R_c the smoothed peakon.
std::vector<double> orthogonality_residuals(const GridFunction& v, const std::vector<double>& speeds,
                                            const std::vector<double>& centers);

// Damped Newton on the orthogonality conditions with Jacobian diag(c_i^2 / 54).
// Throws TrackingLost when it fails to converge or lands where the true
// diagonal Jacobian has collapsed.
std::vector<double> solve_modulation(const GridFunction& v, const std::vector<double>& speeds,
                                     const std::vector<double>& guess, const ModulationOptions& options = {});

// Least-squares slope of each center over samples with t in [window.lo, window.hi].
std::vector<double> estimate_speeds(const std::vector<double>& times, const std::vector<std::vector<double>>& history,
                                    Interval window);

// H-distance from u to the peakon train with the given speeds and centers.
double stability_distance(const GridFunction& u, const std::vector<double>& speeds,
                          const std::vector<double>& centers);

}  // namespace dplab
