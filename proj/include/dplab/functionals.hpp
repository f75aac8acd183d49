#pragma once

#include <span>
#include <vector>

#include "dplab/grid.hpp"
#include "dplab/peakon.hpp"

namespace dplab {

// u together with v = (4 - d^2)^{-1} u and its first two derivatives.
// v_xx is taken as 4v - u, which stays exact at kinks of u where a
// spectral second derivative would ring.
struct SmoothedField {
  GridFunction u;
  GridFunction v;
  GridFunction vx;
  GridFunction vxx;
};

SmoothedField smoothed_field(const GridFunction& u);

// Pointwise 4v^2 + 5v_x^2 + v_xx^2.
GridFunction energy_density(const SmoothedField& f);

double energy_E(const GridFunction& u);
double energy_F(const GridFunction& u);
// F through v only: int(-v_xx^3 + 12 v v_xx^2 - 48 v^2 v_xx + 64 v^3), with v_xx spectral.
double energy_F_vform(const GridFunction& u);
double h_norm(const GridFunction& u);
double h_distance(const GridFunction& u, const GridFunction& w);

// Logistic weight 1/(1+e^{-x}) and its derivatives of order 1..4.
double weight_psi(double x, int order = 0);
// Largest |psi^{(q)} / psi'| for q = 2..4 over a fine grid on [-10, 10].
double weight_derivative_ratio();
// sqrt(L)/8 clamped from below at 4.
double default_scale(double gap);

struct Interval {
  double lo;
  double hi;
};

// Weights psi_K(x - y_i) at the midpoints between consecutive centers and the
// partition of unity built from their differences.
class WeightPartition {
 public:
  WeightPartition(std::span<const double> centers, double K, const Grid& g);

  std::size_t size() const { return centers_.size(); }
  double scale() const { return K_; }
  const Grid& grid() const { return grid_; }
  const std::vector<double>& centers() const { return centers_; }
  // y_2..y_N
  const std::vector<double>& midpoints() const { return midpoints_; }
  // Piece i (0-based) of the partition.
  const GridFunction& piece(std::size_t i) const { return pieces_[i]; }
  double piece_at(std::size_t i, double x) const;
  // psi_K(x - y) for the gap left of bump i; bump 0 gets the constant 1.
  const GridFunction& right_weight(std::size_t i) const { return right_weights_[i]; }
  // [y_i, y_{i+1}] with the box ends standing in for the outer midpoints.
  std::vector<Interval> intervals() const;

 private:
  double cut(std::size_t i, double x) const;

  Grid grid_;
  double K_;
  std::vector<double> centers_;
  std::vector<double> midpoints_;
  std::vector<GridFunction> pieces_;
  std::vector<GridFunction> right_weights_;
};

WeightPartition build_partition(std::span<const double> centers, double K, const Grid& g);

struct BumpEnergy {
  double E;
  double F;
  double J;
};

struct EnergyReport {
  double E;
  double F;
  double H_norm;
  std::vector<BumpEnergy> per_bump;
};

EnergyReport localized_energies(const GridFunction& u, const WeightPartition& p);

// |E(u) - E(phi_c) - ||u - phi_c(. - xi)||_H^2 - 4c(v(xi) - c/6)|
double quadratic_identity_residual(const GridFunction& u, double xi, double c);
// Train version without the exponentially small cross terms.
double general_quadratic_identity_residual(const GridFunction& u, const PeakonTrain& train);

// |sum_i M_i dE_i - sum_i (M_i - M_{i-1}) dJ_i| with M_0 = 0.
// deltaJ holds dJ_1..dJ_N (dJ_1 is the total energy change) or just dJ_2..dJ_N.
double abel_diagnostic(std::span<const double> M1, std::span<const double> deltaE, std::span<const double> deltaJ);

}  // namespace dplab
