#pragma once

#include <utility>
#include <vector>

#include "dplab/functionals.hpp"
#include "dplab/grid.hpp"

namespace dplab {

// Local maxima and minima of v over one bump, in spatial order:
// alpha < xi_1 < eta_1 < ... < eta_k < xi_{k+1} < beta.
struct ExtremaDecomposition {
  double bump_speed = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<double> maxima;
  std::vector<double> minima;
  std::vector<double> max_values;
  std::vector<double> min_values;
  bool interlaced = false;

  // Maxima then minima, each sorted decreasingly by value, kept apart from the
  // spatial lists above.
  struct SortedView {
    std::vector<double> max_values;
    std::vector<double> min_values;
    // Every (j+1)-th largest maximum dominates the j-th largest minimum.
    bool dominated = false;
  };
  SortedView sorted_view() const;

  // Extremum positions merged in spatial order.
  std::vector<double> turning_points() const;
};

// Threshold level relative to the bump speed used for alpha and beta.
inline constexpr double kLevelFraction = 1.0 / 2400.0;
// Hysteresis for accepting an extremum, relative to the bump speed.
inline constexpr double kHysteresis = 1e-9;

ExtremaDecomposition decompose(const GridFunction& v, double c, double search_center, Interval window);

// 2v + v_xx + 3 s v_x and -v_xx + 16 v + 6 s v_x, where s = -1 left of the
// first maximum and flips at every turning point.
GridFunction build_g(const SmoothedField& f, const ExtremaDecomposition& d);
GridFunction build_h(const SmoothedField& f, const ExtremaDecomposition& d);
// Same, with derivatives of v taken spectrally.
GridFunction build_g(const GridFunction& v, const ExtremaDecomposition& d);
GridFunction build_h(const GridFunction& v, const ExtremaDecomposition& d);

double energy_extrema_residual(const GridFunction& u, const ExtremaDecomposition& d);
double cubic_extrema_residual(const GridFunction& u, const ExtremaDecomposition& d);

// Envelope constant for the partition-weighted identities.
inline constexpr double kLocalizedEnvelope = 10.0;

// Per bump, the energy-form and cubic-form residuals of the partition-weighted identities.
std::vector<std::pair<double, double>> localized_identity_residuals(const GridFunction& u, const WeightPartition& p,
                                                                    const std::vector<ExtremaDecomposition>& d);

// M^3 - E M / 4 + F / 72
double cubic_inequality_value(double M1, double E, double F);

struct PositivityMargins {
  double u_plus;       // min (u + u_x)
  double u_minus;      // min (u - u_x)
  double combo_plus;   // min (2 + d)(4 - d^2)^{-1}(1 - d) u
  double combo_minus;  // min (2 - d)(4 - d^2)^{-1}(1 + d) u
  double v_plus;       // min (2v + v_x)
  double v_minus;      // min (2v - v_x)
  double h_plus;       // min (h + h_x), h = (1 - d^2)^{-1} u^2
  double h_minus;      // min (h - h_x)

  double smallest() const;
  bool holds(double tolerance) const { return smallest() >= -tolerance; }
};

PositivityMargins positivity_diagnostics(const GridFunction& u);

}  // namespace dplab
