#pragma once

#include <vector>

#include "dplab/grid.hpp"

namespace dplab {

struct Peakon {
  double speed;
  double center;
};

// Peakons ordered by strictly increasing speed and center.
class PeakonTrain {
 public:
  explicit PeakonTrain(std::vector<Peakon> peakons);

  std::size_t size() const { return peakons_.size(); }
  const Peakon& operator[](std::size_t i) const { return peakons_[i]; }
  const std::vector<Peakon>& peakons() const { return peakons_; }
  std::vector<double> speeds() const;
  std::vector<double> centers() const;
  // Smallest gap between consecutive centers; infinite for a single peakon.
  double min_gap() const { return min_gap_; }

 private:
  std::vector<Peakon> peakons_;
  double min_gap_;
};

// How a closed-form profile is turned into grid values.
//   nodal:        exact values at the nodes.
//   band_limited: the trigonometric polynomial whose coefficients are the exact
//                 Fourier transform, which avoids aliasing of the kink.
enum class Sampling { nodal, band_limited };

enum class Profile { peakon, smooth_peakon };

inline constexpr double kBoundaryClearance = 15.0;

// c e^{-|x|}, its derivative off the kink, and the smoothed profile
// (4 - d^2)^{-1} applied to it with its first two derivatives.
double peakon_value(double c, double x);
double peakon_derivative(double c, double x);
double smooth_peakon_value(double c, double x);
double smooth_peakon_derivative(double c, double x);
double smooth_peakon_second_derivative(double c, double x);

GridFunction sample_peakon(const Peakon& p, const Grid& g, Sampling s = Sampling::nodal);
GridFunction sample_smooth_peakon(const Peakon& p, const Grid& g, Sampling s = Sampling::nodal);
GridFunction sample_train(const PeakonTrain& t, const Grid& g, Profile profile, Sampling s = Sampling::nodal);

struct ReferenceNorms {
  double H_norm;
  double E;
  double F;
  double L2_sq;
  double Linf;
  double L3;
  double L4;
  double rho_max;
  double drho_L2_sq;
  double S_L1;
  double R_L1;
  double d2R_L1;
};

ReferenceNorms reference_norms(double c);

struct MollifiedPeakon {
  GridFunction profile;
  // L2 distance to the band-limited peakon with the same speed and center.
  double l2_distance;
};

// Peakon convolved with a unit-mass Gaussian of standard deviation `width`.
MollifiedPeakon mollified_peakon(const Peakon& p, const Grid& g, double width);
GridFunction mollified_train(const PeakonTrain& t, const Grid& g, double width);

}  // namespace dplab
