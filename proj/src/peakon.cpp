#include "dplab/peakon.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "dplab/spectral.hpp"

namespace dplab {

PeakonTrain::PeakonTrain(std::vector<Peakon> peakons)
    : peakons_(std::move(peakons)), min_gap_(std::numeric_limits<double>::infinity()) {
  if (peakons_.empty()) throw std::invalid_argument("a peakon train needs at least one peakon");
  for (std::size_t i = 0; i < peakons_.size(); ++i) {
    if (!(peakons_[i].speed > 0.0)) throw std::invalid_argument("peakon speeds must be positive");
    if (i == 0) continue;
    if (!(peakons_[i].speed > peakons_[i - 1].speed))
      throw std::invalid_argument("peakon speeds must be strictly increasing");
    const double gap = peakons_[i].center - peakons_[i - 1].center;
    if (!(gap > 0.0)) throw std::invalid_argument("peakon centers must be strictly increasing");
    min_gap_ = std::min(min_gap_, gap);
  }
}

std::vector<double> PeakonTrain::speeds() const {
  std::vector<double> out;
  for (const auto& p : peakons_) out.push_back(p.speed);
  return out;
}

std::vector<double> PeakonTrain::centers() const {
  std::vector<double> out;
  for (const auto& p : peakons_) out.push_back(p.center);
  return out;
}

double peakon_value(double c, double x) { return c * std::exp(-std::abs(x)); }

double peakon_derivative(double c, double x) {
  return x > 0.0 ? -peakon_value(c, x) : (x < 0.0 ? peakon_value(c, x) : 0.0);
}

double smooth_peakon_value(double c, double x) {
  const double e = std::exp(-std::abs(x));
  return c / 3.0 * e - c / 6.0 * e * e;
}

double smooth_peakon_derivative(double c, double x) {
  const double e = std::exp(-std::abs(x));
  const double magnitude = c / 3.0 * (e - e * e);
  return x > 0.0 ? -magnitude : magnitude;
}

double smooth_peakon_second_derivative(double c, double x) {
  const double e = std::exp(-std::abs(x));
  return c / 3.0 * e - 2.0 * c / 3.0 * e * e;
}

namespace {

void check_clearance(const Peakon& p, const Grid& g) {
  if (!(std::abs(p.center) < g.half_width() - kBoundaryClearance))
    throw std::invalid_argument("peakon center too close to the periodic boundary");
  if (!(p.speed > 0.0)) throw std::invalid_argument("peakon speed must be positive");
}

std::complex<double> peakon_transform(const Peakon& p, double w) {
  return std::polar(2.0 * p.speed / (1.0 + w * w), -w * p.center);
}

std::complex<double> smooth_peakon_transform(const Peakon& p, double w) {
  return peakon_transform(p, w) / (4.0 + w * w);
}

}  // namespace

GridFunction sample_peakon(const Peakon& p, const Grid& g, Sampling s) {
  check_clearance(p, g);
  if (s == Sampling::band_limited) return synthesize(g, [&](double w) { return peakon_transform(p, w); });
  return GridFunction::sample(g, [&](double x) { return peakon_value(p.speed, x - p.center); });
}

GridFunction sample_smooth_peakon(const Peakon& p, const Grid& g, Sampling s) {
  check_clearance(p, g);
  if (s == Sampling::band_limited)
    return synthesize(g, [&](double w) { return smooth_peakon_transform(p, w); });
  return GridFunction::sample(g, [&](double x) { return smooth_peakon_value(p.speed, x - p.center); });
}

GridFunction sample_train(const PeakonTrain& t, const Grid& g, Profile profile, Sampling s) {
  GridFunction out(g);
  for (const auto& p : t.peakons())
    out += profile == Profile::peakon ? sample_peakon(p, g, s) : sample_smooth_peakon(p, g, s);
  return out;
}

ReferenceNorms reference_norms(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("reference norms need a positive speed");
  ReferenceNorms r{};
  r.H_norm = c / std::sqrt(3.0);
  r.E = c * c / 3.0;
  r.F = 2.0 * c * c * c / 3.0;
  r.L2_sq = c * c;
  r.Linf = c;
  r.L3 = std::cbrt(2.0 / 3.0) * c;
  r.L4 = std::pow(2.0, -0.25) * c;
  r.rho_max = c / 6.0;
  r.drho_L2_sq = c * c / 54.0;
  r.S_L1 = 2.0 * c;
  r.R_L1 = c / 2.0;
  r.d2R_L1 = c / 3.0;
  return r;
}

MollifiedPeakon mollified_peakon(const Peakon& p, const Grid& g, double width) {
  if (!(width > 0.0 && width <= 0.5)) throw std::invalid_argument("mollifier width must lie in (0, 0.5]");
  check_clearance(p, g);
  const double s2 = width * width;
  GridFunction profile =
      synthesize(g, [&](double w) { return peakon_transform(p, w) * std::exp(-0.5 * w * w * s2); });
  GridFunction diff = profile - sample_peakon(p, g, Sampling::band_limited);
  const double dist = l2_norm(diff);
  return {std::move(profile), dist};
}

GridFunction mollified_train(const PeakonTrain& t, const Grid& g, double width) {
  GridFunction out(g);
  for (const auto& p : t.peakons()) out += mollified_peakon(p, g, width).profile;
  return out;
}

}  // namespace dplab
