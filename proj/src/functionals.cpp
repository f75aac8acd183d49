#include "dplab/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "dplab/helmholtz.hpp"
#include "dplab/kernels.hpp"

namespace dplab {

SmoothedField smoothed_field(const GridFunction& u) {
  GridFunction v = helmholtz_inverse(HelmholtzParameter::two(), u);
  GridFunction vx = differentiate(v, 1);
  GridFunction vxx = 4.0 * v - u;
  return {u, std::move(v), std::move(vx), std::move(vxx)};
}

GridFunction energy_density(const SmoothedField& f) {
  GridFunction out(f.u.grid());
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = 4.0 * f.v[k] * f.v[k] + 5.0 * f.vx[k] * f.vx[k] + f.vxx[k] * f.vxx[k];
  return out;
}

double energy_E(const GridFunction& u) { return integrate(energy_density(smoothed_field(u))); }

double energy_F(const GridFunction& u) {
  return u.grid().dx() * kernels::dot3(u.values(), u.values(), u.values());
}

double energy_F_vform(const GridFunction& u) {
  const GridFunction v = helmholtz_inverse(HelmholtzParameter::two(), u);
  const GridFunction vxx = differentiate(v, 2);
  GridFunction density(u.grid());
  for (std::size_t k = 0; k < density.size(); ++k) {
    const double a = v[k];
    const double b = vxx[k];
    density[k] = -b * b * b + 12.0 * a * b * b - 48.0 * a * a * b + 64.0 * a * a * a;
  }
  return integrate(density);
}

double h_norm(const GridFunction& u) { return std::sqrt(std::max(0.0, energy_E(u))); }

double h_distance(const GridFunction& u, const GridFunction& w) {
  require_same_grid(u, w);
  return h_norm(u - w);
}

double weight_psi(double x, int order) {
  const double p = x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
  if (order == 0) return p;
  const double d1 = x >= 0.0 ? std::exp(-x) * p * p : p * (1.0 - p);
  switch (order) {
    case 1: return d1;
    case 2: return d1 * (1.0 - 2.0 * p);
    case 3: return d1 * (1.0 - 6.0 * p + 6.0 * p * p);
    case 4: return d1 * (1.0 - 14.0 * p + 36.0 * p * p - 24.0 * p * p * p);
    default: throw std::invalid_argument("weight derivative order must be in 0..4");
  }
}

double weight_derivative_ratio() {
  double worst = 0.0;
  for (int k = 0; k <= 20000; ++k) {
    const double x = -10.0 + 1e-3 * k;
    const double d1 = weight_psi(x, 1);
    for (int q = 2; q <= 4; ++q) worst = std::max(worst, std::abs(weight_psi(x, q)) / d1);
  }
  return worst;
}

double default_scale(double gap) { return std::max(4.0, std::sqrt(gap) / 8.0); }

WeightPartition::WeightPartition(std::span<const double> centers, double K, const Grid& g)
    : grid_(g), K_(K), centers_(centers.begin(), centers.end()) {
  if (centers_.empty()) throw std::invalid_argument("partition needs at least one center");
  if (!(K >= 4.0)) throw std::invalid_argument("partition scale K must be at least 4");
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < centers_.size(); ++i) {
    if (!(centers_[i] > centers_[i - 1])) throw std::invalid_argument("partition centers must increase");
    gap = std::min(gap, centers_[i] - centers_[i - 1]);
    midpoints_.push_back(0.5 * (centers_[i - 1] + centers_[i]));
  }
  if (centers_.size() > 1 && !(gap / K > 4.0)) throw std::invalid_argument("partition needs L/K > 4");

  const std::size_t n = centers_.size();
  for (std::size_t i = 0; i < n; ++i)
    right_weights_.push_back(GridFunction::sample(g, [&](double x) { return cut(i, x); }));
  for (std::size_t i = 0; i < n; ++i) {
    GridFunction piece = right_weights_[i];
    if (i + 1 < n) piece -= right_weights_[i + 1];
    pieces_.push_back(std::move(piece));
  }

  if (n > 1) {
    const double tol = 2.0 * std::exp(-gap / (8.0 * K)) + 1e-14;
    for (std::size_t i = 0; i < n; ++i) {
      const double left = i == 0 ? -std::numeric_limits<double>::infinity() : midpoints_[i - 1];
      const double right = i + 1 == n ? std::numeric_limits<double>::infinity() : midpoints_[i];
      for (std::size_t k = 0; k < g.size(); ++k) {
        const double x = g.node(k);
        const double phi = pieces_[i][k];
        if (phi < -1e-15 || phi > 1.0 + 1e-15) throw std::logic_error("partition piece leaves [0, 1]");
        if (x > left + gap / 8.0 && x < right - gap / 8.0 && std::abs(1.0 - phi) > tol)
          throw std::logic_error("partition piece not close to 1 inside its interval");
        if ((x <= left - gap / 8.0 || x >= right + gap / 8.0) && std::abs(phi) > tol)
          throw std::logic_error("partition piece not small outside its interval");
      }
    }
  }
}

double WeightPartition::cut(std::size_t i, double x) const {
  return i == 0 ? 1.0 : weight_psi((x - midpoints_[i - 1]) / K_);
}

double WeightPartition::piece_at(std::size_t i, double x) const {
  return cut(i, x) - (i + 1 < size() ? cut(i + 1, x) : 0.0);
}

std::vector<Interval> WeightPartition::intervals() const {
  std::vector<Interval> out;
  const double lo = -grid_.half_width();
  const double hi = grid_.half_width() - grid_.dx();
  for (std::size_t i = 0; i < size(); ++i)
    out.push_back({i == 0 ? lo : midpoints_[i - 1], i + 1 == size() ? hi : midpoints_[i]});
  return out;
}

WeightPartition build_partition(std::span<const double> centers, double K, const Grid& g) {
  return WeightPartition(centers, K, g);
}

EnergyReport localized_energies(const GridFunction& u, const WeightPartition& p) {
  if (!(u.grid() == p.grid())) throw std::invalid_argument("profile and partition use different grids");
  const GridFunction density = energy_density(smoothed_field(u));
  const GridFunction cube = u.times(u).times(u);
  EnergyReport r{};
  r.E = integrate(density);
  r.F = integrate(cube);
  r.H_norm = std::sqrt(std::max(0.0, r.E));
  for (std::size_t i = 0; i < p.size(); ++i)
    r.per_bump.push_back({integrate_product(density, p.piece(i)), integrate_product(cube, p.piece(i)),
                          integrate_product(density, p.right_weight(i))});
  return r;
}

double quadratic_identity_residual(const GridFunction& u, double xi, double c) {
  const GridFunction profile = sample_peakon({c, xi}, u.grid(), Sampling::band_limited);
  const double v_at_xi = SpectralInterpolant(helmholtz_inverse(HelmholtzParameter::two(), u))(xi);
  const double lhs = energy_E(u) - reference_norms(c).E;
  const double dist = h_distance(u, profile);
  const double rhs = dist * dist + 4.0 * c * (v_at_xi - c / 6.0);
  return std::abs(lhs - rhs);
}

double general_quadratic_identity_residual(const GridFunction& u, const PeakonTrain& train) {
  const GridFunction s = sample_train(train, u.grid(), Profile::peakon, Sampling::band_limited);
  const SpectralInterpolant v(helmholtz_inverse(HelmholtzParameter::two(), u));
  double lhs = energy_E(u);
  double linear = 0.0;
  for (const auto& p : train.peakons()) {
    lhs -= reference_norms(p.speed).E;
    linear += 4.0 * p.speed * (v(p.center) - p.speed / 6.0);
  }
  const double dist = h_distance(u, s);
  return std::abs(lhs - dist * dist - linear);
}

double abel_diagnostic(std::span<const double> M1, std::span<const double> deltaE, std::span<const double> deltaJ) {
  const std::size_t n = M1.size();
  if (deltaE.size() != n) throw std::invalid_argument("abel_diagnostic: M1 and deltaE lengths differ");
  std::vector<double> dj;
  if (deltaJ.size() == n) {
    dj.assign(deltaJ.begin(), deltaJ.end());
  } else if (n > 0 && deltaJ.size() == n - 1) {
    dj.push_back(std::accumulate(deltaE.begin(), deltaE.end(), 0.0));
    dj.insert(dj.end(), deltaJ.begin(), deltaJ.end());
  } else {
    throw std::invalid_argument("abel_diagnostic: deltaJ length must be N or N-1");
  }
  double direct = 0.0;
  double by_parts = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    direct += M1[i] * deltaE[i];
    by_parts += (M1[i] - (i == 0 ? 0.0 : M1[i - 1])) * dj[i];
  }
  return std::abs(direct - by_parts);
}

}  // namespace dplab
