#include "dplab/solver.hpp"

#include <cmath>
#include <complex>

#include "dplab/helmholtz.hpp"
#include "dplab/kernels.hpp"
#include "dplab/spectral.hpp"

namespace dplab {

double cfl_limit(const GridFunction& u) {
  const double peak = u.max_abs();
  if (peak == 0.0) return std::numeric_limits<double>::infinity();
  return kCflFraction * u.grid().dx() / peak;
}

SolverState make_state(GridFunction u0, double dt, double filter_strength, double t0) {
  if (!u0.all_finite()) throw NumericalError("initial data is not finite");
  if (filter_strength < 0.0) throw std::invalid_argument("filter strength must be nonnegative");
  const double limit = cfl_limit(u0);
  if (dt <= 0.0) {
    if (!std::isfinite(limit)) throw std::invalid_argument("zero data needs an explicit time step");
    dt = limit;
  } else if (dt > limit) {
    throw std::invalid_argument("time step violates the CFL bound");
  }
  return {t0, std::move(u0), dt, filter_strength};
}

GridFunction rhs(const GridFunction& u) {
  const Grid& g = u.grid();
  const std::size_t cutoff = g.size() / 3;
  Spectrum s = forward_transform(u.times(u));
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (j > cutoff) {
      s[j] = 0.0;
      continue;
    }
    const double w = g.wavenumber(j);
    s[j] *= std::complex<double>(0.0, -w * (0.5 + 1.5 / (1.0 + w * w)));
  }
  return inverse_transform(g, s);
}

GridFunction spectral_filter(const GridFunction& u, double strength) {
  if (strength == 0.0) return u;
  const double w_max = u.grid().max_wavenumber();
  return apply_multiplier(u, [&](double w, std::size_t) { return std::exp(-strength * std::pow(w / w_max, 36)); });
}

SolverState step(const SolverState& s) { return step(s, s.dt); }

SolverState step(const SolverState& s, double dt) {
  const Grid& g = s.u.grid();
  GridFunction stage(g);
  const GridFunction k1 = rhs(s.u);
  kernels::offset(stage.values(), s.u.values(), 0.5 * dt, k1.values());
  const GridFunction k2 = rhs(stage);
  kernels::offset(stage.values(), s.u.values(), 0.5 * dt, k2.values());
  const GridFunction k3 = rhs(stage);
  kernels::offset(stage.values(), s.u.values(), dt, k3.values());
  const GridFunction k4 = rhs(stage);
  GridFunction next = s.u;
  kernels::rk4_combine(next.values(), dt, k1.values(), k2.values(), k3.values(), k4.values());
  next = spectral_filter(next, s.filter_strength);
  if (!next.all_finite()) throw NumericalError("non-finite values after step at t = " + std::to_string(s.t));
  return {s.t + dt, std::move(next), s.dt, s.filter_strength};
}

StaticWeight psi_weight(const Grid& grid, double center, double K) {
  auto derivative = [&](int q) {
    const double factor = std::pow(K, -q);
    return GridFunction::sample(grid, [&](double x) { return factor * weight_psi((x - center) / K, q); });
  };
  return {derivative(0), derivative(1), derivative(2), derivative(3), derivative(4)};
}

StaticWeight constant_weight(const Grid& grid) {
  GridFunction one = GridFunction::sample(grid, [](double) { return 1.0; });
  GridFunction zero(grid);
  return {one, zero, zero, zero, zero};
}

double weighted_energy(const GridFunction& u, const GridFunction& g) {
  return integrate_product(energy_density(smoothed_field(u)), g);
}

double virial_rate(const GridFunction& u, const StaticWeight& w) {
  const SmoothedField f = smoothed_field(u);
  const GridFunction u2 = u.times(u);
  const GridFunction h = helmholtz_inverse(HelmholtzParameter::one(), u2);
  const GridFunction hx = differentiate(h, 1);
  const double dx = u.grid().dx();
  double acc = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double uk = u[k];
    const double v = f.v[k];
    const double vx = f.vx[k];
    const double sq = u2[k];
    acc += (2.0 / 3.0) * sq * uk * w.d1[k] - 4.0 * sq * v * w.d1[k] - 0.5 * sq * v * w.d3[k] +
           0.5 * sq * vx * w.d2[k] + uk * h[k] * w.d1[k] + 0.5 * uk * hx[k] * w.d2[k] -
           2.5 * v * hx[k] * w.d2[k] - 2.0 * vx * h[k] * w.d2[k] + 0.5 * v * hx[k] * w.d4[k];
  }
  return acc * dx;
}

double virial_residual(const SolverState& s_prev, const SolverState& s_next, const StaticWeight& w) {
  require_same_grid(s_prev.u, s_next.u);
  require_same_grid(s_prev.u, w.g);
  const double span = s_next.t - s_prev.t;
  if (!(span > 0.0)) throw std::invalid_argument("states must be ordered in time");
  const double lhs = (weighted_energy(s_next.u, w.g) - weighted_energy(s_prev.u, w.g)) / span;
  const GridFunction mid = 0.5 * (s_prev.u + s_next.u);
  return std::abs(lhs - virial_rate(mid, w));
}

std::vector<double> monotonicity_track(const std::vector<SolverState>& trajectory,
                                       const std::vector<WeightPartition>& partitions, std::size_t bump) {
  if (trajectory.size() != partitions.size()) throw std::invalid_argument("one partition per sample is required");
  std::vector<double> out;
  double j0 = 0.0;
  for (std::size_t k = 0; k < trajectory.size(); ++k) {
    if (bump >= partitions[k].size()) throw std::invalid_argument("bump index out of range");
    const double j = weighted_energy(trajectory[k].u, partitions[k].right_weight(bump));
    if (k == 0) j0 = j;
    out.push_back(j - j0);
  }
  return out;
}

}  // namespace dplab
