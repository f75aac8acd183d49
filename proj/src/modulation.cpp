#include "dplab/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dplab/functionals.hpp"
#include "dplab/peakon.hpp"

namespace dplab {

std::vector<double> track_argmax(const GridFunction& v, const std::vector<Interval>& intervals) {
  const Grid& g = v.grid();
  std::vector<double> out;
  for (const auto& J : intervals) {
    const auto k_lo = static_cast<long>(std::ceil((J.lo + g.half_width()) / g.dx() - 1e-9));
    const auto k_hi = static_cast<long>(std::floor((J.hi + g.half_width()) / g.dx() + 1e-9));
    const long lo = std::max(k_lo, 0L);
    const long hi = std::min(k_hi, static_cast<long>(g.size()) - 1);
    if (lo > hi) throw std::invalid_argument("argmax interval contains no grid node");
    long best = lo;
    for (long k = lo + 1; k <= hi; ++k)
      if (v[static_cast<std::size_t>(k)] > v[static_cast<std::size_t>(best)]) best = k;
    double x = g.node(static_cast<std::size_t>(best));
    if (best > lo && best < hi) {
      const double left = v[static_cast<std::size_t>(best - 1)];
      const double mid = v[static_cast<std::size_t>(best)];
      const double right = v[static_cast<std::size_t>(best + 1)];
      const double curvature = left - 2.0 * mid + right;
      if (mid > left && mid > right && curvature < 0.0) x += 0.5 * g.dx() * (left - right) / curvature;
    }
    out.push_back(x);
  }
  return out;
}

namespace {

struct Residuals {
  std::vector<double> r;
  std::vector<double> jacobian;
};

Residuals evaluate(const GridFunction& v, const std::vector<double>& speeds, const std::vector<double>& centers) {
  const Grid& g = v.grid();
  const std::size_t n = speeds.size();
  GridFunction remainder = v;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < g.size(); ++k) remainder[k] -= smooth_peakon_value(speeds[j], g.node(k) - centers[j]);
  Residuals out{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    double slope_sq = 0.0;
    double curvature = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double x = g.node(k) - centers[i];
      const double d1 = smooth_peakon_derivative(speeds[i], x);
      r += remainder[k] * d1;
      slope_sq += d1 * d1;
      curvature += remainder[k] * smooth_peakon_second_derivative(speeds[i], x);
    }
    out.r[i] = r * g.dx();
    out.jacobian[i] = (slope_sq - curvature) * g.dx();
  }
  return out;
}

double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

std::vector<double> orthogonality_residuals(const GridFunction& v, const std::vector<double>& speeds,
                                            const std::vector<double>& centers) {
  if (speeds.size() != centers.size()) throw std::invalid_argument("speeds and centers differ in length");
  return evaluate(v, speeds, centers).r;
}

std::vector<double> solve_modulation(const GridFunction& v, const std::vector<double>& speeds,
                                     const std::vector<double>& guess, const ModulationOptions& options) {
  if (speeds.size() != guess.size() || speeds.empty())
    throw std::invalid_argument("speeds and guess must be nonempty and of equal length");
  std::vector<double> x = guess;
  for (int it = 0; it <= options.max_iterations; ++it) {
    const Residuals res = evaluate(v, speeds, x);
    if (max_abs(res.r) <= options.tolerance) {
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double nominal = speeds[i] * speeds[i] / 54.0;
        if (!(res.jacobian[i] >= 0.5 * nominal))
          throw TrackingLost("modulation converged to a degenerate point for bump " + std::to_string(i + 1));
      }
      return x;
    }
    if (it == options.max_iterations) break;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double move = res.r[i] / (speeds[i] * speeds[i] / 54.0);
      x[i] -= std::clamp(move, -options.max_step, options.max_step);
    }
  }
  throw TrackingLost("modulation did not converge in " + std::to_string(options.max_iterations) + " iterations");
}

std::vector<double> estimate_speeds(const std::vector<double>& times, const std::vector<std::vector<double>>& history,
                                    Interval window) {
  if (times.size() != history.size()) throw std::invalid_argument("times and history differ in length");
  std::vector<std::size_t> picked;
  for (std::size_t k = 0; k < times.size(); ++k)
    if (times[k] >= window.lo && times[k] <= window.hi) picked.push_back(k);
  if (picked.size() < 3) throw std::invalid_argument("speed estimate needs at least three samples in the window");
  const std::size_t n = history[picked.front()].size();
  double t_mean = 0.0;
  for (std::size_t k : picked) t_mean += times[k];
  t_mean /= static_cast<double>(picked.size());
  double t_var = 0.0;
  for (std::size_t k : picked) t_var += (times[k] - t_mean) * (times[k] - t_mean);
  if (!(t_var > 0.0)) throw std::invalid_argument("speed estimate needs distinct sample times");
  std::vector<double> slopes(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double x_mean = 0.0;
    for (std::size_t k : picked) x_mean += history[k].at(i);
    x_mean /= static_cast<double>(picked.size());
    double cov = 0.0;
    for (std::size_t k : picked) cov += (times[k] - t_mean) * (history[k][i] - x_mean);
    slopes[i] = cov / t_var;
  }
  return slopes;
}

double stability_distance(const GridFunction& u, const std::vector<double>& speeds,
                          const std::vector<double>& centers) {
  if (speeds.size() != centers.size()) throw std::invalid_argument("speeds and centers differ in length");
  GridFunction train(u.grid());
  for (std::size_t i = 0; i < speeds.size(); ++i)
    train += sample_peakon({speeds[i], centers[i]}, u.grid(), Sampling::band_limited);
  return h_distance(u, train);
}

}  // namespace dplab
