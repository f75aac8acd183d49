#include "dplab/extrema.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "dplab/helmholtz.hpp"
#include "dplab/spectral.hpp"

namespace dplab {

std::vector<double> ExtremaDecomposition::turning_points() const {
  std::vector<double> out;
  for (std::size_t j = 0; j < maxima.size(); ++j) {
    out.push_back(maxima[j]);
    if (j < minima.size()) out.push_back(minima[j]);
  }
  return out;
}

ExtremaDecomposition::SortedView ExtremaDecomposition::sorted_view() const {
  SortedView s{max_values, min_values, true};
  std::sort(s.max_values.begin(), s.max_values.end(), std::greater<>());
  std::sort(s.min_values.begin(), s.min_values.end(), std::greater<>());
  for (std::size_t j = 0; j < s.min_values.size(); ++j)
    if (j + 1 >= s.max_values.size() || s.max_values[j + 1] < s.min_values[j]) s.dominated = false;
  return s;
}

namespace {

std::size_t node_index(const Grid& g, double x) {
  const double k = std::round((x + g.half_width()) / g.dx());
  return static_cast<std::size_t>(std::clamp(k, 0.0, static_cast<double>(g.size() - 1)));
}

// Moves a node-level extremum onto the zero of the interpolated derivative.
double refine_turning_point(const SpectralInterpolant& interp, const GridFunction& vx, std::size_t k) {
  const Grid& g = vx.grid();
  const double x = g.node(k);
  if (vx[k] == 0.0 || k == 0 || k + 1 >= g.size()) return x;
  double lo;
  double hi;
  if ((vx[k - 1] > 0.0) != (vx[k] > 0.0)) {
    lo = g.node(k - 1);
    hi = x;
  } else if ((vx[k] > 0.0) != (vx[k + 1] > 0.0)) {
    lo = x;
    hi = g.node(k + 1);
  } else {
    return x;
  }
  auto slope = [&](double t) { return interp.derivative(t, 1); };
  const double s_lo = slope(lo);
  const double s_hi = slope(hi);
  if (s_lo == 0.0) return lo;
  if (s_hi == 0.0) return hi;
  if ((s_lo > 0.0) == (s_hi > 0.0)) return x;
  std::uintmax_t iters = 60;
  const auto bracket = boost::math::tools::toms748_solve(slope, lo, hi, boost::math::tools::eps_tolerance<double>(50),
                                                         iters);
  return 0.5 * (bracket.first + bracket.second);
}

double crossing(const GridFunction& v, std::size_t a, std::size_t b, double level) {
  const Grid& g = v.grid();
  const double t = (level - v[a]) / (v[b] - v[a]);
  return g.node(a) + t * (g.node(b) - g.node(a));
}

GridFunction sign_pattern(const Grid& grid, const ExtremaDecomposition& d) {
  const std::vector<double> points = d.turning_points();
  return GridFunction::sample(grid, [&](double x) {
    const auto passed = std::upper_bound(points.begin(), points.end(), x) - points.begin();
    return passed % 2 == 0 ? -1.0 : 1.0;
  });
}

SmoothedField field_from_v(const GridFunction& v) {
  return {GridFunction(v.grid()), v, differentiate(v, 1), differentiate(v, 2)};
}

}  // namespace

ExtremaDecomposition decompose(const GridFunction& v, double c, double search_center, Interval window) {
  if (!(c > 0.0)) throw std::invalid_argument("bump speed must be positive");
  const Grid& g = v.grid();
  const double left_edge = -g.half_width();
  const double right_edge = g.half_width() - g.dx();
  if (!(window.lo < window.hi) || window.lo < left_edge - 1e-12 || window.hi > right_edge + 1e-12)
    throw std::invalid_argument("extrema window outside grid");
  const auto k_lo = static_cast<std::size_t>(std::ceil((window.lo - left_edge) / g.dx() - 1e-9));
  const auto k_hi = std::min(g.size() - 1, static_cast<std::size_t>(std::floor((window.hi - left_edge) / g.dx() + 1e-9)));
  if (k_hi <= k_lo + 1) throw std::invalid_argument("extrema window holds too few nodes");

  const double level = c * kLevelFraction;
  std::size_t seed = std::clamp(node_index(g, search_center), k_lo, k_hi);
  if (!(v[seed] > level)) {
    seed = k_lo;
    for (std::size_t k = k_lo; k <= k_hi; ++k)
      if (v[k] > v[seed]) seed = k;
  }
  if (!(v[seed] > level)) throw std::runtime_error("bump absent: level never crossed in window");

  std::size_t a = seed;
  while (a > k_lo && v[a] > level) --a;
  std::size_t b = seed;
  while (b < k_hi && v[b] > level) ++b;
  if (v[a] > level || v[b] > level) throw std::runtime_error("bump not enclosed by the level inside the window");

  ExtremaDecomposition d;
  d.bump_speed = c;
  d.alpha = crossing(v, a, a + 1, level);
  d.beta = crossing(v, b - 1, b, level);

  const double delta = kHysteresis * c;
  std::vector<std::size_t> max_nodes;
  std::vector<std::size_t> min_nodes;
  double mx = -std::numeric_limits<double>::infinity();
  double mn = std::numeric_limits<double>::infinity();
  std::size_t mx_at = a;
  std::size_t mn_at = a;
  bool seeking_max = true;
  for (std::size_t k = a; k <= b; ++k) {
    const double val = v[k];
    if (val > mx) {
      mx = val;
      mx_at = k;
    }
    if (val < mn) {
      mn = val;
      mn_at = k;
    }
    if (seeking_max && val < mx - delta) {
      max_nodes.push_back(mx_at);
      mn = val;
      mn_at = k;
      seeking_max = false;
    } else if (!seeking_max && val > mn + delta) {
      min_nodes.push_back(mn_at);
      mx = val;
      mx_at = k;
      seeking_max = true;
    }
  }

  const SpectralInterpolant interp(v);
  const GridFunction vx = differentiate(v, 1);
  for (std::size_t k : max_nodes) {
    const double x = refine_turning_point(interp, vx, k);
    d.maxima.push_back(x);
    d.max_values.push_back(interp(x));
  }
  for (std::size_t k : min_nodes) {
    const double x = refine_turning_point(interp, vx, k);
    d.minima.push_back(x);
    d.min_values.push_back(interp(x));
  }

  d.interlaced = !d.maxima.empty() && d.maxima.size() == d.minima.size() + 1;
  if (d.interlaced) {
    std::vector<double> chain{d.alpha};
    for (double x : d.turning_points()) chain.push_back(x);
    chain.push_back(d.beta);
    d.interlaced = std::is_sorted(chain.begin(), chain.end(), std::less_equal<>()) &&
                   std::adjacent_find(chain.begin(), chain.end()) == chain.end();
  }
  return d;
}

GridFunction build_g(const SmoothedField& f, const ExtremaDecomposition& d) {
  const GridFunction s = sign_pattern(f.v.grid(), d);
  GridFunction out(f.v.grid());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = 2.0 * f.v[k] + f.vxx[k] + 3.0 * s[k] * f.vx[k];
  return out;
}

GridFunction build_h(const SmoothedField& f, const ExtremaDecomposition& d) {
  const GridFunction s = sign_pattern(f.v.grid(), d);
  GridFunction out(f.v.grid());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = -f.vxx[k] + 16.0 * f.v[k] + 6.0 * s[k] * f.vx[k];
  return out;
}

GridFunction build_g(const GridFunction& v, const ExtremaDecomposition& d) { return build_g(field_from_v(v), d); }
GridFunction build_h(const GridFunction& v, const ExtremaDecomposition& d) { return build_h(field_from_v(v), d); }

namespace {

double extrema_sum(const ExtremaDecomposition& d, int power, const std::function<double(double)>& weight) {
  double s = 0.0;
  for (std::size_t j = 0; j < d.maxima.size(); ++j) s += std::pow(d.max_values[j], power) * weight(d.maxima[j]);
  for (std::size_t j = 0; j < d.minima.size(); ++j) s -= std::pow(d.min_values[j], power) * weight(d.minima[j]);
  return s;
}

}  // namespace

double energy_extrema_residual(const GridFunction& u, const ExtremaDecomposition& d) {
  const SmoothedField f = smoothed_field(u);
  const GridFunction g = build_g(f, d);
  const double lhs = integrate_product(g, g);
  const double rhs = integrate(energy_density(f)) - 12.0 * extrema_sum(d, 2, [](double) { return 1.0; });
  return std::abs(lhs - rhs);
}

double cubic_extrema_residual(const GridFunction& u, const ExtremaDecomposition& d) {
  const SmoothedField f = smoothed_field(u);
  const GridFunction g = build_g(f, d);
  const GridFunction h = build_h(f, d);
  const double lhs = integrate_product(h, g.times(g));
  const double rhs = energy_F(u) - 144.0 * extrema_sum(d, 3, [](double) { return 1.0; });
  return std::abs(lhs - rhs);
}

std::vector<std::pair<double, double>> localized_identity_residuals(const GridFunction& u, const WeightPartition& p,
                                                                    const std::vector<ExtremaDecomposition>& d) {
  if (d.size() != p.size()) throw std::invalid_argument("one decomposition per bump is required");
  const SmoothedField f = smoothed_field(u);
  const EnergyReport energies = localized_energies(u, p);
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const GridFunction g = build_g(f, d[i]);
    const GridFunction h = build_h(f, d[i]);
    const GridFunction g2 = g.times(g);
    const auto weight = [&](double x) { return p.piece_at(i, x); };
    const double lhs_e = integrate_product(g2, p.piece(i));
    const double rhs_e = energies.per_bump[i].E - 12.0 * extrema_sum(d[i], 2, weight);
    const double lhs_f = integrate_product(h.times(g2), p.piece(i));
    const double rhs_f = energies.per_bump[i].F - 144.0 * extrema_sum(d[i], 3, weight);
    out.emplace_back(std::abs(lhs_e - rhs_e), std::abs(lhs_f - rhs_f));
  }
  return out;
}

double cubic_inequality_value(double M1, double E, double F) { return M1 * M1 * M1 - 0.25 * E * M1 + F / 72.0; }

double PositivityMargins::smallest() const {
  return std::min({u_plus, u_minus, combo_plus, combo_minus, v_plus, v_minus, h_plus, h_minus});
}

PositivityMargins positivity_diagnostics(const GridFunction& u) {
  using cplx = std::complex<double>;
  const std::size_t nyquist = u.size() / 2;
  // Mixed first-order symbols; the Nyquist coefficient keeps its real part only.
  auto symbol = [nyquist](cplx m, std::size_t j) { return j == nyquist ? cplx(m.real(), 0.0) : m; };

  const GridFunction ux = differentiate(u, 1);
  const GridFunction combo_plus = apply_multiplier(u, [&](double w, std::size_t j) {
    return symbol(cplx(2.0, w) * cplx(1.0, -w) / (4.0 + w * w), j);
  });
  const GridFunction combo_minus = apply_multiplier(u, [&](double w, std::size_t j) {
    return symbol(cplx(2.0, -w) * cplx(1.0, w) / (4.0 + w * w), j);
  });
  const GridFunction v = helmholtz_inverse(HelmholtzParameter::two(), u);
  const GridFunction vx = differentiate(v, 1);
  const GridFunction h = helmholtz_inverse(HelmholtzParameter::one(), u.times(u));
  const GridFunction hx = differentiate(h, 1);

  PositivityMargins m{};
  m.u_plus = (u + ux).min();
  m.u_minus = (u - ux).min();
  m.combo_plus = combo_plus.min();
  m.combo_minus = combo_minus.min();
  m.v_plus = (2.0 * v + vx).min();
  m.v_minus = (2.0 * v - vx).min();
  m.h_plus = (h + hx).min();
  m.h_minus = (h - hx).min();
  return m;
}

}  // namespace dplab
