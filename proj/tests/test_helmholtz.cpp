#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "dplab/functionals.hpp"
#include "dplab/helmholtz.hpp"
#include "dplab/peakon.hpp"

using namespace dplab;

namespace {

const Grid& default_grid() {
  static const Grid g(40.0, 1 << 14);
  return g;
}

GridFunction random_profile(const Grid& g, unsigned seed, bool nonnegative = false) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> amp(nonnegative ? 0.1 : -1.0, 1.0), pos(-15.0, 15.0), wid(0.4, 3.0);
  double a[3], z[3], w[3];
  for (int i = 0; i < 3; ++i) a[i] = amp(rng), z[i] = pos(rng), w[i] = wid(rng);
  return GridFunction::sample(g, [&](double x) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i) s += a[i] * std::exp(-0.5 * (x - z[i]) * (x - z[i]) / (w[i] * w[i]));
    return s;
  });
}

// Direct quadrature of the Green's kernel e^{-kappa|x-s|}/(2 kappa), including periodic images.
double green_convolution(const GridFunction& f, double kappa, double x) {
  const Grid& g = f.grid();
  double s = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    double r = std::abs(x - g.node(k));
    r = std::min(r, g.length() - r);
    s += std::exp(-kappa * r) / (2.0 * kappa) * f[k];
  }
  return s * g.dx();
}

}  // namespace

TEST_CASE("kappa is restricted to 1 and 2") {
  CHECK_THROWS_AS(HelmholtzParameter(1.5), std::invalid_argument);
  CHECK_THROWS_AS(HelmholtzParameter(0.0), std::invalid_argument);
  CHECK(HelmholtzParameter::two().kappa() == 2.0);
  CHECK(HelmholtzParameter::unchecked(1.9).kappa() == 1.9);
}

TEST_CASE("inverse of the peakon is the smoothed peakon") {
  const Grid& g = default_grid();
  for (double c : {1.0, 2.0, 3.0}) {
    const GridFunction phi = sample_peakon({c, 0.0}, g, Sampling::band_limited);
    const GridFunction rho = sample_smooth_peakon({c, 0.0}, g);
    CHECK((helmholtz_inverse(HelmholtzParameter::two(), phi) - rho).max_abs() < 1e-6);
  }
}

TEST_CASE("kappa = 1 inverse round-trips through the forward operator") {
  const Grid& g = default_grid();
  const GridFunction f = GridFunction::sample(g, [](double x) { return std::exp(-2.0 * std::abs(x)); });
  const GridFunction inv = helmholtz_inverse(HelmholtzParameter::one(), f);
  CHECK((helmholtz_forward(HelmholtzParameter::one(), inv) - f).max_abs() < 1e-6);
}

TEST_CASE("kernel value at a translate center") {
  const Grid& g = default_grid();
  for (double z : {-12.0, 0.0, 7.5}) {
    const GridFunction tail = sample_peakon({1.0, z}, g, Sampling::band_limited);
    const SpectralInterpolant v(helmholtz_inverse(HelmholtzParameter::two(), tail));
    CHECK(std::abs(v(z) - 1.0 / 6.0) < 1e-6);
    CHECK(std::abs(v(z + 3.0) - (std::exp(-3.0) / 3.0 - std::exp(-6.0) / 6.0)) < 1e-6);
  }
}

TEST_CASE("forward operator on the smoothed peakon") {
  const Grid& g = default_grid();
  const GridFunction rho = sample_smooth_peakon({1.0, 0.0}, g, Sampling::band_limited);
  const GridFunction phi = helmholtz_forward(HelmholtzParameter::two(), rho);
  const GridFunction y = helmholtz_forward(HelmholtzParameter::one(), rho);
  double worst_phi = 0.0, worst_y = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double x = g.node(k);
    if (std::abs(x) < 1.0 || std::abs(x) > 24.0) continue;
    worst_phi = std::max(worst_phi, std::abs(phi[k] - std::exp(-std::abs(x))));
    worst_y = std::max(worst_y, std::abs(y[k] - 0.5 * std::exp(-2.0 * std::abs(x))));
  }
  CHECK(worst_phi < 1e-6);
  CHECK(worst_y < 1e-6);

  const GridFunction one = GridFunction::sample(g, [](double) { return 1.0; });
  CHECK((helmholtz_forward(HelmholtzParameter::one(), one) - one).max_abs() < 1e-12);
}

TEST_CASE("composed inverse equals its partial-fraction split") {
  const Grid& g = default_grid();
  const auto one = HelmholtzParameter::one(), two = HelmholtzParameter::two();
  const GridFunction phi = sample_peakon({1.0, 0.0}, g, Sampling::band_limited);
  const GridFunction a = helmholtz_inverse(two, helmholtz_inverse(one, phi));
  const GridFunction b = helmholtz_inverse(one, helmholtz_inverse(two, phi));
  CHECK((a - b).max_abs() <= 1e-12 * a.max_abs());
  CHECK((composed_inverse(phi) - a).max_abs() <= 1e-12 * a.max_abs());

  for (unsigned seed = 0; seed < 5; ++seed) {
    const GridFunction f = random_profile(g, seed);
    const GridFunction direct = composed_inverse(f);
    const GridFunction split = (1.0 / 3.0) * (helmholtz_inverse(one, f) - helmholtz_inverse(two, f));
    CHECK((direct - split).max_abs() <= 1e-12 * direct.max_abs());
  }
  CHECK(composed_inverse(GridFunction(g)).max_abs() == 0.0);
}

TEST_CASE("multiplier agrees with Green's kernel quadrature") {
  const Grid g(40.0, 2048);
  const GridFunction f = random_profile(g, 11);
  for (double kappa : {1.0, 2.0}) {
    const GridFunction inv = helmholtz_inverse(HelmholtzParameter(kappa), f);
    for (std::size_t k : {100u, 1024u, 1500u}) CHECK(std::abs(inv[k] - green_convolution(f, kappa, g.node(k))) < 1e-5);
  }
}

TEST_CASE("round trip, positivity, smoothing bound and derivative domination") {
  const Grid& g = default_grid();
  for (unsigned seed = 0; seed < 10; ++seed) {
    const GridFunction f = random_profile(g, seed);
    for (const auto kappa : {HelmholtzParameter::one(), HelmholtzParameter::two()}) {
      const GridFunction back = helmholtz_forward(kappa, helmholtz_inverse(kappa, f));
      CHECK((back - f).max_abs() <= 1e-10 * f.max_abs());
    }
    const double l2 = l2_norm(f);
    CHECK(helmholtz_inverse(HelmholtzParameter::two(), f).max_abs() <= l2 / (4.0 * std::sqrt(2.0)) + 1e-12);
    CHECK(helmholtz_inverse(HelmholtzParameter::one(), f).max_abs() <= 0.5 * l2 + 1e-12);

    const GridFunction p = random_profile(g, 100 + seed, true);
    const GridFunction v = helmholtz_inverse(HelmholtzParameter::two(), p);
    const GridFunction h = helmholtz_inverse(HelmholtzParameter::one(), p);
    CHECK(v.min() >= -1e-14);
    CHECK(h.min() >= -1e-14);
    const GridFunction vx = differentiate(v, 1);
    const GridFunction hx = differentiate(h, 1);
    bool dominated = true;
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (std::abs(vx[k]) > 2.0 * v[k] + 1e-12) dominated = false;
      if (std::abs(hx[k]) > h[k] + 1e-12) dominated = false;
    }
    CHECK(dominated);
  }
}
