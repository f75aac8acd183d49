#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "dplab/functionals.hpp"
#include "dplab/modulation.hpp"
#include "dplab/peakon.hpp"
#include "dplab/solver.hpp"

using namespace dplab;

namespace {

SolverState run_until(SolverState s, double t_end) {
  const auto steps = static_cast<long>(std::ceil((t_end - s.t) / s.dt - 1e-9));
  const double dt = (t_end - s.t) / static_cast<double>(steps);
  for (long k = 0; k < steps; ++k) s = step(s, dt);
  return s;
}

double peak_position(const GridFunction& u) {
  const Grid& g = u.grid();
  return track_argmax(u, {{-g.half_width(), g.half_width() - g.dx()}})[0];
}

}  // namespace

TEST_CASE("rhs of trivial and travelling data") {
  const Grid g(40.0, 1 << 14);
  CHECK(rhs(GridFunction(g)).max_abs() == 0.0);
  const GridFunction k = GridFunction::sample(g, [](double) { return 0.7; });
  CHECK(rhs(k).max_abs() < 1e-12);

  for (double c : {1.0, 2.0}) {
    const GridFunction u = mollified_peakon({c, 0.0}, g, 0.1).profile;
    const GridFunction travel = (-c) * differentiate(u, 1);
    CHECK(l2_norm(rhs(u) - travel) <= 0.05 * l2_norm(travel));
  }
}

TEST_CASE("state construction and step guards") {
  const Grid g(40.0, 1024);
  const GridFunction u = mollified_peakon({1.0, 0.0}, g, 0.2).profile;
  const SolverState s = make_state(u);
  CHECK(s.dt == doctest::Approx(cfl_limit(u)));
  CHECK(cfl_limit(u) == doctest::Approx(0.5 * g.dx() / u.max_abs()));
  CHECK_THROWS_AS(make_state(u, 10.0 * s.dt), std::invalid_argument);
  CHECK_THROWS_AS(make_state(u, 0.0, -1.0), std::invalid_argument);

  SolverState bad = s;
  bad.u[10] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(step(bad), NumericalError);
  CHECK_THROWS_AS(make_state(bad.u), NumericalError);

  SolverState zero = make_state(GridFunction(g), 0.01);
  for (int k = 0; k < 5; ++k) zero = step(zero);
  CHECK(zero.u.max_abs() == 0.0);
  CHECK(zero.t == doctest::Approx(0.05));
}

TEST_CASE("single peakon travels at its speed and conserves E and F") {
  const Grid g(40.0, 1 << 14);
  const GridFunction u0 = mollified_peakon({1.0, -5.0}, g, 0.1).profile;
  const SolverState s = run_until(make_state(u0), 3.0);
  CHECK(std::abs(peak_position(s.u) - (-2.0)) < 0.03);
  CHECK(std::abs(energy_E(s.u) - energy_E(u0)) <= 1e-5 * energy_E(u0));
  CHECK(std::abs(energy_F(s.u) - energy_F(u0)) <= 1e-5 * energy_F(u0));
  CHECK(s.u.max_abs() <= 2.0 * std::sqrt(2.0) * l2_norm(s.u));
}

TEST_CASE("the faster bump pulls away from the slower one") {
  const Grid g(40.0, 1 << 13);
  const PeakonTrain pair({{1.0, -15.0}, {2.0, 0.0}});
  const GridFunction u0 = mollified_train(pair, g, 0.2);
  const SolverState s = run_until(make_state(u0), 4.0);
  const auto peaks = track_argmax(s.u, {{-39.0, -5.0}, {-5.0, 30.0}});
  const double growth = (peaks[1] - peaks[0]) - 15.0;
  CHECK(growth == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("self-convergence under refinement") {
  const double t_end = 1.0;
  auto terminal = [&](std::size_t n) {
    const Grid g(40.0, n);
    return run_until(make_state(mollified_peakon({1.0, 0.0}, g, 0.2).profile), t_end).u;
  };
  const GridFunction ref = terminal(1 << 14);
  auto distance = [&](const GridFunction& coarse) {
    const SpectralInterpolant f(coarse);
    double s = 0.0;
    for (std::size_t k = 0; k < ref.size(); ++k) {
      const double d = f(ref.grid().node(k)) - ref[k];
      s += d * d;
    }
    return std::sqrt(s * ref.grid().dx());
  };
  const double e1 = distance(terminal(1 << 10));
  const double e2 = distance(terminal(1 << 11));
  MESSAGE("terminal L2 differences " << e1 << " " << e2);
  CHECK(e2 <= 0.5 * e1);
}

TEST_CASE("virial rate matches the directional derivative of the weighted energy") {
  const Grid g(40.0, 4096);
  const GridFunction u = mollified_train(PeakonTrain({{1.0, -6.0}, {2.0, 4.0}}), g, 0.5);
  const StaticWeight w = psi_weight(g, -1.0, 4.0);
  const GridFunction du = rhs(u);
  const double h = 1e-4;
  const double fd = (weighted_energy(u + h * du, w.g) - weighted_energy(u + (-h) * du, w.g)) / (2.0 * h);
  CHECK(virial_rate(u, w) == doctest::Approx(fd).epsilon(1e-6).scale(0.0));

  CHECK(std::abs(virial_rate(u, constant_weight(g))) < 1e-14);
}

TEST_CASE("virial residual") {
  const Grid g(40.0, 1024);
  const StaticWeight w = psi_weight(g, 0.0, 4.0);
  const SolverState z0 = make_state(GridFunction(g), 0.01, 0.0);
  CHECK(virial_residual(z0, step(z0), w) == 0.0);

  const GridFunction u0 = mollified_peakon({1.0, -2.0}, g, 0.5).profile;
  const SolverState s0 = make_state(u0, 0.0, 0.0);
  const SolverState s1 = step(s0);
  // With a flat weight the residual is the energy drift of one step divided by the step.
  CHECK(virial_residual(s0, s1, constant_weight(g)) * s0.dt <= 1e-8 * energy_E(u0));

  std::vector<double> residuals;
  for (double dt : {0.04, 0.02, 0.01}) {
    const SolverState a = make_state(u0, dt, 0.0);
    residuals.push_back(virial_residual(a, step(a), w));
  }
  for (std::size_t k = 1; k < residuals.size(); ++k)
    CHECK(residuals[k - 1] / residuals[k] == doctest::Approx(4.0).epsilon(0.25));
  CHECK_THROWS_AS(virial_residual(s1, s0, w), std::invalid_argument);
}

TEST_CASE("monotonicity track") {
  const Grid g(40.0, 4096);
  const GridFunction u0 = mollified_peakon({1.0, 0.0}, g, 0.2).profile;
  SolverState s = make_state(u0);
  std::vector<SolverState> traj{s};
  const std::vector<double> center{0.0};
  std::vector<WeightPartition> parts{WeightPartition(center, 4.0, g)};
  for (int k = 0; k < 50; ++k) {
    s = step(s);
    traj.push_back(s);
    parts.emplace_back(center, 4.0, g);
  }
  const auto track = monotonicity_track(traj, parts, 0);
  CHECK(track.front() == 0.0);
  for (double d : track) CHECK(std::abs(d) <= 1e-5 * energy_E(u0));
  CHECK_THROWS_AS(monotonicity_track(traj, {}, 0), std::invalid_argument);
  CHECK_THROWS_AS(monotonicity_track(traj, parts, 1), std::invalid_argument);
}
