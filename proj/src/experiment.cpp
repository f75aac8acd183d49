#include "dplab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "dplab/functionals.hpp"
#include "dplab/helmholtz.hpp"
#include "dplab/modulation.hpp"
#include "dplab/peakon.hpp"
#include "dplab/solver.hpp"

namespace dplab {

std::vector<std::string> diagnostics_columns(std::size_t bumps) {
  std::vector<std::string> cols{"t", "E", "F", "H_norm"};
  for (std::size_t i = 1; i <= bumps; ++i)
    for (const char* base : {"x_tilde", "xi1", "M1", "E", "F", "J_K", "delta_J_K"})
      cols.push_back(std::string(base) + "_" + std::to_string(i));
  cols.emplace_back("distance_to_train");
  for (std::size_t i = 1; i <= bumps; ++i) cols.push_back("cubic_" + std::to_string(i));
  for (const char* m : {"pos_u_plus", "pos_u_minus", "pos_combo_plus", "pos_combo_minus", "pos_v_plus",
                        "pos_v_minus", "pos_h_plus", "pos_h_minus"})
    cols.emplace_back(m);
  cols.emplace_back("virial_residual");
  return cols;
}

CsvTable diagnostics_table(const std::vector<DiagnosticsRecord>& records) {
  if (records.empty()) throw std::invalid_argument("no diagnostics records to write");
  CsvTable table{diagnostics_columns(records.front().bumps.size()), {}};
  for (const auto& r : records) {
    std::vector<double> row{r.t, r.E, r.F, r.H_norm};
    for (const auto& b : r.bumps) row.insert(row.end(), {b.x_tilde, b.xi1, b.M1, b.E, b.F, b.J_K, b.delta_J_K});
    row.push_back(r.distance_to_train);
    for (const auto& b : r.bumps) row.push_back(b.cubic);
    const auto& m = r.margins;
    row.insert(row.end(), {m.u_plus, m.u_minus, m.combo_plus, m.combo_minus, m.v_plus, m.v_minus, m.h_plus, m.h_minus});
    row.push_back(r.virial_residual);
    table.rows.push_back(std::move(row));
  }
  return table;
}

void emit_csv(const std::vector<DiagnosticsRecord>& records, const std::string& path) {
  write_csv(path, diagnostics_table(records));
}

namespace {

// Nonnegative smooth momentum density near the train, mapped back to u.
GridFunction random_smooth_perturbation(const ExperimentConfig& config, const Grid& grid) {
  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> amplitude(0.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  constexpr int kModes = 8;
  std::vector<double> a(kModes);
  std::vector<double> theta(kModes);
  for (int m = 0; m < kModes; ++m) {
    a[m] = amplitude(rng);
    theta[m] = phase(rng);
  }
  const double mid = 0.5 * (config.centers.front() + config.centers.back());
  const double spread = 0.5 * (config.centers.back() - config.centers.front()) + 5.0;
  const GridFunction y = GridFunction::sample(grid, [&](double x) {
    double r = 0.0;
    for (int m = 0; m < kModes; ++m) r += a[m] * std::cos((m + 1) * std::numbers::pi * x / 8.0 + theta[m]);
    const double z = (x - mid) / spread;
    return r * r * std::exp(-0.5 * z * z);
  });
  return helmholtz_inverse(HelmholtzParameter::one(), y);
}

}  // namespace

InitialData initial_profile(const ExperimentConfig& config) {
  const Grid grid = config.grid();
  const PeakonTrain train = config.train();
  GridFunction u = mollified_train(train, grid, config.mollify_width);
  const double size = config.epsilon * config.epsilon;
  if (config.perturbation == PerturbationKind::none || size == 0.0) return {std::move(u), 0.0};

  GridFunction extra(grid);
  if (config.perturbation == PerturbationKind::scaled_bump) {
    extra = size * mollified_peakon(train[0], grid, config.mollify_width).profile;
  } else {
    extra = random_smooth_perturbation(config, grid);
    extra *= size / h_norm(extra);
  }
  const double norm = h_norm(extra);
  u += extra;
  return {std::move(u), norm};
}

ExperimentResult simulate(const ExperimentConfig& config) {
  const Grid grid = config.grid();
  const std::vector<double> speeds = config.speeds;
  const std::size_t n = speeds.size();
  const double K = config.scale_K();

  InitialData init = initial_profile(config);
  ExperimentResult result;
  result.perturbation_norm = init.perturbation_norm;

  SolverState state = make_state(std::move(init.u), config.dt, config.filter_strength);
  const auto substeps = static_cast<long>(std::max(1.0, std::ceil(config.sample_every / state.dt - 1e-9)));
  state.dt = config.sample_every / static_cast<double>(substeps);
  const auto samples = static_cast<long>(std::llround(config.t_end / config.sample_every));

  std::vector<double> x_tilde = config.centers;
  std::vector<double> J0(n, 0.0);
  std::vector<double> times;
  std::vector<std::vector<double>> history;

  try {
    for (long m = 0; m <= samples; ++m) {
      const double t = static_cast<double>(m) * config.sample_every;
      state.t = t;
      const GridFunction v = helmholtz_inverse(HelmholtzParameter::two(), state.u);
      std::vector<double> guess = x_tilde;
      if (m > 0)
        for (std::size_t i = 0; i < n; ++i) guess[i] += speeds[i] * config.sample_every;
      x_tilde = solve_modulation(v, speeds, guess);
      if (n > 1)
        for (std::size_t i = 1; i < n; ++i)
          if (!(x_tilde[i] - x_tilde[i - 1] > 4.0 * K)) throw TrackingLost("modulated centers collapsed");

      const WeightPartition partition(x_tilde, K, grid);
      const std::vector<double> xi1 = track_argmax(v, partition.intervals());
      const SpectralInterpolant v_interp(v);
      const EnergyReport energies = localized_energies(state.u, partition);

      DiagnosticsRecord rec{};
      rec.t = t;
      rec.E = energies.E;
      rec.F = energies.F;
      rec.H_norm = energies.H_norm;
      for (std::size_t i = 0; i < n; ++i) {
        BumpDiagnostics b{};
        b.x_tilde = x_tilde[i];
        b.xi1 = xi1[i];
        b.M1 = v_interp(xi1[i]);
        b.E = energies.per_bump[i].E;
        b.F = energies.per_bump[i].F;
        b.J_K = energies.per_bump[i].J;
        if (m == 0) J0[i] = b.J_K;
        b.delta_J_K = b.J_K - J0[i];
        b.cubic = cubic_inequality_value(b.M1, b.E, b.F);
        result.max_center_offset = std::max(result.max_center_offset, std::abs(b.xi1 - b.x_tilde));
        rec.bumps.push_back(b);
      }
      rec.distance_to_train = stability_distance(state.u, speeds, xi1);
      rec.margins = positivity_diagnostics(state.u);

      // Static weight across the first gap, or just behind a lone bump.
      const double weight_center = n > 1 ? partition.midpoints().front() : x_tilde.front() - 2.0;
      const StaticWeight weight = psi_weight(grid, weight_center, K);
      SolverState next = step(state);
      rec.virial_residual = virial_residual(state, next, weight);

      result.sup_distance = std::max(result.sup_distance, rec.distance_to_train);
      result.records.push_back(std::move(rec));
      times.push_back(t);
      history.push_back(x_tilde);
      if (m == samples) break;

      state = std::move(next);
      for (long k = 1; k < substeps; ++k) state = step(state);
    }
  } catch (const TrackingLost& e) {
    result.tracking_lost = true;
    result.failure = e.what();
  } catch (const NumericalError& e) {
    result.tracking_lost = true;
    result.failure = e.what();
  }

  if (times.size() >= 3) result.speed_estimates = estimate_speeds(times, history, {times.front(), times.back()});
  return result;
}

CsvTable summary_table(const ExperimentConfig& config, const ExperimentResult& result) {
  CsvTable t;
  t.columns = {"sup_distance", "perturbation_norm", "max_center_offset", "tracking_lost", "samples", "epsilon", "L"};
  std::vector<double> row{result.sup_distance,
                          result.perturbation_norm,
                          result.max_center_offset,
                          result.tracking_lost ? 1.0 : 0.0,
                          static_cast<double>(result.records.size()),
                          config.epsilon,
                          config.gap()};
  for (std::size_t i = 0; i < result.speed_estimates.size(); ++i) {
    t.columns.push_back("speed_est_" + std::to_string(i + 1));
    row.push_back(result.speed_estimates[i]);
  }
  t.rows.push_back(std::move(row));
  return t;
}

ExperimentResult run_stability_experiment(const ExperimentConfig& config, const std::string& csv_path) {
  ExperimentResult result = simulate(config);
  if (result.records.empty())
    write_csv(csv_path, {diagnostics_columns(config.speeds.size()), {}});
  else
    emit_csv(result.records, csv_path);
  write_csv(csv_path + ".summary.csv", summary_table(config, result));
  return result;
}

double fitted_exponent(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("exponent fit needs two or more points");
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(x[k] > 0.0 && y[k] > 0.0)) throw std::invalid_argument("exponent fit needs positive data");
    mx += std::log(x[k]);
    my += std::log(y[k]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double dx = std::log(x[k]) - mx;
    sxy += dx * (std::log(y[k]) - my);
    sxx += dx * dx;
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("exponent fit needs distinct x values");
  return sxy / sxx;
}

}  // namespace dplab
