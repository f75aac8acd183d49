#include <cmath>
#include <random>
#include <sstream>

#include "dplab/experiment.hpp"
#include "dplab/functionals.hpp"
#include "dplab/helmholtz.hpp"
#include "dplab/peakon.hpp"
#include "dplab/spectral.hpp"

namespace dplab {

bool IdentityReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

std::string IdentityReport::to_text() const {
  std::ostringstream out;
  out << "check,residual,tolerance,status\n";
  for (const auto& c : checks)
    out << c.name << ',' << format_double(c.residual) << ',' << format_double(c.tolerance) << ','
        << (c.passed ? "pass" : "fail") << '\n';
  return out.str();
}

namespace {

class Recorder {
 public:
  void add(std::string name, double residual, double tolerance) {
    const bool ok = std::isfinite(residual) && residual <= tolerance;
    report_.checks.push_back({std::move(name), residual, tolerance, ok});
  }
  IdentityReport take() { return std::move(report_); }

 private:
  IdentityReport report_;
};

double relative(double measured, double expected) { return std::abs(measured - expected) / std::abs(expected); }

double sup_difference(const GridFunction& a, const GridFunction& b) { return (a - b).max_abs(); }

// Random smooth profile: a few Gaussian bumps of random sign, width and position.
GridFunction random_profile(const Grid& grid, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(-15.0, 15.0);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::uniform_real_distribution<double> width(0.5, 3.0);
  struct Bump {
    double a, z, w;
  };
  std::vector<Bump> bumps;
  for (int k = 0; k < 4; ++k) bumps.push_back({amp(rng), pos(rng), width(rng)});
  return GridFunction::sample(grid, [&](double x) {
    double s = 0.0;
    for (const auto& b : bumps) s += b.a * std::exp(-0.5 * (x - b.z) * (x - b.z) / (b.w * b.w));
    return s;
  });
}

}  // namespace

IdentityReport run_identity_suite(const ExperimentConfig& config) {
  const Grid grid = config.grid();
  const PeakonTrain train = config.train();
  Recorder rec;

  for (const auto& p : train.peakons()) {
    const double c = p.speed;
    const std::string tag = "c=" + format_double(c);
    const Peakon centered{c, 0.0};
    const GridFunction phi = sample_peakon(centered, grid, Sampling::band_limited);
    const ReferenceNorms ref = reference_norms(c);
    rec.add("reference_E " + tag, relative(energy_E(phi), ref.E), 1e-6);
    rec.add("reference_F " + tag, relative(energy_F(phi), ref.F), 1e-6);
    rec.add("reference_H_norm " + tag, relative(h_norm(phi), ref.H_norm), 1e-6);
    const GridFunction rho = sample_smooth_peakon(centered, grid, Sampling::band_limited);
    rec.add("reference_rho_max " + tag, relative(SpectralInterpolant(rho)(0.0), ref.rho_max), 1e-6);
    const GridFunction drho = GridFunction::sample(grid, [&](double x) { return smooth_peakon_derivative(c, x); });
    rec.add("reference_drho_L2_sq " + tag, relative(integrate_product(drho, drho), ref.drho_L2_sq), 1e-6);

    const HelmholtzParameter smoothing =
        config.fault_kappa ? HelmholtzParameter::unchecked(*config.fault_kappa) : HelmholtzParameter::two();
    const GridFunction rho_closed = sample_smooth_peakon(centered, grid);
    rec.add("smooth_peakon_operator " + tag, sup_difference(helmholtz_inverse(smoothing, phi), rho_closed), 1e-6);
  }

  {
    std::mt19937_64 rng(config.seed);
    const GridFunction f = random_profile(grid, rng);
    const GridFunction direct = composed_inverse(f);
    const GridFunction split = (1.0 / 3.0) * (helmholtz_inverse(HelmholtzParameter::one(), f) -
                                              helmholtz_inverse(HelmholtzParameter::two(), f));
    rec.add("partial_fraction", sup_difference(direct, split) / direct.max_abs(), 1e-12);
  }

  for (std::size_t i = 0; i < train.size(); ++i) {
    const GridFunction tail = sample_peakon({1.0, train[i].center}, grid, Sampling::band_limited);
    const SpectralInterpolant smoothed(helmholtz_inverse(HelmholtzParameter::two(), tail));
    for (std::size_t j = 0; j < train.size(); ++j) {
      const double d = std::abs(train[j].center - train[i].center);
      const double expected = std::exp(-d) / 3.0 - std::exp(-2.0 * d) / 6.0;
      rec.add("kernel_value " + std::to_string(i + 1) + "," + std::to_string(j + 1),
              std::abs(smoothed(train[j].center) - expected), 1e-8);
    }
  }

  {
    const Peakon first = train[0];
    const GridFunction smooth = mollified_peakon(first, grid, config.mollify_width).profile;
    rec.add("quadratic_identity mollified", quadratic_identity_residual(smooth, first.center, first.speed), 1e-5);
    std::mt19937_64 rng(config.seed + 1);
    double worst = 0.0;
    for (int k = 0; k < 5; ++k) {
      const GridFunction u = random_profile(grid, rng);
      worst = std::max(worst, quadratic_identity_residual(u, first.center, first.speed));
    }
    rec.add("quadratic_identity random", worst, 1e-5);
  }

  const GridFunction train_profile = mollified_train(train, grid, config.mollify_width);
  {
    const double bound = train.size() > 1 ? 5.0 * std::exp(-train.min_gap() / 4.0) : 0.0;
    double total = 0.0;
    for (const auto& p : train.peakons()) total += p.speed;
    const GridFunction exact = sample_train(train, grid, Profile::peakon, Sampling::band_limited);
    rec.add("general_quadratic_identity exact", general_quadratic_identity_residual(exact, train),
            bound * total * total + 1e-5);
    rec.add("general_quadratic_identity mollified", general_quadratic_identity_residual(train_profile, train),
            bound * total * total + 1e-5);
  }

  {
    const Peakon first{train[0].speed, 0.0};
    const GridFunction u = mollified_peakon(first, grid, config.mollify_width).profile;
    const GridFunction v = helmholtz_inverse(HelmholtzParameter::two(), u);
    const ExtremaDecomposition d = decompose(v, first.speed, 0.0, {-20.0, 20.0});
    rec.add("energy_extrema_identity", energy_extrema_residual(u, d), 1e-4);
    rec.add("cubic_extrema_identity", cubic_extrema_residual(u, d), 1e-4);

    const double c = first.speed;
    rec.add("cubic_value exact_peakon", std::abs(cubic_inequality_value(c / 6.0, c * c / 3.0, 2.0 * c * c * c / 3.0)),
            1e-12);
    const double measured = cubic_inequality_value(d.max_values.front(), energy_E(u), energy_F(u));
    rec.add("cubic_value mollified", std::max(0.0, measured), 1e-3 * c * c * c);
  }

  if (train.size() > 1) {
    const WeightPartition partition(train.centers(), config.scale_K(), grid);
    const GridFunction v = helmholtz_inverse(HelmholtzParameter::two(), train_profile);
    std::vector<ExtremaDecomposition> ds;
    const auto intervals = partition.intervals();
    for (std::size_t i = 0; i < train.size(); ++i)
      ds.push_back(decompose(v, train[i].speed, train[i].center, intervals[i]));
    const double H = h_norm(train_profile);
    const double scale = kLocalizedEnvelope / std::sqrt(train.min_gap());
    const auto residuals = localized_identity_residuals(train_profile, partition, ds);
    for (std::size_t i = 0; i < residuals.size(); ++i) {
      rec.add("localized_energy_identity " + std::to_string(i + 1), residuals[i].first, scale * H * H);
      rec.add("localized_cubic_identity " + std::to_string(i + 1), residuals[i].second, scale * H * H * H);
    }
    double unity = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < partition.size(); ++i) s += partition.piece(i)[k];
      unity = std::max(unity, std::abs(s - 1.0));
    }
    rec.add("partition_of_unity", unity, 1e-12);
  }

  rec.add("weight_derivative_domination", weight_derivative_ratio(), 10.0);

  {
    const PositivityMargins m = positivity_diagnostics(train_profile);
    rec.add("positivity_margins", std::max(0.0, -m.smallest()), 1e-6);
  }
  return rec.take();
}

}  // namespace dplab
