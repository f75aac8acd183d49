// dp-lab: identity checks, single runs and parameter sweeps for the peakon lab.

#include <omp.h>

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "dplab/config.hpp"
#include "dplab/experiment.hpp"

namespace {

enum ExitCode { kOk = 0, kIdentityFailure = 1, kTrackingLost = 2, kConfigInvalid = 3, kRuntimeError = 4 };

int sweep_threads() {
  int threads = omp_get_max_threads();
  if (const char* env = std::getenv("DP_LAB_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap >= 1) threads = std::min(threads, cap);
    } catch (const std::exception&) {
      std::cerr << "ignoring malformed DP_LAB_THREADS='" << env << "'\n";
    }
  }
  return std::max(1, threads);
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string cell = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(cell, &used);
    } catch (const std::exception&) {
      throw dplab::ConfigError("bad sweep value '" + cell + "'");
    }
    if (used != cell.size()) throw dplab::ConfigError("bad sweep value '" + cell + "'");
    out.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw dplab::ConfigError("sweep needs at least one value");
  return out;
}

std::string array_text(const std::vector<double>& xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + dplab::format_double(xs[i]);
  return s + "]";
}

// Config for one sweep point. The gap parameter respaces the train from its first center.
dplab::ExperimentConfig sweep_point(dplab::RawConfig raw, const std::string& param, double value) {
  const std::string text = dplab::format_double(value);
  if (param == "L") {
    dplab::ExperimentConfig base = dplab::build_config(raw);
    std::vector<double> centers = base.centers;
    for (std::size_t i = 1; i < centers.size(); ++i) centers[i] = centers[0] + static_cast<double>(i) * value;
    raw["centers"] = array_text(centers);
  }
  raw[param] = text;
  return dplab::build_config(raw);
}

int run_identity(const std::string& config_path, const std::vector<std::string>& overrides,
                 const std::string& report_path) {
  const dplab::ExperimentConfig cfg = dplab::load_config(config_path, overrides);
  const dplab::IdentityReport report = dplab::run_identity_suite(cfg);
  const std::string text = report.to_text();
  std::cout << text;
  std::ofstream out(report_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write report '" + report_path + "'");
  out << text;
  return report.all_passed() ? kOk : kIdentityFailure;
}

int run_simulate(const std::string& config_path, const std::vector<std::string>& overrides, const std::string& csv) {
  const dplab::ExperimentConfig cfg = dplab::load_config(config_path, overrides);
  const dplab::ExperimentResult r = dplab::run_stability_experiment(cfg, csv);
  std::cout << "samples " << r.records.size() << ", sup distance " << dplab::format_double(r.sup_distance) << '\n';
  if (r.tracking_lost) {
    std::cerr << "tracking lost: " << r.failure << '\n';
    return kTrackingLost;
  }
  return kOk;
}

int run_sweep(const std::string& config_path, const std::vector<std::string>& overrides, const std::string& param,
              const std::string& values_text, const std::string& out_dir) {
  dplab::RawConfig raw = dplab::read_config_file(config_path);
  for (const auto& o : overrides) dplab::apply_override(raw, o);
  const std::vector<double> values = parse_values(values_text);
  std::vector<dplab::ExperimentConfig> configs;
  for (double v : values) configs.push_back(sweep_point(raw, param, v));
  std::filesystem::create_directories(out_dir);

  std::vector<dplab::ExperimentResult> results(configs.size());
  std::vector<std::string> errors(configs.size());
  const auto count = static_cast<long>(configs.size());
#pragma omp parallel for schedule(dynamic) num_threads(sweep_threads())
  for (long k = 0; k < count; ++k) {
    const std::string path = out_dir + "/run_" + std::to_string(k + 1) + ".csv";
    try {
      results[static_cast<std::size_t>(k)] = dplab::run_stability_experiment(configs[static_cast<std::size_t>(k)], path);
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(k)] = e.what();
    }
  }

  int code = kOk;
  dplab::CsvTable summary{{"value", "sup_distance", "perturbation_norm", "max_center_offset", "tracking_lost"}, {}};
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t k = 0; k < configs.size(); ++k) {
    if (!errors[k].empty()) throw std::runtime_error("sweep run " + std::to_string(k + 1) + ": " + errors[k]);
    const auto& r = results[k];
    summary.rows.push_back({values[k], r.sup_distance, r.perturbation_norm, r.max_center_offset,
                            r.tracking_lost ? 1.0 : 0.0});
    if (r.tracking_lost) {
      code = kTrackingLost;
    } else if (values[k] > 0.0 && r.sup_distance > 0.0) {
      xs.push_back(values[k]);
      ys.push_back(r.sup_distance);
    }
  }
  dplab::write_csv(out_dir + "/sweep_summary.csv", summary);
  if (xs.size() >= 2) {
    const double predicted = param == "epsilon" ? 0.5 : (param == "L" ? -0.125 : std::nan(""));
    dplab::write_csv(out_dir + "/sweep_fit.csv",
                     {{"fitted_exponent", "predicted_exponent", "points"},
                      {{dplab::fitted_exponent(xs, ys), predicted, static_cast<double>(xs.size())}}});
    std::cout << "fitted exponent of sup distance against " << param << ": "
              << dplab::format_double(dplab::fitted_exponent(xs, ys)) << '\n';
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Peakon stability lab"};
  app.require_subcommand(1);
  std::string config_path;
  std::vector<std::string> overrides;

  auto* identity = app.add_subcommand("identity-suite", "Run the static identity checks");
  std::string report_path = "identity-report.csv";
  identity->add_option("--config", config_path, "Config file")->required();
  identity->add_option("--report", report_path, "Report output path");
  identity->add_option("--set", overrides, "Override a config key (key=value)");

  auto* simulate = app.add_subcommand("simulate", "Evolve one configuration and write diagnostics");
  std::string csv_path;
  simulate->add_option("--config", config_path, "Config file")->required();
  simulate->add_option("--out", csv_path, "CSV output path")->required();
  simulate->add_option("--set", overrides, "Override a config key (key=value)");

  auto* sweep = app.add_subcommand("sweep", "Run one simulation per parameter value");
  std::string param;
  std::string values;
  std::string out_dir;
  sweep->add_option("--config", config_path, "Config file")->required();
  sweep->add_option("--param", param, "Config key to vary (L respaces the train)")->required();
  sweep->add_option("--values", values, "Comma-separated values")->required();
  sweep->add_option("--out-dir", out_dir, "Output directory")->required();
  sweep->add_option("--set", overrides, "Override a config key (key=value)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigInvalid;
  }

  try {
    if (*identity) return run_identity(config_path, overrides, report_path);
    if (*simulate) return run_simulate(config_path, overrides, csv_path);
    return run_sweep(config_path, overrides, param, values, out_dir);
  } catch (const dplab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}
