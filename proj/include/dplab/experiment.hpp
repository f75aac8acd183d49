#pragma once

#include <string>
#include <vector>

#include "dplab/config.hpp"
#include "dplab/csv.hpp"
#include "dplab/extrema.hpp"
#include "dplab/grid.hpp"

namespace dplab {

struct BumpDiagnostics {
  double x_tilde;
  double xi1;
  double M1;
  double E;
  double F;
  double J_K;
  double delta_J_K;
  double cubic;
};

struct DiagnosticsRecord {
  double t;
  double E;
  double F;
  double H_norm;
  std::vector<BumpDiagnostics> bumps;
  double distance_to_train;
  PositivityMargins margins;
  double virial_residual;
};

std::vector<std::string> diagnostics_columns(std::size_t bumps);
CsvTable diagnostics_table(const std::vector<DiagnosticsRecord>& records);
void emit_csv(const std::vector<DiagnosticsRecord>& records, const std::string& path);

struct InitialData {
  GridFunction u;
  // H-norm of the perturbation that was added to the mollified train.
  double perturbation_norm;
};

InitialData initial_profile(const ExperimentConfig& config);

struct ExperimentResult {
  std::vector<DiagnosticsRecord> records;
  bool tracking_lost = false;
  std::string failure;
  double perturbation_norm = 0.0;
  double sup_distance = 0.0;
  // Largest |xi1 - x_tilde| over all samples and bumps.
  double max_center_offset = 0.0;
  // Least-squares slopes of x_tilde over the run (empty if too few samples).
  std::vector<double> speed_estimates;
};

ExperimentResult simulate(const ExperimentConfig& config);
// Runs, then writes the per-sample CSV and a key,value summary next to it.
ExperimentResult run_stability_experiment(const ExperimentConfig& config, const std::string& csv_path);
CsvTable summary_table(const ExperimentConfig& config, const ExperimentResult& result);

// Slope of log(y) against log(x).
double fitted_exponent(const std::vector<double>& x, const std::vector<double>& y);

struct IdentityCheck {
  std::string name;
  double residual;
  double tolerance;
  bool passed;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool all_passed() const;
  std::string to_text() const;
};

IdentityReport run_identity_suite(const ExperimentConfig& config);

}  // namespace dplab
