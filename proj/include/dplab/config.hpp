#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dplab/grid.hpp"
#include "dplab/peakon.hpp"

namespace dplab {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// key -> raw value text (numbers, "strings", [arrays]) as written in the file.
using RawConfig = std::map<std::string, std::string>;

// Flat `key = value` lines; `#` starts a comment; no tables.
RawConfig parse_config_text(std::string_view text);
RawConfig read_config_file(const std::string& path);
// Applies a `key=value` override on top of file values.
void apply_override(RawConfig& raw, std::string_view assignment);

enum class PerturbationKind { none, scaled_bump, random_smooth };

struct ExperimentConfig {
  double half_width = 40.0;
  std::size_t n_points = 16384;
  std::vector<double> speeds;
  std::vector<double> centers;
  // Declared minimum gap; 0 means "use the actual minimum gap".
  double declared_gap = 0.0;
  PerturbationKind perturbation = PerturbationKind::none;
  double epsilon = 0.0;
  double mollify_width = 0.1;
  double t_end = 10.0;
  // 0 selects the CFL step.
  double dt = 0.0;
  double sample_every = 0.1;
  std::optional<double> K_override;
  std::uint64_t seed = 0;
  double filter_strength = 36.0;
  // Replaces kappa = 2 in the identity suite's smoothing-operator check.
  std::optional<double> fault_kappa;

  Grid grid() const { return Grid(half_width, n_points); }
  PeakonTrain train() const;
  // Declared gap, or the actual minimum gap, or +inf for one bump.
  double gap() const;
  double scale_K() const;
  // One quarter of the smallest of c_1 and the consecutive speed differences.
  double sigma0() const;
};

// Validates and converts; throws ConfigError on any problem.
ExperimentConfig build_config(const RawConfig& raw);
ExperimentConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

std::string to_string(PerturbationKind kind);

}  // namespace dplab
