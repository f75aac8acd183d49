#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dplab/config.hpp"
#include "dplab/csv.hpp"
#include "dplab/experiment.hpp"
#include "dplab/functionals.hpp"
#include "dplab/helmholtz.hpp"

using namespace dplab;

namespace {

const std::string kSmall = R"(
D = 40.0
n_points = 2048
speeds = [1.0]
centers = [-10.0]
perturbation = "scaled-bump"
epsilon = 0.05
mollify_width = 0.2
t_end = 0.5
sample_every = 0.25
)";

ExperimentConfig small_config(const std::vector<std::string>& overrides = {}) {
  RawConfig raw = parse_config_text(kSmall);
  for (const auto& o : overrides) apply_override(raw, o);
  return build_config(raw);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "dplab-tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("config text parsing") {
  const RawConfig raw = parse_config_text("# header\nD = 20.0   # trailing\n\nperturbation = \"a#b\"\nspeeds=[1, 2]\n");
  CHECK(raw.at("D") == "20.0");
  CHECK(raw.at("perturbation") == "\"a#b\"");
  CHECK(raw.at("speeds") == "[1, 2]");
  CHECK_THROWS_AS(parse_config_text("D = 1\nD = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[grid]\nD = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("D 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("D =\n"), ConfigError);
  CHECK_THROWS_AS(read_config_file("/nonexistent/dplab.toml"), ConfigError);
}

TEST_CASE("shipped default config loads") {
  const ExperimentConfig c = load_config(std::string(DPLAB_SOURCE_DIR) + "/configs/default.toml", {});
  CHECK(c.speeds == std::vector<double>{1.0, 2.0});
  CHECK(c.centers.size() == 2);
  CHECK(c.perturbation == PerturbationKind::none);
  CHECK(c.gap() == doctest::Approx(40.0));
  CHECK(c.scale_K() == 4.0);
  CHECK(c.sigma0() == doctest::Approx(0.25));
}

TEST_CASE("config validation") {
  CHECK_NOTHROW(small_config());
  CHECK_THROWS_AS(small_config({"bogus=1"}), ConfigError);
  CHECK_THROWS_AS(small_config({"speeds=[]", "centers=[]"}), ConfigError);
  CHECK_THROWS_AS(small_config({"speeds=[1.0, 2.0]"}), ConfigError);
  CHECK_THROWS_AS(small_config({"D=abc"}), ConfigError);
  CHECK_THROWS_AS(small_config({"D=1e999"}), ConfigError);
  CHECK_THROWS_AS(small_config({"n_points=1000.5"}), ConfigError);
  CHECK_THROWS_AS(small_config({"n_points=1000"}), ConfigError);
  CHECK_THROWS_AS(small_config({"perturbation=scaled-bump"}), ConfigError);
  CHECK_THROWS_AS(small_config({"perturbation=\"wiggle\""}), ConfigError);
  CHECK_THROWS_AS(small_config({"speeds=[-1.0]"}), ConfigError);
  CHECK_THROWS_AS(small_config({"centers=[-38.0]"}), ConfigError);
  CHECK_THROWS_AS(small_config({"t_end=60.0"}), ConfigError);
  CHECK_THROWS_AS(small_config({"epsilon=-1"}), ConfigError);
  CHECK_THROWS_AS(small_config({"mollify_width=0"}), ConfigError);
  CHECK_THROWS_AS(small_config({"sample_every=0"}), ConfigError);
  CHECK_THROWS_AS(small_config({"K_override=3"}), ConfigError);
  CHECK_THROWS_AS(small_config({"seed=-2"}), ConfigError);
  CHECK_THROWS_AS(small_config({"speeds=[2.0, 1.0]", "centers=[-20.0, 0.0]"}), ConfigError);
  CHECK_THROWS_AS(small_config({"speeds=[1.0, 2.0]", "centers=[-20.0, -10.0]"}), ConfigError);
  CHECK_THROWS_AS(small_config({"speeds=[1.0, 2.0]", "centers=[-20.0, 0.0]", "L=25"}), ConfigError);
  RawConfig scratch_raw;
  CHECK_THROWS_AS(apply_override(scratch_raw, "novalue"), ConfigError);

  const ExperimentConfig pair = small_config({"speeds=[1.0, 3.0]", "centers=[-20.0, 0.0]", "L=18"});
  CHECK(pair.gap() == 18.0);
  CHECK(pair.scale_K() == 4.0);
  CHECK(pair.sigma0() == doctest::Approx(0.25));
  CHECK(small_config({"speeds=[1.0, 3.0]", "centers=[-20.0, 0.0]", "K_override=4.5"}).scale_K() == 4.5);
  CHECK(small_config({"speeds=[0.4]"}).sigma0() == doctest::Approx(0.1));
  CHECK(small_config({"perturbation=\"random-smooth\""}).perturbation == PerturbationKind::random_smooth);
}

TEST_CASE("csv formatting round trips") {
  const std::vector<double> values{0.0, -0.0, 1.0, 0.1, 1.0 / 3.0, 6.02214076e23, 4.9e-324, -1.7976931348623157e308,
                                   std::nextafter(1.0, 2.0)};
  const CsvTable table{{"a", "b", "c"}, {{values[0], values[1], values[2]}, {values[3], values[4], values[5]},
                                          {values[6], values[7], values[8]}}};
  const std::string text = to_csv_string(table);
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.back() == '\n');
  CHECK(text.substr(0, 6) == "a,b,c\n");
  const CsvTable back = parse_csv(text);
  REQUIRE(back.rows.size() == 3);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) {
      const double want = table.rows[r][c];
      const double got = back.rows[r][c];
      CHECK(std::signbit(got) == std::signbit(want));
      CHECK(got == want);
    }
  CHECK(to_csv_string({{"t"}, {}}) == "t\n");
  CHECK_THROWS(to_csv_string({{}, {}}));
  CHECK_THROWS(to_csv_string({{"a", "b"}, {{1.0}}}));
}

TEST_CASE("diagnostic column names") {
  const auto one = diagnostics_columns(1);
  const auto two = diagnostics_columns(2);
  CHECK(one.front() == "t");
  CHECK(one.back() == "virial_residual");
  CHECK(two.size() == one.size() + 8);
  for (const char* name : {"x_tilde_2", "xi1_2", "M1_2", "E_2", "F_2", "J_K_2", "delta_J_K_2", "cubic_2"})
    CHECK(std::find(two.begin(), two.end(), name) != two.end());
  CHECK(std::find(one.begin(), one.end(), "x_tilde_2") == one.end());
}

TEST_CASE("fitted exponent recovers a power law") {
  const std::vector<double> x{0.01, 0.02, 0.05, 0.1};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * std::pow(v, 0.5));
  CHECK(fitted_exponent(x, y) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS(fitted_exponent({1.0}, {1.0}));
  CHECK_THROWS(fitted_exponent({1.0, 1.0}, {1.0, 2.0}));
  CHECK_THROWS(fitted_exponent({1.0, 2.0}, {0.0, 2.0}));
}

TEST_CASE("initial profiles") {
  const ExperimentConfig bump = small_config();
  const InitialData a = initial_profile(bump);
  const InitialData plain = initial_profile(small_config({"epsilon=0"}));
  CHECK(plain.perturbation_norm == 0.0);
  CHECK(a.perturbation_norm > 0.0);
  CHECK(h_norm(a.u - plain.u) == doctest::Approx(a.perturbation_norm).epsilon(1e-12).scale(0.0));
  const double sharp_norm = bump.epsilon * bump.epsilon / std::sqrt(3.0);
  CHECK(a.perturbation_norm < sharp_norm);
  CHECK(a.perturbation_norm > 0.95 * sharp_norm);

  const ExperimentConfig rough = small_config({"perturbation=\"random-smooth\"", "seed=5"});
  const InitialData r = initial_profile(rough);
  CHECK(r.perturbation_norm == doctest::Approx(rough.epsilon * rough.epsilon).epsilon(1e-12).scale(0.0));
  const GridFunction y = helmholtz_forward(HelmholtzParameter::one(), r.u - plain.u);
  double worst = 0.0;
  double scale = 0.0;
  for (double v : y.values()) {
    worst = std::min(worst, v);
    scale = std::max(scale, std::abs(v));
  }
  CHECK(worst >= -1e-9 * scale);
  auto as_vector = [](const GridFunction& f) { return std::vector<double>(f.values().begin(), f.values().end()); };
  CHECK(as_vector(initial_profile(rough).u) == as_vector(r.u));
  CHECK(as_vector(initial_profile(small_config({"perturbation=\"random-smooth\"", "seed=6"})).u) != as_vector(r.u));
}

TEST_CASE("simulation output is deterministic") {
  const ExperimentConfig c = small_config();
  const auto p1 = scratch("det-1.csv");
  const auto p2 = scratch("det-2.csv");
  const ExperimentResult r1 = run_stability_experiment(c, p1.string());
  run_stability_experiment(c, p2.string());
  CHECK_FALSE(r1.tracking_lost);
  CHECK(r1.records.size() == 3);
  const std::string text = slurp(p1);
  CHECK(text == slurp(p2));
  CHECK(slurp(p1.string() + ".summary.csv") == slurp(p2.string() + ".summary.csv"));
  const CsvTable parsed = parse_csv(text);
  CHECK(parsed.columns == diagnostics_columns(1));
  REQUIRE(parsed.rows.size() == 3);
  CHECK(parsed.rows[2][0] == 0.5);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}

TEST_CASE("lost tracking keeps the samples taken so far") {
  const ExperimentConfig c = load_config(std::string(DPLAB_SOURCE_DIR) + "/tests/data/tracking_lost.toml", {});
  const auto path = scratch("lost.csv");
  const ExperimentResult r = run_stability_experiment(c, path.string());
  CHECK(r.tracking_lost);
  CHECK_FALSE(r.failure.empty());
  const CsvTable parsed = parse_csv(slurp(path));
  CHECK(parsed.rows.size() == r.records.size());
  CHECK(parsed.rows.size() > 1);
  CHECK(parsed.rows.back()[0] < c.t_end);
}

TEST_CASE("immediate tracking loss writes a header-only table") {
  const ExperimentConfig c = load_config(std::string(DPLAB_SOURCE_DIR) + "/tests/data/tracking_lost.toml",
                                         {"epsilon=1.7320508", "speeds=[1.0, 2.0]", "t_end=1.0"});
  const auto path = scratch("lost-now.csv");
  const ExperimentResult r = run_stability_experiment(c, path.string());
  CHECK(r.tracking_lost);
  CHECK(r.records.empty());
  const CsvTable parsed = parse_csv(slurp(path));
  CHECK(parsed.columns == diagnostics_columns(2));
  CHECK(parsed.rows.empty());
}

TEST_CASE("unperturbed sharp peakon stays near the exact solution") {
  const ExperimentConfig c =
      small_config({"epsilon=0", "perturbation=\"none\"", "mollify_width=0.02", "n_points=16384", "t_end=2.0"});
  const ExperimentResult r = simulate(c);
  REQUIRE_FALSE(r.tracking_lost);
  MESSAGE("baseline sup distance " << r.sup_distance);
  CHECK(r.sup_distance <= 5e-3);
  REQUIRE(r.speed_estimates.size() == 1);
  CHECK(r.speed_estimates[0] == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("identity suite") {
  ExperimentConfig c = small_config({"n_points=8192"});
  const IdentityReport ok = run_identity_suite(c);
  CHECK(ok.all_passed());
  CHECK_FALSE(ok.checks.empty());
  for (const auto& check : ok.checks) CHECK_MESSAGE(check.passed, check.name << " residual " << check.residual);
  c.fault_kappa = 1.9;
  const IdentityReport bad = run_identity_suite(c);
  CHECK_FALSE(bad.all_passed());
  CHECK(bad.to_text() != ok.to_text());
}
