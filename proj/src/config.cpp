#include "dplab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "dplab/functionals.hpp"

namespace dplab {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Drops a trailing comment that is not inside a quoted string.
std::string_view strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

double parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value))
    throw ConfigError("key '" + std::string(key) + "' expects a number, got '" + std::string(text) + "'");
  return value;
}

std::vector<double> parse_array(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']')
    throw ConfigError("key '" + std::string(key) + "' expects an array like [1.0, 2.0]");
  std::vector<double> out;
  std::string_view body = trim(text.substr(1, text.size() - 2));
  while (!body.empty()) {
    const auto comma = body.find(',');
    out.push_back(parse_number(key, body.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    body = trim(body.substr(comma + 1));
  }
  return out;
}

std::string parse_string(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text.size() >= 2 && text.front() == '"' && text.back() == '"') return std::string(text.substr(1, text.size() - 2));
  throw ConfigError("key '" + std::string(key) + "' expects a quoted string");
}

const std::set<std::string, std::less<>>& known_keys() {
  static const std::set<std::string, std::less<>> keys{
      "D",      "n_points",     "speeds", "centers", "L",    "perturbation",   "epsilon",    "mollify_width",
      "t_end",  "dt",           "sample_every", "K_override", "seed", "filter_strength", "fault_kappa"};
  return keys;
}

}  // namespace

RawConfig parse_config_text(std::string_view text) {
  RawConfig raw;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    if (line.front() == '[') throw ConfigError("line " + std::to_string(line_no) + ": tables are not supported");
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty() || value.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
    if (raw.count(key)) throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    raw[key] = value;
  }
  return raw;
}

RawConfig read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

void apply_override(RawConfig& raw, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) throw ConfigError("override '" + std::string(assignment) + "' lacks '='");
  const std::string key(trim(assignment.substr(0, eq)));
  const std::string value(trim(assignment.substr(eq + 1)));
  if (key.empty() || value.empty()) throw ConfigError("override '" + std::string(assignment) + "' is incomplete");
  raw[key] = value;
}

std::string to_string(PerturbationKind kind) {
  switch (kind) {
    case PerturbationKind::none: return "none";
    case PerturbationKind::scaled_bump: return "scaled-bump";
    case PerturbationKind::random_smooth: return "random-smooth";
  }
  return "none";
}

ExperimentConfig build_config(const RawConfig& raw) {
  for (const auto& [key, value] : raw)
    if (!known_keys().count(key)) throw ConfigError("unknown config key '" + key + "'");

  ExperimentConfig c;
  auto number = [&](const char* key, double& field) {
    if (auto it = raw.find(key); it != raw.end()) field = parse_number(key, it->second);
  };
  number("D", c.half_width);
  if (auto it = raw.find("n_points"); it != raw.end()) {
    const double n = parse_number("n_points", it->second);
    if (n < 1 || n != std::floor(n) || n > 1e9) throw ConfigError("n_points must be a positive integer");
    c.n_points = static_cast<std::size_t>(n);
  }
  if (auto it = raw.find("speeds"); it != raw.end()) c.speeds = parse_array("speeds", it->second);
  if (auto it = raw.find("centers"); it != raw.end()) c.centers = parse_array("centers", it->second);
  number("L", c.declared_gap);
  if (auto it = raw.find("perturbation"); it != raw.end()) {
    const std::string kind = parse_string("perturbation", it->second);
    if (kind == "none") c.perturbation = PerturbationKind::none;
    else if (kind == "scaled-bump") c.perturbation = PerturbationKind::scaled_bump;
    else if (kind == "random-smooth") c.perturbation = PerturbationKind::random_smooth;
    else throw ConfigError("perturbation must be none, scaled-bump or random-smooth");
  }
  number("epsilon", c.epsilon);
  number("mollify_width", c.mollify_width);
  number("t_end", c.t_end);
  number("dt", c.dt);
  number("sample_every", c.sample_every);
  number("filter_strength", c.filter_strength);
  if (auto it = raw.find("K_override"); it != raw.end()) c.K_override = parse_number("K_override", it->second);
  if (auto it = raw.find("fault_kappa"); it != raw.end()) c.fault_kappa = parse_number("fault_kappa", it->second);
  if (auto it = raw.find("seed"); it != raw.end()) {
    const double s = parse_number("seed", it->second);
    if (s < 0 || s != std::floor(s) || s > 9.007199254740992e15) throw ConfigError("seed must be a nonnegative integer");
    c.seed = static_cast<std::uint64_t>(s);
  }

  try {
    (void)c.grid();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (c.speeds.empty()) throw ConfigError("the peakon train is empty");
  if (c.speeds.size() != c.centers.size()) throw ConfigError("speeds and centers must have the same length");
  for (std::size_t i = 0; i < c.speeds.size(); ++i) {
    if (!(c.speeds[i] > 0.0)) throw ConfigError("speeds must be positive");
    if (!(std::abs(c.centers[i]) < c.half_width - kBoundaryClearance))
      throw ConfigError("center " + std::to_string(c.centers[i]) + " is within the boundary clearance");
    if (!(std::abs(c.centers[i] + c.speeds[i] * c.t_end) < c.half_width - kBoundaryClearance))
      throw ConfigError("bump " + std::to_string(i + 1) + " reaches the boundary clearance before t_end");
    if (i > 0 && !(c.speeds[i] > c.speeds[i - 1])) throw ConfigError("speeds must be strictly increasing");
    if (i > 0 && !(c.centers[i] > c.centers[i - 1])) throw ConfigError("centers must be strictly increasing");
    if (i > 0 && c.declared_gap > 0.0 && c.centers[i] - c.centers[i - 1] < c.declared_gap)
      throw ConfigError("a center gap is below the declared L");
  }
  if (c.declared_gap < 0.0) throw ConfigError("L must be nonnegative");
  if (c.epsilon < 0.0) throw ConfigError("epsilon must be nonnegative");
  if (!(c.mollify_width > 0.0 && c.mollify_width <= 0.5)) throw ConfigError("mollify_width must lie in (0, 0.5]");
  if (c.t_end < 0.0) throw ConfigError("t_end must be nonnegative");
  if (c.dt < 0.0) throw ConfigError("dt must be nonnegative");
  if (!(c.sample_every > 0.0)) throw ConfigError("sample_every must be positive");
  if (c.filter_strength < 0.0) throw ConfigError("filter_strength must be nonnegative");
  if (c.K_override && !(*c.K_override >= 4.0)) throw ConfigError("K_override must be at least 4");
  if (c.speeds.size() > 1 && !(c.gap() / c.scale_K() > 4.0)) throw ConfigError("the gap must exceed 4K");
  return c;
}

ExperimentConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  RawConfig raw = read_config_file(path);
  for (const auto& o : overrides) apply_override(raw, o);
  return build_config(raw);
}

PeakonTrain ExperimentConfig::train() const {
  std::vector<Peakon> peakons;
  for (std::size_t i = 0; i < speeds.size(); ++i) peakons.push_back({speeds[i], centers[i]});
  return PeakonTrain(std::move(peakons));
}

double ExperimentConfig::gap() const {
  if (declared_gap > 0.0) return declared_gap;
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < centers.size(); ++i) g = std::min(g, centers[i] - centers[i - 1]);
  return g;
}

double ExperimentConfig::scale_K() const {
  if (K_override) return *K_override;
  const double g = gap();
  return std::isfinite(g) ? default_scale(g) : 4.0;
}

double ExperimentConfig::sigma0() const {
  double m = speeds.at(0);
  for (std::size_t i = 1; i < speeds.size(); ++i) m = std::min(m, speeds[i] - speeds[i - 1]);
  return 0.25 * m;
}

}  // namespace dplab
