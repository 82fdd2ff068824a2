// Copyright 2026 The gravcat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gravcat/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "gravcat/error.hpp"
#include "gravcat/units.hpp"

namespace gravcat {

std::string_view to_string(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

OutputFormat parse_output_format(std::string_view text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw ConfigError("unknown format '" + std::string(text) + "' (valid: csv, json)");
}

ScenarioOptions RunConfig::scenario_options() const {
  ScenarioOptions o;
  o.engine = engine;
  o.n_traj = n_traj;
  o.horizon = horizon;
  o.dt = dt;
  o.seed = seed;
  o.n_lags = n_lags;
  o.lag_stride = lag_stride;
  o.threads = threads;
  o.grid = grid;
  return o;
}

namespace {

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& n, const std::string& msg) const {
    std::ostringstream os;
    os << source_;
    const YAML::Mark m = n.Mark();
    if (!m.is_null()) os << ':' << m.line + 1 << ':' << m.column + 1;
    os << ": " << msg;
    throw ConfigError(os.str());
  }

  void require_map(const YAML::Node& n, const std::string& section) const {
    if (!n.IsMap()) fail(n, "'" + section + "' must be a mapping");
  }

  void check_keys(const YAML::Node& n, const std::vector<std::string_view>& allowed,
                  const std::string& section) const {
    require_map(n, section);
    for (const auto& kv : n) {
      const std::string key = kv.first.as<std::string>();
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        std::string list;
        for (auto a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
        fail(kv.first, "unknown key '" + key + "' in " + section + " (allowed: " + list + ")");
      }
    }
  }

  std::string scalar(const YAML::Node& n, const std::string& key) const {
    if (!n.IsScalar()) fail(n, "'" + key + "' must be a scalar");
    return n.Scalar();
  }

  double quantity(const YAML::Node& n, Dimension dim, const std::string& key) const {
    const std::string text = scalar(n, key);
    try {
      return parse_quantity(text, dim, key);
    } catch (const ConfigError& e) {
      fail(n, e.what());
    }
  }

  std::uint64_t unsigned_int(const YAML::Node& n, const std::string& key) const {
    const std::string text = scalar(n, key);
    try {
      std::size_t used = 0;
      if (text.empty() || text[0] == '-') throw std::invalid_argument("negative");
      const unsigned long long v = std::stoull(text, &used, 10);
      if (used != text.size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      fail(n, "'" + key + "' must be a non-negative integer, got '" + text + "'");
    }
  }

  bool boolean(const YAML::Node& n, const std::string& key) const {
    const std::string text = scalar(n, key);
    if (text == "true") return true;
    if (text == "false") return false;
    fail(n, "'" + key + "' must be true or false, got '" + text + "'");
  }

  template <typename F>
  auto wrap(const YAML::Node& n, F&& f) const {
    try {
      return f();
    } catch (const ConfigError& e) {
      fail(n, e.what());
    }
  }

 private:
  std::string source_;
};

struct QuantityField {
  std::string_view key;
  Dimension dim;
};

void read_protocol(const Reader& rd, const YAML::Node& node, ExperimentProtocol& p) {
  if (node.IsScalar()) {
    p = rd.wrap(node, [&] { return preset_protocol(parse_protocol_name(node.Scalar())); });
    return;
  }
  static const std::vector<std::string_view> keys = {
      "preset",         "sphere_mass",      "sphere_radius",  "sphere_density",
      "cat_separation", "probe_mass",       "surface_gap",    "tunneling_rate",
      "probe_resolution", "coherence_time", "slit_width",     "probe_pointer_nucleons",
      "pointer_separation"};
  rd.check_keys(node, keys, "protocol");
  ProtocolName name = ProtocolName::Custom;
  if (node["preset"]) {
    name = rd.wrap(node["preset"], [&] { return parse_protocol_name(node["preset"].Scalar()); });
  }
  if (name != ProtocolName::Custom) {
    p = preset_protocol(name);
  } else {
    p = ExperimentProtocol{};
    for (std::string_view req : {"sphere_mass", "sphere_radius", "cat_separation", "probe_mass",
                                 "surface_gap", "tunneling_rate", "probe_resolution",
                                 "coherence_time"}) {
      if (!node[std::string(req)]) {
        rd.fail(node, "custom protocol needs '" + std::string(req) + "'");
      }
    }
  }
  auto q = [&](const char* key, Dimension dim, double& target) {
    if (const YAML::Node v = node[key]) target = rd.quantity(v, dim, key);
  };
  q("sphere_mass", Dimension::kMass, p.sphere_mass);
  q("sphere_radius", Dimension::kLength, p.sphere_radius);
  if (const YAML::Node v = node["sphere_density"]) {
    p.sphere_density = rd.quantity(v, Dimension::kDensity, "sphere_density");
  }
  q("cat_separation", Dimension::kLength, p.cat_separation);
  q("probe_mass", Dimension::kMass, p.probe_mass);
  q("surface_gap", Dimension::kLength, p.surface_gap);
  q("tunneling_rate", Dimension::kRate, p.tunneling_rate);
  q("probe_resolution", Dimension::kTime, p.probe_resolution);
  q("coherence_time", Dimension::kTime, p.coherence_time);
  q("slit_width", Dimension::kLength, p.slit_width);
  q("probe_pointer_nucleons", Dimension::kDimensionless, p.probe_pointer_nucleons);
  q("pointer_separation", Dimension::kLength, p.pointer_separation);
  rd.wrap(node, [&] { return require_valid(p); });
}

void read_collapse(const Reader& rd, const YAML::Node& node, CollapseParams& c) {
  rd.check_keys(node,
                {"lambda_grw", "sigma_grw", "gamma_csl", "r_c", "gamma_td_csl", "sigma_td_csl",
                 "sigma_td_dp", "R0_dp", "kappa_td", "dp_noise_temperature"},
                "collapse");
  auto q = [&](const char* key, Dimension dim, double& target) {
    if (const YAML::Node v = node[key]) target = rd.quantity(v, dim, key);
  };
  q("lambda_grw", Dimension::kRate, c.lambda_grw);
  q("sigma_grw", Dimension::kLength, c.sigma_grw);
  q("gamma_csl", Dimension::kVolumeRate, c.gamma_csl);
  q("r_c", Dimension::kLength, c.r_c);
  q("gamma_td_csl", Dimension::kDimensionless, c.gamma_td_csl);
  q("sigma_td_csl", Dimension::kLength, c.sigma_td_csl);
  q("sigma_td_dp", Dimension::kLength, c.sigma_td_dp);
  q("R0_dp", Dimension::kLength, c.R0_dp);
  q("kappa_td", Dimension::kDimensionless, c.kappa_td);
  q("dp_noise_temperature", Dimension::kTemperature, c.dp_noise_temperature);
}

void read_grid(const Reader& rd, const YAML::Node& node, GridOptions& g) {
  rd.check_keys(node, {"n_points", "packet_width", "well_depth", "forced_hits", "poisson_hits"},
                "grid");
  if (const YAML::Node v = node["n_points"]) g.n_points = rd.unsigned_int(v, "n_points");
  if (const YAML::Node v = node["packet_width"]) {
    g.packet_width = rd.quantity(v, Dimension::kLength, "packet_width");
  }
  if (const YAML::Node v = node["well_depth"]) {
    g.well_depth = rd.quantity(v, Dimension::kEnergy, "well_depth");
  }
  if (const YAML::Node v = node["forced_hits"]) {
    if (!v.IsSequence()) rd.fail(v, "'forced_hits' must be a list of times");
    g.forced_hits.clear();
    for (const auto& item : v) g.forced_hits.push_back(rd.quantity(item, Dimension::kTime, "forced_hits"));
  }
  if (const YAML::Node v = node["poisson_hits"]) g.poisson_hits = rd.boolean(v, "poisson_hits");
}

void read_sn(const Reader& rd, const YAML::Node& node, SnConfig& s) {
  rd.check_keys(node,
                {"sigma0", "mass", "duration_dispersion_times", "n_samples", "mass_lo", "mass_hi",
                 "horizon_dynamical_times", "horizon", "r_max_over_sigma", "n_points",
                 "bracket_ratio", "G_eff"},
                "sn");
  auto q = [&](const char* key, Dimension dim, double& target) {
    if (const YAML::Node v = node[key]) target = rd.quantity(v, dim, key);
  };
  q("sigma0", Dimension::kLength, s.sigma0);
  q("mass", Dimension::kMass, s.mass);
  q("duration_dispersion_times", Dimension::kDimensionless, s.duration_dispersion_times);
  if (const YAML::Node v = node["n_samples"]) s.n_samples = rd.unsigned_int(v, "n_samples");
  q("mass_lo", Dimension::kMass, s.mass_lo);
  q("mass_hi", Dimension::kMass, s.mass_hi);
  q("horizon_dynamical_times", Dimension::kDimensionless, s.budget.horizon_dynamical_times);
  if (const YAML::Node v = node["horizon"]) {
    s.budget.horizon = rd.quantity(v, Dimension::kTime, "horizon");
  }
  q("r_max_over_sigma", Dimension::kDimensionless, s.budget.r_max_over_sigma);
  if (const YAML::Node v = node["n_points"]) s.budget.n_points = rd.unsigned_int(v, "n_points");
  q("bracket_ratio", Dimension::kDimensionless, s.budget.bracket_ratio);
  if (const YAML::Node v = node["G_eff"]) {
    s.budget.G_eff = rd.quantity(v, Dimension::kDimensionless, "G_eff");
  }
}

}  // namespace

RunConfig parse_config_text(std::string_view text, std::string_view source) {
  const Reader rd{std::string(source)};
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    std::ostringstream os;
    os << source << ':' << e.mark.line + 1 << ':' << e.mark.column + 1 << ": " << e.msg;
    throw ConfigError(os.str());
  }
  RunConfig cfg;
  if (root.IsNull()) return cfg;
  rd.check_keys(root,
                {"protocol", "theory", "theories", "engine", "n_traj", "horizon", "dt", "seed",
                 "output_dir", "formats", "trajectory_files", "n_lags", "lag_stride", "threads",
                 "collapse", "grid", "sn"},
                "config");
  if (const YAML::Node v = root["protocol"]) read_protocol(rd, v, cfg.protocol);

  if (root["theory"] && root["theories"]) {
    rd.fail(root["theories"], "give either 'theory' or 'theories', not both");
  }
  if (const YAML::Node v = root["theory"]) {
    cfg.theories = {rd.wrap(v, [&] { return parse_theory(rd.scalar(v, "theory")); })};
  }
  if (const YAML::Node v = root["theories"]) {
    if (!v.IsSequence()) rd.fail(v, "'theories' must be a list");
    cfg.theories.clear();
    for (const auto& item : v) {
      cfg.theories.push_back(rd.wrap(item, [&] { return parse_theory(rd.scalar(item, "theories")); }));
    }
  }
  if (const YAML::Node v = root["engine"]) {
    cfg.engine = rd.wrap(v, [&] { return parse_engine(rd.scalar(v, "engine")); });
  }
  if (const YAML::Node v = root["n_traj"]) cfg.n_traj = rd.unsigned_int(v, "n_traj");
  if (const YAML::Node v = root["horizon"]) cfg.horizon = rd.quantity(v, Dimension::kTime, "horizon");
  if (const YAML::Node v = root["dt"]) cfg.dt = rd.quantity(v, Dimension::kTime, "dt");
  if (const YAML::Node v = root["seed"]) cfg.seed = rd.unsigned_int(v, "seed");
  if (const YAML::Node v = root["output_dir"]) cfg.output_dir = rd.scalar(v, "output_dir");
  if (const YAML::Node v = root["formats"]) {
    if (!v.IsSequence()) rd.fail(v, "'formats' must be a list");
    cfg.formats.clear();
    for (const auto& item : v) {
      cfg.formats.push_back(rd.wrap(item, [&] { return parse_output_format(rd.scalar(item, "formats")); }));
    }
  }
  if (const YAML::Node v = root["trajectory_files"]) {
    cfg.trajectory_files = rd.unsigned_int(v, "trajectory_files");
  }
  if (const YAML::Node v = root["n_lags"]) cfg.n_lags = rd.unsigned_int(v, "n_lags");
  if (const YAML::Node v = root["lag_stride"]) cfg.lag_stride = rd.unsigned_int(v, "lag_stride");
  if (const YAML::Node v = root["threads"]) {
    cfg.threads = static_cast<unsigned>(rd.unsigned_int(v, "threads"));
  }
  if (const YAML::Node v = root["collapse"]) read_collapse(rd, v, cfg.collapse);
  if (const YAML::Node v = root["grid"]) read_grid(rd, v, cfg.grid);
  if (const YAML::Node v = root["sn"]) read_sn(rd, v, cfg.sn);
  rd.wrap(root, [&] {
    validate_config(cfg);
    return 0;
  });
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot read config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

namespace {

[[noreturn]] void bound(const std::string& field, const std::string& rule, double got) {
  throw ConfigError("field '" + field + "' must be " + rule + " (got " + format_double(got) + ")");
}

}  // namespace

void validate_config(const RunConfig& cfg) {
  require_valid(cfg.protocol);
  if (cfg.theories.empty()) throw ConfigError("field 'theories' must not be empty");
  if (!(cfg.dt > 0.0)) bound("dt", "> 0", cfg.dt);
  if (!(cfg.horizon >= cfg.dt)) bound("horizon", ">= dt", cfg.horizon);
  if (cfg.formats.empty()) throw ConfigError("field 'formats' must not be empty");
  if (const auto bad = cfg.collapse.invalid_fields(); !bad.empty()) {
    throw ConfigError("field 'collapse." + bad.front() + "' must be > 0");
  }
  const std::size_t n = cfg.grid.n_points;
  if (n < 8 || (n & (n - 1)) != 0) {
    bound("grid.n_points", "a power of two >= 8", static_cast<double>(n));
  }
  if (cfg.grid.packet_width && !(*cfg.grid.packet_width > 0.0)) {
    bound("grid.packet_width", "> 0", *cfg.grid.packet_width);
  }
  if (cfg.grid.well_depth && !(*cfg.grid.well_depth >= 0.0)) {
    bound("grid.well_depth", ">= 0", *cfg.grid.well_depth);
  }
  const SnConfig& s = cfg.sn;
  if (!(s.sigma0 > 0.0)) bound("sn.sigma0", "> 0", s.sigma0);
  if (!(s.mass > 0.0)) bound("sn.mass", "> 0", s.mass);
  if (!(s.duration_dispersion_times > 0.0)) {
    bound("sn.duration_dispersion_times", "> 0", s.duration_dispersion_times);
  }
  if (s.n_samples == 0) bound("sn.n_samples", ">= 1", 0.0);
  if (!(s.mass_lo > 0.0)) bound("sn.mass_lo", "> 0", s.mass_lo);
  if (!(s.mass_hi > s.mass_lo)) bound("sn.mass_hi", "> sn.mass_lo", s.mass_hi);
  if (!(s.budget.horizon_dynamical_times > 0.0)) {
    bound("sn.horizon_dynamical_times", "> 0", s.budget.horizon_dynamical_times);
  }
  if (s.budget.horizon && !(*s.budget.horizon > 0.0)) bound("sn.horizon", "> 0", *s.budget.horizon);
  if (!(s.budget.r_max_over_sigma >= 10.0)) {
    bound("sn.r_max_over_sigma", ">= 10", s.budget.r_max_over_sigma);
  }
  if (s.budget.n_points < 4) bound("sn.n_points", ">= 4", static_cast<double>(s.budget.n_points));
  if (!(s.budget.bracket_ratio > 1.0)) bound("sn.bracket_ratio", "> 1", s.budget.bracket_ratio);
  if (s.budget.G_eff && !(*s.budget.G_eff >= 0.0)) bound("sn.G_eff", ">= 0", *s.budget.G_eff);
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string emit_config(const RunConfig& cfg) {
  std::ostringstream os;
  auto q = [](double v, Dimension d) { return format_quantity(v, d); };
  const ExperimentProtocol& p = cfg.protocol;
  os << "protocol:\n";
  os << "  preset: " << to_string(p.name) << '\n';
  os << "  sphere_mass: " << q(p.sphere_mass, Dimension::kMass) << '\n';
  os << "  sphere_radius: " << q(p.sphere_radius, Dimension::kLength) << '\n';
  if (p.sphere_density) {
    os << "  sphere_density: " << q(*p.sphere_density, Dimension::kDensity) << '\n';
  }
  os << "  cat_separation: " << q(p.cat_separation, Dimension::kLength) << '\n';
  os << "  probe_mass: " << q(p.probe_mass, Dimension::kMass) << '\n';
  os << "  surface_gap: " << q(p.surface_gap, Dimension::kLength) << '\n';
  os << "  tunneling_rate: " << q(p.tunneling_rate, Dimension::kRate) << '\n';
  os << "  probe_resolution: " << q(p.probe_resolution, Dimension::kTime) << '\n';
  os << "  coherence_time: " << q(p.coherence_time, Dimension::kTime) << '\n';
  os << "  slit_width: " << q(p.slit_width, Dimension::kLength) << '\n';
  os << "  probe_pointer_nucleons: " << format_double(p.probe_pointer_nucleons) << '\n';
  os << "  pointer_separation: " << q(p.pointer_separation, Dimension::kLength) << '\n';
  os << "theories: [";
  for (std::size_t i = 0; i < cfg.theories.size(); ++i) {
    os << (i ? ", " : "") << to_string(cfg.theories[i]);
  }
  os << "]\n";
  os << "engine: " << to_string(cfg.engine) << '\n';
  os << "n_traj: " << cfg.n_traj << '\n';
  os << "horizon: " << q(cfg.horizon, Dimension::kTime) << '\n';
  os << "dt: " << q(cfg.dt, Dimension::kTime) << '\n';
  os << "seed: " << cfg.seed << '\n';
  os << "output_dir: " << quoted(cfg.output_dir) << '\n';
  os << "formats: [";
  for (std::size_t i = 0; i < cfg.formats.size(); ++i) {
    os << (i ? ", " : "") << to_string(cfg.formats[i]);
  }
  os << "]\n";
  os << "trajectory_files: " << cfg.trajectory_files << '\n';
  os << "n_lags: " << cfg.n_lags << '\n';
  os << "lag_stride: " << cfg.lag_stride << '\n';
  os << "threads: " << cfg.threads << '\n';
  const CollapseParams& c = cfg.collapse;
  os << "collapse:\n";
  os << "  lambda_grw: " << q(c.lambda_grw, Dimension::kRate) << '\n';
  os << "  sigma_grw: " << q(c.sigma_grw, Dimension::kLength) << '\n';
  os << "  gamma_csl: " << q(c.gamma_csl, Dimension::kVolumeRate) << '\n';
  os << "  r_c: " << q(c.r_c, Dimension::kLength) << '\n';
  os << "  gamma_td_csl: " << format_double(c.gamma_td_csl) << '\n';
  os << "  sigma_td_csl: " << q(c.sigma_td_csl, Dimension::kLength) << '\n';
  os << "  sigma_td_dp: " << q(c.sigma_td_dp, Dimension::kLength) << '\n';
  os << "  R0_dp: " << q(c.R0_dp, Dimension::kLength) << '\n';
  os << "  kappa_td: " << format_double(c.kappa_td) << '\n';
  os << "  dp_noise_temperature: " << q(c.dp_noise_temperature, Dimension::kTemperature) << '\n';
  const GridOptions& g = cfg.grid;
  os << "grid:\n";
  os << "  n_points: " << g.n_points << '\n';
  if (g.packet_width) os << "  packet_width: " << q(*g.packet_width, Dimension::kLength) << '\n';
  if (g.well_depth) os << "  well_depth: " << q(*g.well_depth, Dimension::kEnergy) << '\n';
  os << "  forced_hits: [";
  for (std::size_t i = 0; i < g.forced_hits.size(); ++i) {
    os << (i ? ", " : "") << q(g.forced_hits[i], Dimension::kTime);
  }
  os << "]\n";
  os << "  poisson_hits: " << (g.poisson_hits ? "true" : "false") << '\n';
  const SnConfig& s = cfg.sn;
  os << "sn:\n";
  os << "  sigma0: " << q(s.sigma0, Dimension::kLength) << '\n';
  os << "  mass: " << q(s.mass, Dimension::kMass) << '\n';
  os << "  duration_dispersion_times: " << format_double(s.duration_dispersion_times) << '\n';
  os << "  n_samples: " << s.n_samples << '\n';
  os << "  mass_lo: " << q(s.mass_lo, Dimension::kMass) << '\n';
  os << "  mass_hi: " << q(s.mass_hi, Dimension::kMass) << '\n';
  os << "  horizon_dynamical_times: " << format_double(s.budget.horizon_dynamical_times) << '\n';
  if (s.budget.horizon) os << "  horizon: " << q(*s.budget.horizon, Dimension::kTime) << '\n';
  os << "  r_max_over_sigma: " << format_double(s.budget.r_max_over_sigma) << '\n';
  os << "  n_points: " << s.budget.n_points << '\n';
  os << "  bracket_ratio: " << format_double(s.budget.bracket_ratio) << '\n';
  if (s.budget.G_eff) os << "  G_eff: " << format_double(*s.budget.G_eff) << '\n';
  return os.str();
}

bool configs_equal(const RunConfig& a, const RunConfig& b) {
  return a.protocol == b.protocol && a.theories == b.theories && a.engine == b.engine &&
         a.n_traj == b.n_traj && a.horizon == b.horizon && a.dt == b.dt && a.seed == b.seed &&
         a.output_dir == b.output_dir && a.formats == b.formats &&
         a.trajectory_files == b.trajectory_files && a.n_lags == b.n_lags &&
         a.lag_stride == b.lag_stride && a.threads == b.threads && a.collapse == b.collapse &&
         a.grid == b.grid && a.sn == b.sn;
}

}  // namespace gravcat
