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


// gravcat command-line front end. Every subcommand prints its main table to
// stdout and writes the same data into the output directory.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical-stability abort.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gravcat/config.hpp"
#include "gravcat/error.hpp"
#include "gravcat/force_model.hpp"
#include "gravcat/orchestrator.hpp"
#include "gravcat/output.hpp"
#include "gravcat/radial_sn.hpp"
#include "gravcat/rates.hpp"
#include "gravcat/two_site.hpp"
#include "gravcat/units.hpp"

namespace {

using namespace gravcat;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct GlobalFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format;
  std::vector<std::string> theories;
  std::string protocol;
  std::string engine;
  std::optional<std::size_t> n_traj;
  std::string horizon;
  std::string dt;
  std::optional<unsigned> threads;
};

struct SnFlags {
  std::string sigma0;
  std::string mass;
  std::optional<double> g_eff;
  std::optional<double> duration;
  std::string mass_lo;
  std::string mass_hi;
};

// Config file first, then command-line overrides.
RunConfig resolve_config(const GlobalFlags& f) {
  RunConfig cfg = f.config.empty() ? RunConfig{} : parse_config(f.config);
  if (const char* env = std::getenv("GRAVCAT_OUT"); env != nullptr && *env != '\0') {
    cfg.output_dir = env;
  }
  if (!f.out.empty()) cfg.output_dir = f.out;
  if (f.seed) cfg.seed = *f.seed;
  if (!f.format.empty()) cfg.formats = {parse_output_format(f.format)};
  if (!f.theories.empty()) {
    cfg.theories.clear();
    for (const auto& t : f.theories) cfg.theories.push_back(parse_theory(t));
  }
  if (!f.protocol.empty()) cfg.protocol = preset_protocol(parse_protocol_name(f.protocol));
  if (!f.engine.empty()) cfg.engine = parse_engine(f.engine);
  if (f.n_traj) cfg.n_traj = *f.n_traj;
  if (!f.horizon.empty()) cfg.horizon = parse_quantity(f.horizon, Dimension::kTime, "--horizon");
  if (!f.dt.empty()) cfg.dt = parse_quantity(f.dt, Dimension::kTime, "--dt");
  if (f.threads) cfg.threads = *f.threads;
  validate_config(cfg);
  return cfg;
}

void apply_sn_flags(const SnFlags& f, RunConfig& cfg) {
  if (!f.sigma0.empty()) cfg.sn.sigma0 = parse_quantity(f.sigma0, Dimension::kLength, "--sigma0");
  if (!f.mass.empty()) cfg.sn.mass = parse_quantity(f.mass, Dimension::kMass, "--mass");
  if (f.g_eff) cfg.sn.budget.G_eff = *f.g_eff;
  if (f.duration) cfg.sn.duration_dispersion_times = *f.duration;
  if (!f.mass_lo.empty()) cfg.sn.mass_lo = parse_quantity(f.mass_lo, Dimension::kMass, "--mass-lo");
  if (!f.mass_hi.empty()) cfg.sn.mass_hi = parse_quantity(f.mass_hi, Dimension::kMass, "--mass-hi");
  validate_config(cfg);
}

bool wants(const RunConfig& cfg, OutputFormat f) {
  for (OutputFormat g : cfg.formats) {
    if (g == f) return true;
  }
  return false;
}

// Prints the preferred representation and writes every requested one.
void publish(const RunConfig& cfg, const std::string& stem, const std::string& csv,
             const std::string& json) {
  if (wants(cfg, OutputFormat::Csv)) write_text_file(cfg.output_dir, stem + ".csv", csv);
  if (wants(cfg, OutputFormat::Json)) write_text_file(cfg.output_dir, stem + ".json", json);
  std::cout << (cfg.formats.front() == OutputFormat::Csv ? csv : json);
}

void cmd_rates(const RunConfig& cfg) {
  std::vector<RateReport> reports;
  for (TheoryId t : cfg.theories) reports.push_back(rate_report(t, cfg.protocol, cfg.collapse));
  publish(cfg, "rates", rates_csv(reports), rates_json(reports));
}

void cmd_forces(const RunConfig& cfg) {
  const ExperimentProtocol& p = cfg.protocol;
  struct Row {
    std::string name;
    std::optional<double> value;
    Dimension dim;
  };
  std::vector<Row> rows = {
      {"probe_distance", p.probe_distance(), Dimension::kLength},
      {"probe_offset", p.probe_offset(), Dimension::kLength},
      {"point_force",
       point_force(p.sphere_mass, p.probe_mass, p.cat_separation, p.probe_distance()),
       Dimension::kForce},
      {"density_force", std::nullopt, Dimension::kForce},
      {"self_energy", self_energy(p.sphere_mass, p.cat_separation), Dimension::kEnergy},
  };
  if (p.sphere_density) {
    rows[3].value = density_force(*p.sphere_density, p.probe_mass, p.cat_separation,
                                  p.surface_gap, p.sphere_radius);
  }
  std::string csv = "quantity,value,unit\n";
  std::string json = "{\n  \"schema_version\": " + std::to_string(kOutputSchemaVersion);
  for (const auto& r : rows) {
    const std::string v = r.value ? format_double(*r.value) : std::string();
    csv += r.name + ',' + v + ',' + std::string(si_symbol(r.dim)) + '\n';
    json += ",\n  \"" + r.name + "\": " + (r.value ? v : std::string("null"));
  }
  json += "\n}\n";
  publish(cfg, "forces", csv, json);
}

ScenarioResult run_first(const RunConfig& cfg, TheoryId theory) {
  return run_scenario(theory, cfg.protocol, cfg.scenario_options(), cfg.collapse);
}

void cmd_trajectory(RunConfig cfg) {
  cfg.n_traj = 1;
  const ScenarioResult r = run_first(cfg, cfg.theories.front());
  publish(cfg, "trajectory", trajectory_csv(r.records.front()),
          trajectory_json(r.records.front()));
  if (!r.collapses.empty() && wants(cfg, OutputFormat::Csv)) {
    write_text_file(cfg.output_dir, "collapses.csv", collapses_csv(r.collapses.front()));
  }
}

void cmd_ensemble(RunConfig cfg) {
  if (cfg.n_traj == 0) cfg.n_traj = 1000;
  const ScenarioResult r = run_first(cfg, cfg.theories.front());
  const std::string mean = mean_csv(*r.stats);
  if (wants(cfg, OutputFormat::Csv)) {
    write_text_file(cfg.output_dir, "mean.csv", mean);
    write_text_file(cfg.output_dir, "corr.csv", corr_csv(*r.stats));
  }
  const std::string json = scenario_json(r, cfg);
  if (wants(cfg, OutputFormat::Json)) write_text_file(cfg.output_dir, "ensemble.json", json);
  std::cout << (cfg.formats.front() == OutputFormat::Csv ? mean : json);
}

void cmd_sn_evolve(const RunConfig& cfg) {
  const PhysicalConstants& k = default_constants();
  const SnConfig& s = cfg.sn;
  const double G = s.budget.G_eff.value_or(k.G);
  const double t_disp = 2.0 * s.mass * s.sigma0 * s.sigma0 / k.hbar;
  const RadialState init = make_radial_gaussian(s.mass, s.sigma0,
                                                s.budget.r_max_over_sigma * s.sigma0,
                                                s.budget.n_points);
  const SnSeries series =
      sn_evolve_for(init, G, s.duration_dispersion_times * t_disp, s.n_samples, k);
  publish(cfg, "sn_series", sn_series_csv(series, s.sigma0), sn_series_json(series, s.sigma0));
}

void cmd_critical_mass(const RunConfig& cfg) {
  const SnConfig& s = cfg.sn;
  const CriticalMassResult r = detect_critical_mass(s.sigma0, s.mass_lo, s.mass_hi, s.budget);
  const std::string json = critical_mass_json(r, s.sigma0, s.budget);
  write_text_file(cfg.output_dir, "critical_mass.json", json);
  std::cout << json;
}

void cmd_verdict(const RunConfig& cfg, bool all_theories, bool config_protocol) {
  std::vector<ExperimentProtocol> protocols;
  if (config_protocol) {
    protocols.push_back(cfg.protocol);
  } else {
    protocols = {preset_protocol(ProtocolName::RomeroIsart), preset_protocol(ProtocolName::Pino)};
  }
  std::vector<TheoryId> theories = cfg.theories;
  if (all_theories) theories.assign(kAllTheories.begin(), kAllTheories.end());
  const auto table = verdict_table(protocols, theories, cfg.collapse);
  if (wants(cfg, OutputFormat::Csv)) {
    write_text_file(cfg.output_dir, "verdict_table.csv", verdict_table_csv(table));
  }
  if (wants(cfg, OutputFormat::Json)) {
    write_text_file(cfg.output_dir, "verdict_table.json", verdict_table_json(table));
  }
  write_text_file(cfg.output_dir, "verdict_table.txt", verdict_table_text(table));
  std::cout << verdict_table_text(table);
}

void cmd_scenario(const RunConfig& cfg) {
  std::vector<ScenarioResult> results;
  for (TheoryId t : cfg.theories) results.push_back(run_first(cfg, t));
  // Paths relative to the output directory keep stdout independent of --out.
  for (const auto& path : emit_outputs(results, cfg)) {
    std::cout << std::filesystem::relative(path, cfg.output_dir).string() << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gravcat: gravitational cat-state probe simulations"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags g;
  app.add_option("--config", g.config, "YAML run configuration")->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "Master seed");
  app.add_option("--out", g.out, "Output directory (default: $GRAVCAT_OUT, then config)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--theory", g.theories, "Theory id, repeatable (e.g. CSL_mN)");
  app.add_option("--protocol", g.protocol, "Preset protocol: RomeroIsart or Pino");
  app.add_option("--engine", g.engine, "two_site or grid");
  app.add_option("--n-traj", g.n_traj, "Number of trajectories");
  app.add_option("--horizon", g.horizon, "Simulated time, with unit (e.g. \"2 s\")");
  app.add_option("--dt", g.dt, "Sample spacing, with unit (e.g. \"10 ms\")");
  app.add_option("--threads", g.threads, "Worker threads (0: all cores)");

  SnFlags sn;
  auto add_sn = [&sn](CLI::App* sub) {
    sub->add_option("--sigma0", sn.sigma0, "Initial packet width, with unit");
    sub->add_option("--mass", sn.mass, "Mass, with unit (e.g. \"5e9 amu\")");
    sub->add_option("--G-eff", sn.g_eff, "Self-gravity coupling in SI (0: free)");
  };

  auto* rates = app.add_subcommand("rates", "Collapse and decay rates per theory");
  auto* forces = app.add_subcommand("forces", "Probe force scale for the protocol");
  auto* trajectory = app.add_subcommand("trajectory", "One force record");
  auto* ensemble = app.add_subcommand("ensemble", "Ensemble mean and lag correlation");
  auto* sn_evolve = app.add_subcommand("sn-evolve", "Radial Schrodinger-Newton width series");
  add_sn(sn_evolve);
  sn_evolve->add_option("--duration", sn.duration, "Run length in dispersion times");
  auto* critical = app.add_subcommand("critical-mass", "Bisect the self-collapse mass");
  add_sn(critical);
  critical->add_option("--mass-lo", sn.mass_lo, "Lower bracket, with unit");
  critical->add_option("--mass-hi", sn.mass_hi, "Upper bracket, with unit");
  auto* verdict = app.add_subcommand("verdict", "Predicted signal class table");
  bool verdict_selected = false;
  verdict->add_flag("--selected", verdict_selected,
                    "Only the configured theories and protocol instead of the full table");
  auto* scenario = app.add_subcommand("scenario", "Verdict, rates and simulated records");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    RunConfig cfg = resolve_config(g);
    if (*rates) cmd_rates(cfg);
    if (*forces) cmd_forces(cfg);
    if (*trajectory) cmd_trajectory(cfg);
    if (*ensemble) cmd_ensemble(cfg);
    if (*sn_evolve) {
      apply_sn_flags(sn, cfg);
      cmd_sn_evolve(cfg);
    }
    if (*critical) {
      apply_sn_flags(sn, cfg);
      cmd_critical_mass(cfg);
    }
    if (*verdict) cmd_verdict(cfg, !verdict_selected, verdict_selected);
    if (*scenario) cmd_scenario(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "gravcat: configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "gravcat: invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    std::cerr << "gravcat: numerical abort: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
