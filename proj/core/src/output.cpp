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


#include "gravcat/output.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "gravcat/error.hpp"
#include "gravcat/units.hpp"

namespace gravcat {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string num(double v) { return format_double(v); }

std::string opt(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string join_rationale(const std::vector<Rationale>& r, char sep) {
  std::string out;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) out += sep;
    out += to_string(r[i]);
  }
  return out;
}

json rate_json(const RateReport& r) {
  return json{{"theory", to_string(r.theory)},
              {"intrinsic_rate", r.intrinsic_rate},
              {"effective_cm_rate", r.effective_cm_rate},
              {"collapse_width", opt_json(r.collapse_width)},
              {"damping_time", opt_json(r.damping_time)},
              {"hits_within_coherence", r.hits_within_coherence},
              {"collapse_effective_on_cat", r.collapse_effective_on_cat}};
}

json verdict_json(const Verdict& v) {
  json rationale = json::array();
  for (Rationale r : v.rationale) rationale.push_back(to_string(r));
  json branches = json::array();
  for (const auto& b : v.branches) {
    branches.push_back({{"signal_class", to_string(b.signal_class)}, {"probability", b.probability}});
  }
  return json{{"theory", to_string(v.theory)},
              {"protocol", to_string(v.protocol)},
              {"signal_class", to_string(v.signal_class)},
              {"rationale", rationale},
              {"branches", branches}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string rates_csv(const std::vector<RateReport>& reports) {
  std::ostringstream os;
  os << "theory,intrinsic_rate,effective_cm_rate,collapse_width,damping_time,"
        "hits_within_coherence,collapse_effective_on_cat\n";
  for (const auto& r : reports) {
    os << to_string(r.theory) << ',' << num(r.intrinsic_rate) << ',' << num(r.effective_cm_rate)
       << ',' << opt(r.collapse_width) << ',' << opt(r.damping_time) << ','
       << (r.hits_within_coherence ? "true" : "false") << ','
       << (r.collapse_effective_on_cat ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string rates_json(const std::vector<RateReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(rate_json(r));
  return dump(json{{"schema_version", kOutputSchemaVersion}, {"rates", arr}});
}

std::string verdict_table_text(const std::vector<Verdict>& verdicts) {
  std::vector<ProtocolName> protocols;
  std::vector<TheoryId> theories;
  for (const auto& v : verdicts) {
    if (std::find(protocols.begin(), protocols.end(), v.protocol) == protocols.end()) {
      protocols.push_back(v.protocol);
    }
    if (std::find(theories.begin(), theories.end(), v.theory) == theories.end()) {
      theories.push_back(v.theory);
    }
  }
  auto cell = [&](TheoryId t, ProtocolName p) -> std::string {
    for (const auto& v : verdicts) {
      if (v.theory != t || v.protocol != p) continue;
      std::string s(to_string(v.signal_class));
      if (!v.branches.empty()) s += '*';
      return s;
    }
    return "-";
  };
  std::size_t w0 = std::string_view("theory").size();
  for (TheoryId t : theories) w0 = std::max(w0, to_string(t).size());
  std::vector<std::size_t> widths;
  for (ProtocolName p : protocols) {
    std::size_t w = to_string(p).size();
    for (TheoryId t : theories) w = std::max(w, cell(t, p).size());
    widths.push_back(w);
  }
  std::ostringstream os;
  auto pad = [](std::string s, std::size_t w) {
    s.resize(std::max(w, s.size()), ' ');
    return s;
  };
  std::string line = pad("theory", w0);
  for (std::size_t j = 0; j < protocols.size(); ++j) {
    line += "  " + pad(std::string(to_string(protocols[j])), widths[j]);
  }
  while (!line.empty() && line.back() == ' ') line.pop_back();
  os << line << '\n';
  for (TheoryId t : theories) {
    line = pad(std::string(to_string(t)), w0);
    for (std::size_t j = 0; j < protocols.size(); ++j) {
      line += "  " + pad(cell(t, protocols[j]), widths[j]);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << '\n';
  }
  bool any_branch = std::any_of(verdicts.begin(), verdicts.end(),
                                [](const Verdict& v) { return !v.branches.empty(); });
  if (any_branch) os << "* outcome branches; see csv or json output\n";
  return os.str();
}

std::string verdict_table_csv(const std::vector<Verdict>& verdicts) {
  std::ostringstream os;
  os << "theory,protocol,signal_class,rationale,branches\n";
  for (const auto& v : verdicts) {
    os << to_string(v.theory) << ',' << to_string(v.protocol) << ',' << to_string(v.signal_class)
       << ',' << join_rationale(v.rationale, ';') << ',';
    for (std::size_t i = 0; i < v.branches.size(); ++i) {
      if (i) os << ';';
      os << to_string(v.branches[i].signal_class) << '=' << num(v.branches[i].probability);
    }
    os << '\n';
  }
  return os.str();
}

std::string verdict_table_json(const std::vector<Verdict>& verdicts) {
  json arr = json::array();
  for (const auto& v : verdicts) arr.push_back(verdict_json(v));
  return dump(json{{"schema_version", kOutputSchemaVersion}, {"verdicts", arr}});
}

std::string mean_csv(const EnsembleStats& stats) {
  std::ostringstream os;
  os << "t,mean_force,stderr,analytic\n";
  for (std::size_t i = 0; i < stats.times.size(); ++i) {
    os << num(stats.times[i]) << ',' << num(stats.mean[i]) << ',' << num(stats.stderr_mean[i])
       << ',';
    if (stats.analytic_mean) os << num((*stats.analytic_mean)[i]);
    os << '\n';
  }
  return os.str();
}

std::string corr_csv(const EnsembleStats& stats) {
  std::ostringstream os;
  os << "lag,corr,stderr,analytic\n";
  for (std::size_t i = 0; i < stats.lags.size(); ++i) {
    os << num(stats.lags[i]) << ',' << num(stats.corr[i]) << ',' << num(stats.corr_stderr[i])
       << ',';
    if (stats.analytic_corr) os << num((*stats.analytic_corr)[i]);
    os << '\n';
  }
  return os.str();
}

namespace {

// Event labels per sample, for events in (t_{i-1}, t_i]; events at t = 0 go to
// the first sample.
std::vector<std::string> event_labels(const ForceRecord& record) {
  std::vector<std::string> labels(record.times.size());
  std::size_t i = 0;
  for (const auto& e : record.events) {
    while (i + 1 < record.times.size() && e.time > record.times[i]) ++i;
    if (e.time > record.times[i]) continue;  // past the horizon
    if (!labels[i].empty()) labels[i] += ';';
    labels[i] += to_string(e.kind);
  }
  return labels;
}

}  // namespace

std::string trajectory_csv(const ForceRecord& record) {
  const auto labels = event_labels(record);
  std::ostringstream os;
  os << "time,force,event_kind\n";
  for (std::size_t i = 0; i < record.times.size(); ++i) {
    os << num(record.times[i]) << ',' << num(record.forces[i]) << ',' << labels[i] << '\n';
  }
  return os.str();
}

std::string trajectory_json(const ForceRecord& record) {
  json events = json::array();
  for (const auto& e : record.events) {
    events.push_back({{"time", e.time}, {"kind", to_string(e.kind)}});
  }
  return dump(json{{"schema_version", kOutputSchemaVersion},
                   {"theory", to_string(record.theory)},
                   {"seed", record.seed},
                   {"f0", record.f0},
                   {"times", record.times},
                   {"forces", record.forces},
                   {"events", events}});
}

std::string collapses_csv(const std::vector<CollapseEvent>& events) {
  std::ostringstream os;
  os << "time,center,pre_width,post_width\n";
  for (const auto& e : events) {
    os << num(e.time) << ',' << num(e.center) << ',' << num(e.pre_width) << ','
       << num(e.post_width) << '\n';
  }
  return os.str();
}

std::string sn_series_csv(const SnSeries& series, double sigma0) {
  std::ostringstream os;
  os << "t,rms_width,free_width\n";
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    os << num(series.times[i]) << ',' << num(series.widths[i]) << ','
       << num(free_rms_radius(series.state.mass, sigma0, series.times[i])) << '\n';
  }
  return os.str();
}

std::string sn_series_json(const SnSeries& series, double sigma0) {
  std::vector<double> free;
  for (double t : series.times) free.push_back(free_rms_radius(series.state.mass, sigma0, t));
  return dump(json{{"schema_version", kOutputSchemaVersion},
                   {"mass", series.state.mass},
                   {"sigma0", sigma0},
                   {"times", series.times},
                   {"rms_width", series.widths},
                   {"free_width", free}});
}

std::string critical_mass_json(const CriticalMassResult& result, double sigma0,
                               const SnBudget& budget) {
  const double amu = default_constants().amu;
  json j{{"schema_version", kOutputSchemaVersion},
         {"sigma0", sigma0},
         {"found", result.found},
         {"mass_lo", result.mass_lo},
         {"mass_hi", result.mass_hi},
         {"mass_lo_amu", result.mass_lo / amu},
         {"mass_hi_amu", result.mass_hi / amu},
         {"evaluations", result.evaluations},
         {"budget",
          {{"horizon_dynamical_times", budget.horizon_dynamical_times},
           {"horizon", opt_json(budget.horizon)},
           {"r_max_over_sigma", budget.r_max_over_sigma},
           {"n_points", budget.n_points},
           {"n_samples", budget.n_samples},
           {"bracket_ratio", budget.bracket_ratio},
           {"G_eff", opt_json(budget.G_eff)}}}};
  return dump(j);
}

std::string scenario_json(const ScenarioResult& result, const RunConfig& cfg) {
  json j{{"schema_version", kOutputSchemaVersion},
         {"verdict", verdict_json(result.verdict)},
         {"rates", rate_json(result.rates)},
         {"engine", to_string(cfg.engine)},
         {"n_traj", result.records.size()},
         {"horizon", cfg.horizon},
         {"dt", cfg.dt},
         {"seed", cfg.seed}};
  if (result.consistency) {
    j["consistency"] = {{"consistent", result.consistency->consistent},
                        {"detail", result.consistency->detail},
                        {"empirical_jump_rate", opt_json(result.consistency->empirical_jump_rate)}};
  } else {
    j["consistency"] = nullptr;
  }
  if (result.stats) {
    const EnsembleStats& s = *result.stats;
    j["ensemble"] = {{"times", s.times},
                     {"mean", s.mean},
                     {"stderr", s.stderr_mean},
                     {"lags", s.lags},
                     {"corr", s.corr},
                     {"corr_stderr", s.corr_stderr}};
  }
  return dump(j);
}

fs::path write_text_file(const fs::path& dir, const std::string& name, const std::string& text) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("output directory '" + dir.string() + "' is not writable: " + ec.message());
  const fs::path path = dir / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << text;
  out.close();
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  return path;
}

namespace {

bool wants(const RunConfig& cfg, OutputFormat f) {
  return std::find(cfg.formats.begin(), cfg.formats.end(), f) != cfg.formats.end();
}

void emit_one(const ScenarioResult& r, const RunConfig& cfg, const fs::path& dir,
              std::vector<fs::path>& written) {
  if (wants(cfg, OutputFormat::Json)) {
    written.push_back(write_text_file(dir, "verdict.json", scenario_json(r, cfg)));
  }
  if (!wants(cfg, OutputFormat::Csv)) return;
  written.push_back(write_text_file(dir, "rates.csv", rates_csv({r.rates})));
  if (r.records.empty()) return;
  if (r.stats) {
    written.push_back(write_text_file(dir, "mean.csv", mean_csv(*r.stats)));
    written.push_back(write_text_file(dir, "corr.csv", corr_csv(*r.stats)));
  }
  const std::size_t n = std::min(cfg.trajectory_files, r.records.size());
  for (std::size_t i = 0; i < n; ++i) {
    written.push_back(
        write_text_file(dir, "traj_" + std::to_string(i) + ".csv", trajectory_csv(r.records[i])));
  }
  for (std::size_t i = 0; i < std::min(n, r.collapses.size()); ++i) {
    written.push_back(write_text_file(dir, "collapses_" + std::to_string(i) + ".csv",
                                      collapses_csv(r.collapses[i])));
  }
}

}  // namespace

std::vector<fs::path> emit_outputs(const std::vector<ScenarioResult>& results,
                                   const RunConfig& cfg) {
  std::vector<fs::path> written;
  const fs::path root(cfg.output_dir);
  if (results.size() == 1) {
    emit_one(results.front(), cfg, root, written);
    return written;
  }
  for (const auto& r : results) {
    emit_one(r, cfg, root / std::string(to_string(r.verdict.theory)), written);
  }
  return written;
}

std::vector<fs::path> emit_outputs(const ScenarioResult& result, const RunConfig& cfg) {
  return emit_outputs(std::vector<ScenarioResult>{result}, cfg);
}

}  // namespace gravcat
