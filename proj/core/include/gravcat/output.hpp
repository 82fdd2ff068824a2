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


#ifndef GRAVCAT_OUTPUT_HPP_
#define GRAVCAT_OUTPUT_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gravcat/config.hpp"
#include "gravcat/orchestrator.hpp"
#include "gravcat/radial_sn.hpp"
#include "gravcat/rates.hpp"
#include "gravcat/two_site.hpp"

namespace gravcat {

inline constexpr int kOutputSchemaVersion = 1;

// Every serializer below is deterministic: fixed column order, numbers with
// 17 significant digits, no timestamps.

// theory,intrinsic_rate,effective_cm_rate,collapse_width,damping_time,
// hits_within_coherence,collapse_effective_on_cat. Missing optionals are empty.
std::string rates_csv(const std::vector<RateReport>& reports);
std::string rates_json(const std::vector<RateReport>& reports);

// Aligned table, one row per theory and one column per protocol.
std::string verdict_table_text(const std::vector<Verdict>& verdicts);
// theory,protocol,signal_class,rationale,branches
std::string verdict_table_csv(const std::vector<Verdict>& verdicts);
std::string verdict_table_json(const std::vector<Verdict>& verdicts);

// t,mean_force,stderr,analytic
std::string mean_csv(const EnsembleStats& stats);
// lag,corr,stderr,analytic
std::string corr_csv(const EnsembleStats& stats);
// time,force,event_kind; event_kind names the events in (t_{i-1}, t_i].
std::string trajectory_csv(const ForceRecord& record);
std::string trajectory_json(const ForceRecord& record);
// time,center,pre_width,post_width
std::string collapses_csv(const std::vector<CollapseEvent>& events);

// t,rms_width,free_width; free_width is the G = 0 closed form.
std::string sn_series_csv(const SnSeries& series, double sigma0);
std::string sn_series_json(const SnSeries& series, double sigma0);
std::string critical_mass_json(const CriticalMassResult& result, double sigma0,
                               const SnBudget& budget);

// Verdict, rate report, ensemble summary and consistency flag.
std::string scenario_json(const ScenarioResult& result, const RunConfig& cfg);

// Writes text to dir/name, creating dir. Throws ConfigError if the directory
// or file cannot be written.
std::filesystem::path write_text_file(const std::filesystem::path& dir, const std::string& name,
                                      const std::string& text);

// Writes verdict.json (json format), rates.csv, and when records exist
// mean.csv, corr.csv and traj_<i>.csv for the first cfg.trajectory_files
// records (csv format). With several results each goes to a subdirectory
// named after its theory. Returns the written paths in write order.
std::vector<std::filesystem::path> emit_outputs(const std::vector<ScenarioResult>& results,
                                                const RunConfig& cfg);
std::vector<std::filesystem::path> emit_outputs(const ScenarioResult& result,
                                                const RunConfig& cfg);

}  // namespace gravcat

#endif  // GRAVCAT_OUTPUT_HPP_
