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

#ifndef GRAVCAT_CONFIG_HPP_
#define GRAVCAT_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gravcat/grid.hpp"
#include "gravcat/orchestrator.hpp"
#include "gravcat/physics.hpp"
#include "gravcat/protocol.hpp"
#include "gravcat/radial_sn.hpp"
#include "gravcat/theory.hpp"

namespace gravcat {

enum class OutputFormat { Csv, Json };
std::string_view to_string(OutputFormat f);
OutputFormat parse_output_format(std::string_view text);

// Settings for the radial Schrodinger-Newton commands.
struct SnConfig {
  double sigma0 = 0.5e-6;                      // m
  double mass = 1e10 * 1.66053906660e-27;      // kg
  double duration_dispersion_times = 3.0;      // run length of sn-evolve
  std::size_t n_samples = 120;
  double mass_lo = 1e9 * 1.66053906660e-27;    // kg
  double mass_hi = 1.6e10 * 1.66053906660e-27; // kg
  SnBudget budget;
  friend bool operator==(const SnConfig&, const SnConfig&) = default;
};

struct RunConfig {
  ExperimentProtocol protocol = preset_protocol(ProtocolName::RomeroIsart);
  std::vector<TheoryId> theories{TheoryId::CQT_Newton};
  EngineKind engine = EngineKind::TwoSite;
  std::size_t n_traj = 0;
  double horizon = 1.0;  // s
  double dt = 1e-2;      // s
  std::uint64_t seed = 0;
  std::string output_dir = "gravcat-out";
  std::vector<OutputFormat> formats{OutputFormat::Csv, OutputFormat::Json};
  std::size_t trajectory_files = 10;  // traj_<i>.csv written for the first N records
  std::size_t n_lags = 10;
  std::size_t lag_stride = 0;
  unsigned threads = 0;
  CollapseParams collapse;
  GridOptions grid;
  SnConfig sn;

  ScenarioOptions scenario_options() const;
};

// Parses YAML text. Quantities need unit suffixes ("1 pm", "10 ms"); unknown
// keys are rejected. Errors are ConfigError "<source>:<line>:<col>: ...".
RunConfig parse_config_text(std::string_view text, std::string_view source = "<config>");
RunConfig parse_config(const std::string& path);

// Checks cross-field bounds; throws ConfigError naming the field and bound.
void validate_config(const RunConfig& cfg);

// YAML with every value in SI and 17 significant digits, so that
// parse_config_text(emit_config(c)) reproduces c exactly.
std::string emit_config(const RunConfig& cfg);

bool configs_equal(const RunConfig& a, const RunConfig& b);

}  // namespace gravcat

#endif  // GRAVCAT_CONFIG_HPP_
