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

#ifndef GRAVCAT_ORCHESTRATOR_HPP_
#define GRAVCAT_ORCHESTRATOR_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gravcat/grid.hpp"
#include "gravcat/physics.hpp"
#include "gravcat/protocol.hpp"
#include "gravcat/rates.hpp"
#include "gravcat/theory.hpp"
#include "gravcat/two_site.hpp"

namespace gravcat {

enum class SignalClass {
  NetZeroForce,
  ConstantSingleMinimum,
  TelegraphJumps,
  IntermittentFlashForce,
  NoForce,
  RapidSuppressionSingleMinimum,
};
// Upper snake case, e.g. "NET_ZERO_FORCE".
std::string_view to_string(SignalClass c);
SignalClass parse_signal_class(std::string_view text);

enum class Rationale {
  WidthIneffective,
  WidthEffective,
  RateOutsideCoherence,
  RateWithinCoherence,
  SnTunnelingSuppressed,
  TunnelingNegligible,
  TunnelingWithinCoherence,
  DampingFasterThanProbe,
  ProbeDrivesCollapse,
  ProbeDoesNotDriveCollapse,
  PointerNotOrthogonal,
  NoGravitationalCoupling,
  FlashOntology,
  FreeExpansionBranching,
  EquivalentToDpMn,
  EquivalentToKMn,
  EquivalentToCslMn,
};
std::string_view to_string(Rationale r);

struct BranchProbability {
  SignalClass signal_class = SignalClass::NetZeroForce;
  double probability = 0.0;
};

struct Verdict {
  TheoryId theory = TheoryId::CQT_Newton;
  ProtocolName protocol = ProtocolName::Custom;
  SignalClass signal_class = SignalClass::NetZeroForce;
  std::vector<Rationale> rationale;
  // Filled for free-expansion protocols where the first localization may
  // land before or after the cat reaches the probe.
  std::vector<BranchProbability> branches;
};

// Pure decision procedure: aliases, no-coupling and flash special cases,
// probe-driven collapse, width and rate checks, then the damping and
// tunneling rules for the semiclassical theories.
Verdict classify_verdict(TheoryId theory, const ExperimentProtocol& p,
                         const CollapseParams& cp = default_collapse_params(),
                         const PhysicalConstants& k = default_constants());

// Theory-major cross product.
std::vector<Verdict> verdict_table(const std::vector<ExperimentProtocol>& protocols,
                                   const std::vector<TheoryId>& theories,
                                   const CollapseParams& cp = default_collapse_params(),
                                   const PhysicalConstants& k = default_constants());

enum class EngineKind { TwoSite, Grid };
std::string_view to_string(EngineKind e);
EngineKind parse_engine(std::string_view text);

struct ScenarioOptions {
  EngineKind engine = EngineKind::TwoSite;
  std::size_t n_traj = 0;
  double horizon = 1.0;  // s
  double dt = 1e-2;      // s
  std::uint64_t seed = 0;
  std::size_t n_lags = 10;
  std::size_t lag_stride = 0;  // samples per lag; 0 picks n_samples / (4 n_lags)
  unsigned threads = 0;        // 0: hardware concurrency
  GridOptions grid;
};

struct EnsembleStats {
  std::vector<double> times;
  std::vector<double> mean;
  std::vector<double> stderr_mean;
  std::optional<std::vector<double>> analytic_mean;
  std::vector<double> lags;  // s; lag k * stride * dt for k = 1..n_lags
  std::vector<double> corr;
  std::vector<double> corr_stderr;
  std::optional<std::vector<double>> analytic_corr;
};

struct ConsistencyCheck {
  bool consistent = true;
  std::string detail;
  std::optional<double> empirical_jump_rate;  // s^-1, probe-driven telegraph only
};

struct ScenarioResult {
  Verdict verdict;
  RateReport rates;
  std::vector<ForceRecord> records;
  std::vector<std::vector<CollapseEvent>> collapses;  // grid engine
  std::optional<EnsembleStats> stats;
  std::optional<ConsistencyCheck> consistency;
};

// Mean curve with standard errors, and lag correlation estimated per
// trajectory (time average of F_i F_{i+k}) then averaged across trajectories.
EnsembleStats ensemble_statistics(const std::vector<ForceRecord>& records, std::size_t n_lags,
                                  std::size_t lag_stride);

// Whether every record looks like the given class. Zero means |F| <= 1e-3 f0;
// a localized force is within level_tolerance * f0 of +-f0. Grid records need
// a looser tolerance since a localized packet jitters around the minimum after
// each hit.
ConsistencyCheck check_records(const Verdict& verdict, const RateReport& rates,
                               const std::vector<ForceRecord>& records,
                               double level_tolerance = 0.01);

// Runs n_traj trajectories on independent streams stream_seed(seed, i), in
// parallel, merged by index.
ScenarioResult run_scenario(TheoryId theory, const ExperimentProtocol& p,
                            const ScenarioOptions& options,
                            const CollapseParams& cp = default_collapse_params(),
                            const PhysicalConstants& k = default_constants());

}  // namespace gravcat

#endif  // GRAVCAT_ORCHESTRATOR_HPP_
