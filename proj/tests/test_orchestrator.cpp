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


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "golden_table.hpp"
#include "gravcat/orchestrator.hpp"
#include "gravcat/protocol.hpp"

namespace gravcat {
namespace {

using testing::kGoldenTable;

bool has(const Verdict& v, Rationale r) {
  return std::find(v.rationale.begin(), v.rationale.end(), r) != v.rationale.end();
}

TEST(Verdict, GoldenTable) {
  const std::vector<ExperimentProtocol> protocols = {preset_protocol(ProtocolName::RomeroIsart),
                                                     preset_protocol(ProtocolName::Pino)};
  const std::vector<TheoryId> theories(kAllTheories.begin(), kAllTheories.end());
  const auto table = verdict_table(protocols, theories);
  ASSERT_EQ(table.size(), 32u);
  for (const auto& v : table) {
    EXPECT_EQ(v.signal_class, testing::golden_class(v.theory, v.protocol))
        << to_string(v.theory) << " / " << to_string(v.protocol);
  }
  // Theory-major ordering.
  EXPECT_EQ(table[0].theory, TheoryId::CQT_Newton);
  EXPECT_EQ(table[1].theory, TheoryId::CQT_Newton);
  EXPECT_EQ(table[1].protocol, ProtocolName::Pino);
}

TEST(Verdict, Examples) {
  const auto ri = preset_protocol(ProtocolName::RomeroIsart);
  const auto pino = preset_protocol(ProtocolName::Pino);
  const auto grw = classify_verdict(TheoryId::GRW_mN, ri);
  EXPECT_EQ(grw.signal_class, SignalClass::NetZeroForce);
  EXPECT_TRUE(has(grw, Rationale::WidthIneffective));
  const auto csl = classify_verdict(TheoryId::CSL_mN, pino);
  EXPECT_EQ(csl.signal_class, SignalClass::ConstantSingleMinimum);
  EXPECT_TRUE(has(csl, Rationale::SnTunnelingSuppressed));
  EXPECT_EQ(classify_verdict(TheoryId::GRW0, ri).signal_class, SignalClass::TelegraphJumps);
  EXPECT_TRUE(has(classify_verdict(TheoryId::GRW0, ri), Rationale::ProbeDrivesCollapse));
  EXPECT_TRUE(has(classify_verdict(TheoryId::NH, pino), Rationale::NoGravitationalCoupling));
  EXPECT_TRUE(has(classify_verdict(TheoryId::KafriEtAl, ri), Rationale::EquivalentToDpMn));
}

TEST(Verdict, PinoGrwBranches) {
  const auto pino = preset_protocol(ProtocolName::Pino);
  const auto v = classify_verdict(TheoryId::GRW_mN, pino);
  ASSERT_EQ(v.branches.size(), 2u);
  double total = 0.0;
  for (const auto& b : v.branches) total += b.probability;
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_TRUE(classify_verdict(TheoryId::GRW_mN, preset_protocol(ProtocolName::RomeroIsart))
                  .branches.empty());
}

TEST(Verdict, PureFunction) {
  const auto ri = preset_protocol(ProtocolName::RomeroIsart);
  for (TheoryId t : kAllTheories) {
    const auto a = classify_verdict(t, ri);
    const auto b = classify_verdict(t, ri);
    EXPECT_EQ(a.signal_class, b.signal_class);
    EXPECT_EQ(a.rationale, b.rationale);
  }
}

TEST(Verdict, CollapseParamsMatter) {
  // A GRW width below the cat separation makes GRW effective on the lead cat.
  const auto ri = preset_protocol(ProtocolName::RomeroIsart);
  CollapseParams cp;
  cp.sigma_grw = 1e-13;
  cp.lambda_grw = 1e-12;
  EXPECT_NE(classify_verdict(TheoryId::GRW_mN, ri, cp).signal_class, SignalClass::NetZeroForce);
}

TEST(Scenario, NoTrajectoriesMeansNoRecords) {
  ScenarioOptions o;
  o.n_traj = 0;
  const auto r = run_scenario(TheoryId::CSL_mN, preset_protocol(ProtocolName::Pino), o);
  EXPECT_TRUE(r.records.empty());
  EXPECT_FALSE(r.stats.has_value());
  EXPECT_EQ(r.verdict.signal_class, SignalClass::ConstantSingleMinimum);
}

TEST(Scenario, TelegraphEnsembleAgainstAnalytic) {
  ScenarioOptions o;
  o.n_traj = 4000;
  o.horizon = 3.0;
  o.dt = 0.01;
  o.seed = 99;
  const auto r = run_scenario(TheoryId::CQT_Newton, preset_protocol(ProtocolName::RomeroIsart), o);
  ASSERT_TRUE(r.stats && r.stats->analytic_mean && r.stats->analytic_corr);
  const auto& s = *r.stats;
  for (std::size_t i = 0; i < s.times.size(); i += 25) {
    const double a = (*s.analytic_mean)[i];
    EXPECT_NEAR(s.mean[i], a, 3.5 * s.stderr_mean[i] + 1e-12 * std::abs(a)) << s.times[i];
  }
  ASSERT_EQ(s.lags.size(), 10u);
  for (std::size_t l = 0; l < s.lags.size(); ++l) {
    EXPECT_NEAR(s.corr[l], (*s.analytic_corr)[l], 3.5 * s.corr_stderr[l] + 1e-75);
  }
  ASSERT_TRUE(r.consistency);
  EXPECT_TRUE(r.consistency->consistent) << r.consistency->detail;
}

TEST(Scenario, DeterministicAcrossThreadCounts) {
  ScenarioOptions o;
  o.n_traj = 64;
  o.horizon = 1.0;
  o.dt = 0.01;
  o.seed = 5;
  o.threads = 1;
  const auto p = preset_protocol(ProtocolName::RomeroIsart);
  const auto a = run_scenario(TheoryId::GRW0, p, o);
  o.threads = 4;
  const auto b = run_scenario(TheoryId::GRW0, p, o);
  EXPECT_EQ(a.records, b.records);
}

TEST(Scenario, ConsistencyFlagsMismatch) {
  const auto ri = preset_protocol(ProtocolName::RomeroIsart);
  ScenarioOptions o;
  o.n_traj = 5;
  o.horizon = 1.0;
  o.dt = 0.01;
  const auto telegraph = run_scenario(TheoryId::CQT_Newton, ri, o);
  Verdict wrong = telegraph.verdict;
  wrong.signal_class = SignalClass::NoForce;
  EXPECT_FALSE(check_records(wrong, telegraph.rates, telegraph.records).consistent);
}

TEST(Scenario, GridEngine) {
  ScenarioOptions o;
  o.engine = EngineKind::Grid;
  o.n_traj = 3;
  o.horizon = 0.1;
  o.dt = 0.01;
  o.grid.n_points = 1024;
  const auto r = run_scenario(TheoryId::GRW_mN, preset_protocol(ProtocolName::Pino), o);
  ASSERT_EQ(r.records.size(), 3u);
  ASSERT_EQ(r.collapses.size(), 3u);
  ASSERT_TRUE(r.consistency);
  EXPECT_TRUE(r.consistency->consistent) << r.consistency->detail;
}

TEST(Signal, NamesRoundTrip) {
  for (auto c : {SignalClass::NetZeroForce, SignalClass::ConstantSingleMinimum,
                 SignalClass::TelegraphJumps, SignalClass::IntermittentFlashForce,
                 SignalClass::NoForce, SignalClass::RapidSuppressionSingleMinimum}) {
    EXPECT_EQ(parse_signal_class(to_string(c)), c);
  }
  EXPECT_EQ(to_string(SignalClass::NetZeroForce), "NET_ZERO_FORCE");
  EXPECT_EQ(parse_engine("two-site"), EngineKind::TwoSite);
  EXPECT_EQ(parse_engine("grid"), EngineKind::Grid);
}

}  // namespace
}  // namespace gravcat
