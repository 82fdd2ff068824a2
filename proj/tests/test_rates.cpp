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

#include <cmath>
#include <numbers>
#include <random>

#include "gravcat/force_model.hpp"
#include "gravcat/protocol.hpp"
#include "gravcat/rates.hpp"

namespace gravcat {
namespace {

constexpr double kHbar = 1.054571817e-34;
constexpr double kG = 6.67430e-11;
constexpr double kC = 299792458.0;
constexpr double kKb = 1.380649e-23;
constexpr double kLp = 1.616255e-35;
constexpr double kAmu = 1.66053906660e-27;
const double kPi = std::numbers::pi;

TEST(Rates, CqtDecay) {
  EXPECT_EQ(cqt_decay_rate(0.0, 0.02), 0.0);
  EXPECT_DOUBLE_EQ(cqt_decay_rate(10.0, 0.02), 1.0);
  EXPECT_DOUBLE_EQ(cqt_decay_rate(20.0, 0.02), 4.0 * cqt_decay_rate(10.0, 0.02));
  EXPECT_THROW(cqt_decay_rate(-1.0, 0.02), std::invalid_argument);
}

TEST(Rates, Grw) {
  EXPECT_DOUBLE_EQ(grw_rate(1e14), 1e-2);
  EXPECT_DOUBLE_EQ(grw_rate(1e18), 1e2);
  EXPECT_EQ(grw_rate(0.0), 0.0);
}

TEST(Rates, Csl) {
  const double lam = csl_lambda(1e-36, 1e-7);
  EXPECT_NEAR(lam / (1e-36 / (8 * std::pow(kPi, 1.5) * 1e-21)), 1.0, 1e-14);
  EXPECT_NEAR(lam, 2.24e-17, 0.01e-17);
  EXPECT_DOUBLE_EQ(csl_lambda(2e-36, 1e-7), 2 * lam);
  EXPECT_NEAR(csl_lambda(1e-36, 2e-7) * 8 / lam, 1.0, 1e-14);
  EXPECT_EQ(csl_cm_rate(1.0, 1.0, lam), lam);
  EXPECT_NEAR(csl_cm_rate(2e14, 1.0, lam) / csl_cm_rate(1e14, 1.0, lam), 4.0, 1e-12);
}

TEST(Rates, DiosiPenrose) {
  const double tau = dp_damping_time(1e-13, 1e-15);
  EXPECT_NEAR(tau * kG * 1e-26 / (std::sqrt(kPi) * kHbar * 1e-15), 1.0, 1e-14);
  EXPECT_NEAR(tau, 2.8e-13, 0.01e-13);
  EXPECT_NEAR(dp_damping_time(2e-13, 1e-15) * 4 / tau, 1.0, 1e-14);
  EXPECT_NEAR(dp_damping_time(1e-13, 2e-15) / (2 * tau), 1.0, 1e-14);
  const double T = dp_noise_temperature(1e11 * kAmu, 1e-15);
  EXPECT_NEAR(T / (kHbar * kHbar / (8 * kKb * 1e11 * kAmu * 1e-30)), 1.0, 1e-14);
  EXPECT_NEAR(dp_noise_temperature(2e11 * kAmu, 1e-15) * 2 / T, 1.0, 1e-14);
  EXPECT_NEAR(dp_reference_mass(T, 1e-15) / (1e11 * kAmu), 1.0, 1e-12);
  PhysicalConstants unit;
  unit.hbar = 1.0;
  unit.k_B = 1.0;
  EXPECT_DOUBLE_EQ(dp_noise_temperature(1.0, 1.0, unit), 0.125);
}

TEST(Rates, TrialDynamics) {
  const double b = td_csl_backaction_damping(1e-13, 1e-6, 1e-24);
  EXPECT_NEAR(b / (kPi * kG * kG * 1e-26 * 1e-6 / 2e-24), 1.0, 1e-14);
  EXPECT_NEAR(b, 7e-29, 0.1e-29);
  EXPECT_EQ(td_csl_backaction_damping(1e-13, 0.0, 1e-24), 0.0);
  EXPECT_NEAR(td_csl_backaction_damping(1e-13, 2e-6, 1e-24) / (2 * b), 1.0, 1e-14);
  const auto td = td_dp_damping_time(1e-13, 1e-15);
  EXPECT_NEAR(td.time, 1.4e-13, 0.01e-13);
  EXPECT_DOUBLE_EQ(td.time, dp_damping_time(1e-13, 1e-15) / 2);
  EXPECT_TRUE(td.dissipative_valid);
  EXPECT_FALSE(td_dp_damping_time(1e8 * kAmu, 1e-15).dissipative_valid);
}

TEST(Rates, Karolyhazy) {
  const double m = 1e-13, R = 1e-6;
  const double lc = kHbar / (m * kC);
  const double a = k_critical_width(m, R, true);
  EXPECT_NEAR(a / (std::pow(R / kLp, 2.0 / 3.0) * lc), 1.0, 1e-12);
  EXPECT_GT(a, 1e-12);
  EXPECT_LT(a, 1e-10);
  EXPECT_NEAR(k_critical_width(m, 8 * R, true) / (4 * a), 1.0, 1e-12);
  const double ae = k_critical_width(1e-27, 0.0, false);
  EXPECT_NEAR(k_critical_width(2e-27, 0.0, false) * 8 / ae, 1.0, 1e-12);
  EXPECT_NEAR(k_critical_time(1e-13, 1e-11), 0.0948, 0.0005);
  EXPECT_NEAR(k_critical_time(1e-13, 2e-11) / (4 * k_critical_time(1e-13, 1e-11)), 1.0, 1e-14);
  EXPECT_EQ(k_critical_time(0.0, 1e-11), 0.0);
}

TEST(Rates, PointerOrthogonality) {
  const auto p = preset_protocol(ProtocolName::RomeroIsart);
  const double f0 = point_force(0.38e-12, 4e-12, 1e-12, 3e-6);
  const auto earth = pointer_orthogonality(p, 6e24, f0, 1.0, PointerBody::Other);
  EXPECT_LT(earth.kinematic_deflection, 1e-50);
  EXPECT_FALSE(earth.projective);
  const auto probe = pointer_orthogonality(p, p.probe_mass, f0, 1.0, PointerBody::Probe);
  EXPECT_EQ(probe.pointer_separation_used, 1e-6);
  EXPECT_TRUE(probe.projective);
  const auto zero = pointer_orthogonality(p, 1.0, 0.0, 1.0, PointerBody::Other);
  EXPECT_EQ(zero.kinematic_deflection, 0.0);
  EXPECT_FALSE(zero.projective);
  EXPECT_THROW(pointer_orthogonality(p, 0.0, f0, 1.0, PointerBody::Probe), std::invalid_argument);
}

TEST(Rates, ProbeCollapse) {
  EXPECT_NEAR(probe_collapse_rate(1e20, 1e14, 1e-16), 1e4, 1.0);
  EXPECT_LT(probe_collapse_rate(1e20, 1e14, 1e-16) / probe_collapse_rate(1e20, 0, 1e-16) - 1, 1e-5);
  EXPECT_EQ(probe_collapse_rate(0, 0, 1e-16), 0.0);
}

// Every closed form scales with its declared power law.
TEST(Rates, Homogeneity) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> s(0.1, 10.0);
  for (int i = 0; i < 200; ++i) {
    const double a = s(rng);
    auto rel = [](double x, double y) { return std::abs(x / y - 1.0); };
    EXPECT_LT(rel(cqt_decay_rate(a * 3, 0.1), a * a * cqt_decay_rate(3, 0.1)), 1e-12);
    EXPECT_LT(rel(cqt_decay_rate(3, a * 0.1), a * cqt_decay_rate(3, 0.1)), 1e-12);
    EXPECT_LT(rel(csl_lambda(a * 1e-36, 1e-7), a * csl_lambda(1e-36, 1e-7)), 1e-12);
    EXPECT_LT(rel(csl_lambda(1e-36, a * 1e-7), csl_lambda(1e-36, 1e-7) / (a * a * a)), 1e-12);
    EXPECT_LT(rel(csl_cm_rate(a * 1e10, 2, 1e-17), a * a * csl_cm_rate(1e10, 2, 1e-17)), 1e-12);
    EXPECT_LT(rel(dp_damping_time(a * 1e-13, 1e-15), dp_damping_time(1e-13, 1e-15) / (a * a)), 1e-12);
    EXPECT_LT(rel(dp_damping_time(1e-13, a * 1e-15), a * dp_damping_time(1e-13, 1e-15)), 1e-12);
    EXPECT_LT(rel(td_csl_backaction_damping(a * 1e-13, 1e-6, 1e-24),
                  a * a * td_csl_backaction_damping(1e-13, 1e-6, 1e-24)),
              1e-12);
    EXPECT_LT(rel(k_critical_time(1e-13, a * 1e-11), a * a * k_critical_time(1e-13, 1e-11)), 1e-12);
    EXPECT_LT(rel(k_critical_width(a * 1e-13, 1e-6, true),
                  k_critical_width(1e-13, 1e-6, true) / a),
              1e-12);
  }
}

TEST(RateReport, WidthEffectiveness) {
  const auto ri = preset_protocol(ProtocolName::RomeroIsart);
  const auto pino = preset_protocol(ProtocolName::Pino);
  EXPECT_FALSE(rate_report(TheoryId::GRW_mN, ri).collapse_effective_on_cat);
  EXPECT_TRUE(rate_report(TheoryId::GRW_mN, pino).collapse_effective_on_cat);
  for (TheoryId t : kAllTheories) {
    for (const auto& p : {ri, pino}) {
      const RateReport r = rate_report(t, p);
      EXPECT_GE(r.intrinsic_rate, 0.0);
      EXPECT_GE(r.effective_cm_rate, 0.0);
      if (r.collapse_width) {
        EXPECT_GT(*r.collapse_width, 0.0);
        EXPECT_EQ(r.collapse_effective_on_cat, p.cat_separation > *r.collapse_width);
      }
    }
  }
}

TEST(RateReport, ProbeDrivenRateIsCapped) {
  const auto ri = preset_protocol(ProtocolName::RomeroIsart);
  const double gamma = cqt_decay_rate(ri.tunneling_rate, ri.probe_resolution);
  EXPECT_DOUBLE_EQ(rate_report(TheoryId::CQT_Newton, ri).effective_cm_rate, gamma);
  for (TheoryId t : {TheoryId::GRW0, TheoryId::CSL0, TheoryId::DP0, TheoryId::K0}) {
    EXPECT_DOUBLE_EQ(rate_report(t, ri).effective_cm_rate, gamma) << to_string(t);
  }
  EXPECT_EQ(rate_report(TheoryId::NH, ri).effective_cm_rate, 0.0);
}

}  // namespace
}  // namespace gravcat
