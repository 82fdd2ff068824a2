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

#include "gravcat/error.hpp"
#include "gravcat/force_model.hpp"
#include "gravcat/protocol.hpp"
#include "gravcat/random.hpp"
#include "gravcat/two_site.hpp"

namespace gravcat {
namespace {

struct MeanSe {
  double mean;
  double se;
};

template <typename F>
MeanSe sample_mean(std::size_t n, F&& draw) {
  double s = 0, s2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = draw(i);
    s += x;
    s2 += x * x;
  }
  const double m = s / static_cast<double>(n);
  const double var = (s2 / static_cast<double>(n) - m * m) * static_cast<double>(n) /
                     static_cast<double>(n - 1);
  return {m, std::sqrt(var / static_cast<double>(n))};
}

TEST(Telegraph, AnalyticCurves) {
  EXPECT_EQ(telegraph_analytic_mean(2.0, 1.0, 0.0), -2.0);
  EXPECT_DOUBLE_EQ(telegraph_analytic_mean(2.0, 1.0, 1.0), -2.0 / std::numbers::e);
  EXPECT_EQ(telegraph_analytic_mean(2.0, 0.0, 7.0), -2.0);
  EXPECT_EQ(telegraph_analytic_corr(2.0, 1.0, 3.0, 3.0), 4.0);
  EXPECT_LT(telegraph_analytic_corr(2.0, 1.0, 0.0, 1e3), 1e-300);
  EXPECT_EQ(telegraph_analytic_corr(2.0, 1.0, 1.0, 2.5), telegraph_analytic_corr(2.0, 1.0, 2.5, 1.0));
}

TEST(Telegraph, SampleBasics) {
  const auto still = telegraph_sample(1.0, 0.0, 1.0, 0.01, 1);
  EXPECT_TRUE(still.events.empty());
  for (double f : still.forces) EXPECT_EQ(f, -1.0);
  EXPECT_THROW(telegraph_sample(1.0, 1.0, 1.0, 0.1, 1), NumericalError);
  const auto a = telegraph_sample(1.0, 1.0, 5.0, 0.01, 42);
  EXPECT_EQ(a, telegraph_sample(1.0, 1.0, 5.0, 0.01, 42));
  for (double f : a.forces) EXPECT_TRUE(f == 1.0 || f == -1.0);
  for (std::size_t i = 1; i < a.times.size(); ++i) EXPECT_GT(a.times[i], a.times[i - 1]);
}

TEST(Telegraph, MomentsMatchAnalyticCurves) {
  const double gamma = 2.0, dt = 0.01;
  const std::size_t i1 = 50;  // t = 1/Gamma
  auto draws = [&](std::size_t n, std::uint64_t base) {
    std::vector<ForceRecord> out;
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(telegraph_sample(1.0, gamma, 1.5, dt, stream_seed(base, i)));
    }
    return out;
  };
  const auto big = draws(10000, 7);
  const auto mean = sample_mean(big.size(), [&](std::size_t i) { return big[i].forces[i1]; });
  EXPECT_NEAR(mean.mean, -1.0 / std::numbers::e, 3 * mean.se);
  const auto corr = sample_mean(big.size(), [&](std::size_t i) {
    return big[i].forces[20] * big[i].forces[20 + i1];
  });
  EXPECT_NEAR(corr.mean, 1.0 / std::numbers::e, 3 * corr.se);

  // Standard error shrinks like 1/sqrt(n).
  const auto small = draws(1000, 8);
  const auto mean_small =
      sample_mean(small.size(), [&](std::size_t i) { return small[i].forces[i1]; });
  EXPECT_NEAR(mean_small.mean, -1.0 / std::numbers::e, 3 * mean_small.se);
  EXPECT_NEAR(mean_small.se / mean.se, std::sqrt(10.0), 0.2 * std::sqrt(10.0));
}

TEST(TwoSite, UnitaryRotation) {
  const auto plus = TwoSiteState::plus();
  const auto same = evolve_unitary(plus, 3.0, 0.0);
  EXPECT_EQ(same.c_plus, plus.c_plus);
  EXPECT_EQ(same.c_minus, plus.c_minus);
  const auto flipped = evolve_unitary(plus, 1.0, std::numbers::pi / 2);
  EXPECT_NEAR(flipped.p_minus(), 1.0, 1e-15);
  for (double t : {0.1, 0.7, 2.3, 11.0}) {
    const auto s = evolve_unitary(plus, 1.3, t);
    const double c = std::cos(1.3 * t);
    EXPECT_NEAR(s.p_plus(), c * c, 1e-12);
    EXPECT_NEAR(s.norm(), 1.0, 1e-12);
  }
}

TEST(TwoSite, GrwJumpFrequencies) {
  Rng rng = make_rng(9);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(grw_jump_two_site(TwoSiteState::plus(), rng).outcome, 1);
  for (double p : {0.5, 0.7}) {
    TwoSiteState s{{std::sqrt(p), 0.0}, {0.0, std::sqrt(1 - p)}};
    const auto est = sample_mean(10000, [&](std::size_t) {
      const auto j = grw_jump_two_site(s, rng);
      EXPECT_EQ(j.outcome == 1 ? j.state.p_plus() : j.state.p_minus(), 1.0);
      return j.outcome == 1 ? 1.0 : 0.0;
    });
    EXPECT_NEAR(est.mean, p, 3 * est.se);
  }
}

TEST(TwoSite, Dephasing) {
  const auto rho = TwoSiteDensityMatrix::from_state(TwoSiteState::cat());
  const auto same = dephasing_step(rho, 0.0, 1.0);
  EXPECT_EQ(same.rho_pm, rho.rho_pm);
  const auto d = dephasing_step(rho, 2.0, 0.5);
  EXPECT_NEAR(std::abs(d.rho_pm) / std::abs(rho.rho_pm), 1.0 / std::numbers::e, 1e-15);
  EXPECT_EQ(d.rho_pp, rho.rho_pp);
  EXPECT_EQ(d.rho_mm, rho.rho_mm);
  EXPECT_NEAR(d.trace(), 1.0, 1e-15);
  EXPECT_GE(d.min_eigenvalue(), -1e-12);
}

TEST(TwoSite, DiffusiveStepBasics) {
  Rng rng = make_rng(1);
  const auto cat = TwoSiteState::cat();
  const auto same = csl_diffusive_step(cat, 0.0, 0.01, rng);
  EXPECT_EQ(same.c_plus, cat.c_plus);
  EXPECT_THROW(csl_diffusive_step(cat, 10.0, 0.01, rng), NumericalError);
  TwoSiteState s = cat;
  for (int i = 0; i < 1000; ++i) {
    s = csl_diffusive_step(s, 1.0, 0.01, rng);
    ASSERT_NEAR(s.norm(), 1.0, 1e-10);
  }
}

// E[p(1-p)] at t with the given step; the SDE law does not depend on the step.
MeanSe diffusive_spread(double dt, double t, std::size_t n, std::uint64_t seed) {
  const auto steps = static_cast<std::size_t>(std::llround(t / dt));
  return sample_mean(n, [&](std::size_t i) {
    Rng rng = make_rng(stream_seed(seed, i));
    TwoSiteState s = TwoSiteState::cat();
    for (std::size_t k = 0; k < steps; ++k) s = csl_diffusive_step(s, 1.0, dt, rng);
    return s.p_plus() * s.p_minus();
  });
}

TEST(TwoSite, DiffusiveStepSizeIndependence) {
  const auto coarse = diffusive_spread(0.01, 1.0, 2000, 3);
  const auto fine = diffusive_spread(0.001, 1.0, 2000, 4);
  EXPECT_NEAR(coarse.mean, fine.mean, 3 * std::hypot(coarse.se, fine.se));
  EXPECT_LT(fine.mean, 0.25);
}

TEST(TwoSite, DiffusiveMartingaleAndLocalization) {
  const double gamma = 1.0, dt = 0.01;
  const std::size_t steps = 5000;  // t = 50 / Gamma
  const double p0 = 0.7;
  std::size_t localized = 0;
  const auto est = sample_mean(2000, [&](std::size_t i) {
    Rng rng = make_rng(stream_seed(21, i));
    TwoSiteState s{{std::sqrt(p0), 0.0}, {std::sqrt(1 - p0), 0.0}};
    double at_five = 0.0;
    for (std::size_t k = 0; k < steps; ++k) {
      s = csl_diffusive_step(s, gamma, dt, rng);
      if (k + 1 == 500) at_five = s.p_plus();
    }
    if (std::min(s.p_plus(), s.p_minus()) < 1e-3) ++localized;
    return at_five;
  });
  EXPECT_NEAR(est.mean, p0, 3 * est.se);
  EXPECT_GE(localized, 1980u);
}

TEST(TwoSiteTrajectory, TheoryCompositions) {
  const auto ri = preset_protocol(ProtocolName::RomeroIsart);
  const auto pino = preset_protocol(ProtocolName::Pino);
  for (const auto& p : {ri, pino}) {
    const auto nh = run_two_site_trajectory(TheoryId::NH, p, 0.5, 1e-3, 1);
    for (double f : nh.forces) EXPECT_EQ(f, 0.0);
  }
  const auto grw = run_two_site_trajectory(TheoryId::GRW_mN, ri, 5.0, 0.01, 2);
  for (double f : grw.forces) EXPECT_EQ(f, 0.0);

  const auto csl = run_two_site_trajectory(TheoryId::CSL_mN, pino, 0.5, 1e-3, 3);
  ASSERT_FALSE(csl.forces.empty());
  const double f0 = csl.f0;
  EXPECT_EQ(std::abs(csl.forces.front()), f0);
  for (double f : csl.forces) EXPECT_EQ(f, csl.forces.front());
  for (const auto& e : csl.events) EXPECT_NE(e.kind, EventKind::Tunnel);

  const auto dp = run_two_site_trajectory(TheoryId::DP_mN, ri, 1.0, 0.01, 4);
  for (double f : dp.forces) EXPECT_EQ(std::abs(f), dp.f0);

  const auto cqt = run_two_site_trajectory(TheoryId::CQT_Newton, ri, 5.0, 0.01, 5);
  EXPECT_EQ(cqt, run_two_site_trajectory(TheoryId::CQT_Newton, ri, 5.0, 0.01, 5));
  EXPECT_NE(cqt, run_two_site_trajectory(TheoryId::CQT_Newton, ri, 5.0, 0.01, 6));
  EXPECT_EQ(cqt.forces.front(), -cqt.f0);
  for (double f : cqt.forces) EXPECT_TRUE(f == cqt.f0 || f == -cqt.f0);
  EXPECT_DOUBLE_EQ(cqt.f0, point_force(ri.sphere_mass, ri.probe_mass, ri.cat_separation,
                                       ri.probe_distance()));
}

TEST(TwoSiteTrajectory, JumpTheoriesTakeThreeValues) {
  auto p = preset_protocol(ProtocolName::Pino);
  for (TheoryId t : {TheoryId::GRW_mN, TheoryId::K_mN, TheoryId::GRW0, TheoryId::CQT_Newton}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto r = run_two_site_trajectory(t, p, 0.5, 1e-3, seed);
      for (double f : r.forces) {
        EXPECT_TRUE(f == 0.0 || std::abs(f) == r.f0) << to_string(t) << " " << f;
      }
    }
  }
}

}  // namespace
}  // namespace gravcat
