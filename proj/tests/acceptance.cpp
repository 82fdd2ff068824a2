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


// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "golden_table.hpp"
#include "gravcat/config.hpp"
#include "gravcat/force_model.hpp"
#include "gravcat/grid.hpp"
#include "gravcat/orchestrator.hpp"
#include "gravcat/output.hpp"
#include "gravcat/protocol.hpp"
#include "gravcat/radial_sn.hpp"
#include "gravcat/random.hpp"
#include "gravcat/rates.hpp"
#include "gravcat/two_site.hpp"
#include "oracles.hpp"

namespace {

using namespace gravcat;
namespace fs = std::filesystem;

constexpr double kAmu = 1.66053906660e-27;
constexpr double kHbar = 1.054571817e-34;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[FAILED " << what << "] ";
    }
  }
};

bool within_factor(double value, double target, double factor) {
  return value > 0.0 && value <= target * factor && value >= target / factor;
}

bool within_rel(double value, double target, double rel) {
  return std::abs(value / target - 1.0) <= rel;
}

void force_formulas(Outcome& o) {
  const double f0 = point_force(0.38e-12, 4.0e-12, 1e-12, 3e-6);
  const double fd = density_force(kTantalumDensity, 4.0e-12, 1e-11, 1e-6, 5e-6);
  o.detail << "point_force=" << f0 << " N, density_force=" << fd << " N ";
  o.check(within_rel(f0, 2e-30, 0.10), "point_force within 10% of 2e-30 N");
  o.check(within_rel(fd, 0.6e-28, 0.10), "density_force within 10% of 0.6e-28 N");
}

void rate_values(Outcome& o) {
  const double lam = csl_lambda(1e-36, 1e-7);
  const double gcm = csl_cm_rate(1e14, 1.0, lam);
  const double tau = dp_damping_time(1e-13, 1e-15);
  const double mr = dp_reference_mass(1.0, 1e-15) / kAmu;
  const double back = td_csl_backaction_damping(1e-13, 1e-6, 1e-24);
  const double ac = k_critical_width(1e-13, 1e-6, true);
  const double tc = k_critical_time(1e-13, 1e-11);
  const double probe = probe_collapse_rate(1e20, 1e14, 1e-16);
  o.detail << "lambda_CSL=" << lam << " Gamma_cm=" << gcm << " tau_DP=" << tau << " m_r=" << mr
           << " amu back-action=" << back << " a_c=" << ac << " tau_c=" << tc
           << " probe_rate=" << probe << ' ';
  o.check(within_factor(lam, 1e-17, 3), "lambda_CSL");
  o.check(within_factor(gcm, 1e11, 3), "Gamma_cm");
  o.check(within_factor(tau, 1e-13, 3), "tau_DP");
  o.check(within_factor(mr, 1e11, 3), "m_r");
  o.check(within_factor(back, 1e-29, 10), "TD back-action");
  o.check(within_factor(ac, 1e-11, 10), "a_c");
  o.check(within_factor(tc, 0.1, 10), "tau_c");
  o.check(probe == (1e20 + 1e14) * 1e-16 && within_rel(probe, 1e4, 1e-5), "probe collapse rate");
}

void telegraph_engine(Outcome& o) {
  const auto p = preset_protocol(ProtocolName::RomeroIsart);
  ScenarioOptions opt;
  opt.n_traj = 10000;
  opt.horizon = 4.0;
  opt.dt = 0.01;
  opt.seed = 20260101;
  opt.n_lags = 10;
  const auto r = run_scenario(TheoryId::CQT_Newton, p, opt);
  const EnsembleStats& s = *r.stats;
  const double dt = opt.dt;
  double worst_mean = 0.0, worst_corr = 0.0;
  for (std::size_t l = 0; l < s.lags.size(); ++l) {
    // Mean checked at the probe lag times, correlation at the lags themselves.
    const auto i = static_cast<std::size_t>(std::llround(s.lags[l] / dt));
    worst_mean = std::max(worst_mean,
                          std::abs(s.mean[i] - (*s.analytic_mean)[i]) / s.stderr_mean[i]);
    worst_corr = std::max(worst_corr, std::abs(s.corr[l] - (*s.analytic_corr)[l]) / s.corr_stderr[l]);
  }
  o.detail << "max |mean-analytic|/SE=" << worst_mean << ", max |corr-analytic|/SE=" << worst_corr
           << " over " << s.lags.size() << " lags ";
  o.check(s.lags.size() == 10, "10 lags");
  o.check(worst_mean <= 3.0, "mean within 3 SE");
  o.check(worst_corr <= 3.0, "correlation within 3 SE");
}

void grw_hit_law(Outcome& o) {
  // Norm after repeated hits on a cat.
  const double L = 5e-7, sg = 1e-7;
  const auto grid = Grid1D::spanning(-1.5e-6, 1.5e-6, 4096);
  Rng rng = make_rng(77);
  double worst_norm = 0.0;
  for (int k = 0; k < 50; ++k) {
    auto state = make_cat_state(2e-8 + 1e-9 * k, L, grid, 0.0, 0.02 * k);
    for (int hit = 0; hit < 3; ++hit) {
      state = grw_hit(state, sample_collapse_center(state, sg, rng), sg);
      worst_norm = std::max(worst_norm, std::abs(state.norm() - 1.0));
    }
  }
  // Gaussian product width.
  const double s0 = 1.5e-7;
  const auto g = make_cat_state(s0, 0.0, grid);
  const double w = grw_hit(g, 0.0, sg).width();
  const double expect = s0 * sg / std::hypot(s0, sg);
  // KS distance of 1e4 centre draws against an independent quadrature CDF.
  const auto cat = make_cat_state(5e-8, L, grid, 0.0, 0.65);
  const CollapseCenterTable table(cat, sg);
  std::vector<double> xs(10000);
  for (double& x : xs) x = table.sample(rng);
  const gravcat::testing::QuadratureCdf oracle(cat, sg, -2.5e-6, 2.5e-6, 2501);
  const double ks = gravcat::testing::ks_distance(xs, oracle);
  o.detail << "max norm error=" << worst_norm << " width rel err=" << std::abs(w / expect - 1)
           << " KS=" << ks << ' ';
  o.check(worst_norm < 1e-10, "post-hit norm");
  o.check(within_rel(w, expect, 1e-3), "Gaussian product width");
  o.check(ks < 0.02, "KS distance");
}

void schrodinger_newton(Outcome& o) {
  const double m = 1e9 * kAmu, s0 = 0.5e-6;
  const double t_disp = 2 * m * s0 * s0 / kHbar;
  const auto init = make_radial_gaussian(m, s0, 40 * s0, 4095);
  const auto series = sn_evolve_for(init, 0.0, 3 * t_disp, 60);
  double worst = 0.0;
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    worst = std::max(worst, std::abs(series.widths[i] / free_rms_radius(m, s0, series.times[i]) - 1));
  }
  const SnBudget budget;
  const auto half = detect_critical_mass(0.5e-6, 1e9 * kAmu, 1.6e10 * kAmu, budget);
  const auto one = detect_critical_mass(1e-6, 1e9 * kAmu, 1.6e10 * kAmu, budget);
  const double mid_half = std::sqrt(half.mass_lo * half.mass_hi);
  o.detail << "free width max rel err=" << worst << "; bracket(0.5um)=[" << half.mass_lo / kAmu
           << ", " << half.mass_hi / kAmu << "] amu; bracket(1um)=[" << one.mass_lo / kAmu << ", "
           << one.mass_hi / kAmu << "] amu ";
  o.check(worst <= 5e-3, "free dispersion within 0.5%");
  o.check(half.found && half.mass_hi / half.mass_lo <= 2.0 &&
              within_factor(mid_half / kAmu, 5e9, 2.0),
          "0.5um bracket at 5e9 amu within factor 2");
  o.check(one.found && one.mass_lo > mid_half, "1um bracket above the 0.5um bracket");
}

void diffusive_csl(Outcome& o) {
  const double gamma = 1.0, dt = 0.01, p0 = 0.7;
  const std::size_t n = 10000, steps = 5000;  // t = 50 / Gamma
  const std::vector<std::size_t> checkpoints = {100, 1000, 5000};
  std::vector<double> sum(checkpoints.size()), sum2(checkpoints.size());
  std::size_t pure = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng = make_rng(stream_seed(606, i));
    TwoSiteState s{{std::sqrt(p0), 0.0}, {std::sqrt(1 - p0), 0.0}};
    std::size_t c = 0;
    for (std::size_t k = 1; k <= steps; ++k) {
      s = csl_diffusive_step(s, gamma, dt, rng);
      if (c < checkpoints.size() && k == checkpoints[c]) {
        sum[c] += s.p_plus();
        sum2[c] += s.p_plus() * s.p_plus();
        ++c;
      }
    }
    if (s.p_plus() * s.p_plus() + s.p_minus() * s.p_minus() > 0.999) ++pure;
  }
  double worst = 0.0;
  for (std::size_t c = 0; c < checkpoints.size(); ++c) {
    const double mean = sum[c] / n;
    const double se = std::sqrt((sum2[c] / n - mean * mean) / (n - 1));
    worst = std::max(worst, std::abs(mean - p0) / se);
  }
  const double frac = static_cast<double>(pure) / n;
  o.detail << "max |E[p+]-p0|/SE=" << worst << " at t=1,10,50/Gamma; pure fraction=" << frac << ' ';
  o.check(worst <= 3.0, "martingale within 3 SE");
  o.check(frac >= 0.99, "purity > 0.999 in >= 99% of runs");
}

void golden_table(Outcome& o) {
  const std::vector<ExperimentProtocol> protocols = {preset_protocol(ProtocolName::RomeroIsart),
                                                     preset_protocol(ProtocolName::Pino)};
  std::size_t exact = 0, simulated = 0, agreeing = 0;
  for (const auto& p : protocols) {
    for (TheoryId t : kAllTheories) {
      const Verdict v = classify_verdict(t, p);
      const SignalClass want = gravcat::testing::golden_class(t, p.name);
      if (v.signal_class == want) {
        ++exact;
      } else {
        o.detail << "cell " << to_string(t) << "/" << to_string(p.name) << " gives "
                 << to_string(v.signal_class) << "; ";
      }
      ScenarioOptions opt;
      const bool pino = p.name == ProtocolName::Pino;
      opt.horizon = pino ? 0.5 : 5.0;
      opt.dt = pino ? 1e-3 : 1e-2;
      opt.n_traj = v.signal_class == SignalClass::TelegraphJumps ? 1000 : 200;
      opt.seed = 7000 + static_cast<std::uint64_t>(t);
      const auto r = run_scenario(t, p, opt);
      ++simulated;
      if (r.consistency && r.consistency->consistent) {
        ++agreeing;
      } else {
        o.detail << "simulation " << to_string(t) << "/" << to_string(p.name) << ": "
                 << (r.consistency ? r.consistency->detail : "no check") << "; ";
      }
    }
  }
  o.detail << exact << "/32 cells exact, " << agreeing << "/" << simulated
           << " simulated cells agree ";
  o.check(exact == 32, "golden table");
  o.check(agreeing == simulated, "simulated class extraction");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Files under a and b, compared byte by byte. Returns the number of files.
std::size_t compare_trees(const fs::path& a, const fs::path& b, Outcome& o) {
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(a)) {
    if (e.is_regular_file()) files.push_back(fs::relative(e.path(), a));
  }
  std::size_t nb = 0;
  for (const auto& e : fs::recursive_directory_iterator(b)) nb += e.is_regular_file();
  o.check(nb == files.size(), "same file set under " + a.string());
  for (const auto& f : files) o.check(slurp(a / f) == slurp(b / f), "identical " + f.string());
  return files.size();
}

void determinism(Outcome& o) {
  const fs::path root = fs::current_path() / "acceptance-determinism";
  fs::remove_all(root);
  RunConfig cfg;
  cfg.theories = {TheoryId::CQT_Newton, TheoryId::GRW0, TheoryId::CSL_mN, TheoryId::TD_CSL};
  cfg.n_traj = 300;
  cfg.horizon = 2.0;
  cfg.dt = 0.01;
  cfg.seed = 31337;
  std::size_t files = 0;
  for (const auto& p : {preset_protocol(ProtocolName::RomeroIsart),
                        preset_protocol(ProtocolName::Pino)}) {
    cfg.protocol = p;
    for (int run = 0; run < 2; ++run) {
      cfg.output_dir = (root / "lib" / std::string(to_string(p.name)) / std::to_string(run)).string();
      cfg.threads = run == 0 ? 1 : 4;
      std::vector<ScenarioResult> rs;
      for (TheoryId t : cfg.theories) rs.push_back(run_scenario(t, p, cfg.scenario_options(), cfg.collapse));
      emit_outputs(rs, cfg);
    }
    files += compare_trees(root / "lib" / std::string(to_string(p.name)) / "0",
                           root / "lib" / std::string(to_string(p.name)) / "1", o);
  }
#ifdef GRAVCAT_CLI_PATH
  const std::vector<std::string> commands = {
      "rates --theory CSL_mN --theory DP_mN",
      "forces",
      "verdict",
      "trajectory --theory GRW0 --horizon '3 s'",
      "ensemble --theory CQT_Newton --n-traj 500 --horizon '3 s'",
      "scenario --theory TD_CSL --theory CSL_mN --protocol Pino --n-traj 50 --horizon '0.5 s' "
      "--dt '1 ms'",
      "--engine grid scenario --theory GRW_mN --protocol Pino --n-traj 4 --horizon '0.1 s'",
      "sn-evolve --mass '2e9 amu'",
      "critical-mass --sigma0 '0.5 um'",
  };
  for (std::size_t c = 0; c < commands.size(); ++c) {
    for (int run = 0; run < 2; ++run) {
      const fs::path dir = root / "cli" / std::to_string(c) / std::to_string(run);
      fs::create_directories(dir);
      const std::string cmd = std::string("\"") + GRAVCAT_CLI_PATH + "\" --seed 5 --out \"" +
                              (dir / "out").string() + "\" " + commands[c] + " > \"" +
                              (dir / "stdout.txt").string() + "\"";
      o.check(std::system(cmd.c_str()) == 0, "exit status of: " + commands[c]);
    }
    files += compare_trees(root / "cli" / std::to_string(c) / "0",
                           root / "cli" / std::to_string(c) / "1", o);
  }
#endif
  o.detail << files << " files compared byte for byte ";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double budget_s;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "force formulas", 1.0, force_formulas},
      {2, "rate calculators", 1.0, rate_values},
      {3, "telegraph ensemble moments", 10.0, telegraph_engine},
      {4, "GRW hit law", 30.0, grw_hit_law},
      {5, "Schrodinger-Newton dispersion and critical mass", 900.0, schrodinger_newton},
      {6, "diffusive CSL unravelling", 60.0, diffusive_csl},
      {7, "verdict golden table", 300.0, golden_table},
      {8, "determinism", 600.0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.check(secs <= c.budget_s, "runtime budget " + std::to_string(c.budget_s) + " s");
    std::printf("ACCEPTANCE %d %s: %s | %s| %.2f s\n", c.id, o.pass ? "PASS" : "FAIL", c.title,
                o.detail.str().c_str(), secs);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu acceptance criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
