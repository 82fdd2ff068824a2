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

#include "gravcat/orchestrator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <set>
#include <sstream>
#include <thread>

#include "gravcat/error.hpp"

namespace gravcat {

std::string_view to_string(SignalClass c) {
  switch (c) {
    case SignalClass::NetZeroForce: return "NET_ZERO_FORCE";
    case SignalClass::ConstantSingleMinimum: return "CONSTANT_SINGLE_MINIMUM";
    case SignalClass::TelegraphJumps: return "TELEGRAPH_JUMPS";
    case SignalClass::IntermittentFlashForce: return "INTERMITTENT_FLASH_FORCE";
    case SignalClass::NoForce: return "NO_FORCE";
    case SignalClass::RapidSuppressionSingleMinimum: return "RAPID_SUPPRESSION_SINGLE_MINIMUM";
  }
  return "UNKNOWN";
}

SignalClass parse_signal_class(std::string_view text) {
  for (auto c : {SignalClass::NetZeroForce, SignalClass::ConstantSingleMinimum,
                 SignalClass::TelegraphJumps, SignalClass::IntermittentFlashForce,
                 SignalClass::NoForce, SignalClass::RapidSuppressionSingleMinimum}) {
    if (to_string(c) == text) return c;
  }
  throw ConfigError("unknown signal class '" + std::string(text) + "'");
}

std::string_view to_string(Rationale r) {
  switch (r) {
    case Rationale::WidthIneffective: return "WIDTH_INEFFECTIVE";
    case Rationale::WidthEffective: return "WIDTH_EFFECTIVE";
    case Rationale::RateOutsideCoherence: return "RATE_OUTSIDE_COHERENCE";
    case Rationale::RateWithinCoherence: return "RATE_WITHIN_COHERENCE";
    case Rationale::SnTunnelingSuppressed: return "SN_TUNNELING_SUPPRESSED";
    case Rationale::TunnelingNegligible: return "TUNNELING_NEGLIGIBLE";
    case Rationale::TunnelingWithinCoherence: return "TUNNELING_WITHIN_COHERENCE";
    case Rationale::DampingFasterThanProbe: return "DAMPING_FASTER_THAN_PROBE";
    case Rationale::ProbeDrivesCollapse: return "PROBE_DRIVES_COLLAPSE";
    case Rationale::ProbeDoesNotDriveCollapse: return "PROBE_DOES_NOT_DRIVE_COLLAPSE";
    case Rationale::PointerNotOrthogonal: return "POINTER_NOT_ORTHOGONAL";
    case Rationale::NoGravitationalCoupling: return "NO_GRAVITATIONAL_COUPLING";
    case Rationale::FlashOntology: return "FLASH_ONTOLOGY";
    case Rationale::FreeExpansionBranching: return "FREE_EXPANSION_BRANCHING";
    case Rationale::EquivalentToDpMn: return "EQUIVALENT_TO_DP_mN";
    case Rationale::EquivalentToKMn: return "EQUIVALENT_TO_K_mN";
    case Rationale::EquivalentToCslMn: return "EQUIVALENT_TO_CSL_mN";
  }
  return "UNKNOWN";
}

std::string_view to_string(EngineKind e) {
  return e == EngineKind::TwoSite ? "two_site" : "grid";
}

EngineKind parse_engine(std::string_view text) {
  if (text == "two_site" || text == "two-site") return EngineKind::TwoSite;
  if (text == "grid") return EngineKind::Grid;
  throw ConfigError("unknown engine '" + std::string(text) + "' (valid: two_site, grid)");
}

namespace {

bool probe_driven_theory(TheoryId base) {
  return base == TheoryId::CQT_Newton || is_quantized_gravity(base);
}

}  // namespace

Verdict classify_verdict(TheoryId theory, const ExperimentProtocol& p, const CollapseParams& cp,
                         const PhysicalConstants& k) {
  require_valid(p);
  Verdict v;
  v.theory = theory;
  v.protocol = p.name;
  const TheoryId base = equivalent_theory(theory);
  if (theory != base) {
    v.rationale.push_back(base == TheoryId::DP_mN  ? Rationale::EquivalentToDpMn
                          : base == TheoryId::K_mN ? Rationale::EquivalentToKMn
                                                   : Rationale::EquivalentToCslMn);
  }
  if (base == TheoryId::NH) {
    v.signal_class = SignalClass::NoForce;
    v.rationale.push_back(Rationale::NoGravitationalCoupling);
    return v;
  }
  if (base == TheoryId::GRW_fN) {
    v.signal_class = SignalClass::IntermittentFlashForce;
    v.rationale.push_back(Rationale::FlashOntology);
    return v;
  }

  if (probe_driven_theory(base)) {
    if (base == TheoryId::CQT_Newton || probe_pointer_projective(p, cp, k)) {
      v.signal_class = SignalClass::TelegraphJumps;
      v.rationale.push_back(Rationale::ProbeDrivesCollapse);
    } else {
      v.signal_class = SignalClass::NetZeroForce;
      v.rationale.push_back(Rationale::PointerNotOrthogonal);
    }
    return v;
  }

  const RateReport r = rate_report(theory, p, cp, k);
  v.rationale.push_back(Rationale::ProbeDoesNotDriveCollapse);
  if (!r.collapse_effective_on_cat) {
    v.signal_class = SignalClass::NetZeroForce;
    v.rationale.push_back(Rationale::WidthIneffective);
    return v;
  }
  v.rationale.push_back(Rationale::WidthEffective);
  if (!r.hits_within_coherence) {
    v.signal_class = SignalClass::NetZeroForce;
    v.rationale.push_back(Rationale::RateOutsideCoherence);
    return v;
  }
  v.rationale.push_back(Rationale::RateWithinCoherence);

  // The cat decoheres before the probe resolves a single force sample.
  if (r.damping_time && *r.damping_time < p.probe_resolution) {
    v.signal_class = SignalClass::RapidSuppressionSingleMinimum;
    v.rationale.push_back(Rationale::DampingFasterThanProbe);
    return v;
  }

  v.signal_class = SignalClass::ConstantSingleMinimum;
  if (has_sn_self_interaction(theory)) {
    v.rationale.push_back(Rationale::SnTunnelingSuppressed);
  } else {
    // Zeno-limited hopping under continuous localization.
    const double gamma_phi = 0.5 * r.effective_cm_rate;
    const double hop = 2.0 * p.tunneling_rate * p.tunneling_rate / gamma_phi;
    if (hop * p.coherence_time < 1.0) {
      v.rationale.push_back(Rationale::TunnelingNegligible);
    } else {
      v.signal_class = SignalClass::TelegraphJumps;
      v.rationale.push_back(Rationale::TunnelingWithinCoherence);
      return v;
    }
  }
  if (p.has_slit()) {
    const double p_late = std::exp(-r.effective_cm_rate * p.coherence_time);
    v.rationale.push_back(Rationale::FreeExpansionBranching);
    v.branches.push_back({SignalClass::ConstantSingleMinimum, 1.0 - p_late});
    v.branches.push_back({SignalClass::TelegraphJumps, p_late});
  }
  return v;
}

std::vector<Verdict> verdict_table(const std::vector<ExperimentProtocol>& protocols,
                                   const std::vector<TheoryId>& theories,
                                   const CollapseParams& cp, const PhysicalConstants& k) {
  std::vector<Verdict> out;
  out.reserve(protocols.size() * theories.size());
  for (TheoryId t : theories) {
    for (const auto& p : protocols) out.push_back(classify_verdict(t, p, cp, k));
  }
  return out;
}

EnsembleStats ensemble_statistics(const std::vector<ForceRecord>& records, std::size_t n_lags,
                                  std::size_t lag_stride) {
  EnsembleStats s;
  if (records.empty()) return s;
  const std::size_t n = records.size();
  const std::size_t m = records.front().times.size();
  for (const auto& r : records) {
    if (r.forces.size() != m) throw std::invalid_argument("records differ in length");
  }
  s.times = records.front().times;
  s.mean.assign(m, 0.0);
  s.stderr_mean.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double sum = 0.0;
    for (const auto& r : records) sum += r.forces[i];
    const double mu = sum / static_cast<double>(n);
    double ss = 0.0;
    for (const auto& r : records) ss += (r.forces[i] - mu) * (r.forces[i] - mu);
    s.mean[i] = mu;
    s.stderr_mean[i] = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n))
                             : 0.0;
  }

  if (lag_stride == 0) lag_stride = std::max<std::size_t>(1, m / (4 * std::max<std::size_t>(n_lags, 1)));
  const double dt = m > 1 ? s.times[1] - s.times[0] : 0.0;
  std::vector<double> per(n);
  for (std::size_t l = 0; l < n_lags; ++l) {
    const std::size_t lag = (l + 1) * lag_stride;
    if (lag >= m) break;
    for (std::size_t j = 0; j < n; ++j) {
      const auto& f = records[j].forces;
      double acc = 0.0;
      for (std::size_t i = 0; i + lag < m; ++i) acc += f[i] * f[i + lag];
      per[j] = acc / static_cast<double>(m - lag);
    }
    double sum = 0.0;
    for (double x : per) sum += x;
    const double mu = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double x : per) ss += (x - mu) * (x - mu);
    s.lags.push_back(static_cast<double>(lag) * dt);
    s.corr.push_back(mu);
    s.corr_stderr.push_back(
        n > 1 ? std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0);
  }
  return s;
}

namespace {

enum class Level { Zero, Plus, Minus, Other };

Level level_of(double f, double f0, double tol) {
  if (std::abs(f) <= 1e-3 * f0) return Level::Zero;
  if (std::abs(f - f0) <= tol * f0) return Level::Plus;
  if (std::abs(f + f0) <= tol * f0) return Level::Minus;
  return Level::Other;
}

std::string where(std::size_t rec, std::size_t sample, std::string_view what) {
  std::ostringstream os;
  os << "record " << rec << " sample " << sample << ": " << what;
  return os.str();
}

}  // namespace

ConsistencyCheck check_records(const Verdict& verdict, const RateReport& rates,
                               const std::vector<ForceRecord>& records,
                               double level_tolerance) {
  ConsistencyCheck c;
  auto fail = [&](std::string detail) {
    c.consistent = false;
    c.detail = std::move(detail);
    return c;
  };
  bool any_flip = false;
  std::size_t flips = 0;
  double total_time = 0.0;

  for (std::size_t r = 0; r < records.size(); ++r) {
    const ForceRecord& rec = records[r];
    const double f0 = rec.f0;
    const std::size_t m = rec.forces.size();
    switch (verdict.signal_class) {
      case SignalClass::NetZeroForce:
      case SignalClass::NoForce:
        for (std::size_t i = 0; i < m; ++i) {
          if (level_of(rec.forces[i], f0, level_tolerance) != Level::Zero) {
            return fail(where(r, i, "nonzero force"));
          }
        }
        break;
      case SignalClass::RapidSuppressionSingleMinimum: {
        const Level first = level_of(rec.forces[0], f0, level_tolerance);
        if (first != Level::Plus && first != Level::Minus) {
          return fail(where(r, 0, "not localized at the first sample"));
        }
        for (std::size_t i = 1; i < m; ++i) {
          if (level_of(rec.forces[i], f0, level_tolerance) != first) return fail(where(r, i, "force changed"));
        }
        break;
      }
      case SignalClass::ConstantSingleMinimum: {
        Level held = Level::Zero;
        for (std::size_t i = 0; i < m; ++i) {
          const Level l = level_of(rec.forces[i], f0, level_tolerance);
          if (l == Level::Other) return fail(where(r, i, "force not in {0, +-f0}"));
          if (held == Level::Zero) {
            held = l;
          } else if (l != held) {
            return fail(where(r, i, "force left its minimum"));
          }
        }
        break;
      }
      case SignalClass::TelegraphJumps:
        for (std::size_t i = 0; i < m; ++i) {
          const Level l = level_of(rec.forces[i], f0, level_tolerance);
          if (l != Level::Plus && l != Level::Minus) {
            return fail(where(r, i, "telegraph force not at +-f0"));
          }
          if (i > 0 && l != level_of(rec.forces[i - 1], f0, level_tolerance)) any_flip = true;
        }
        for (const auto& e : rec.events) {
          if (e.kind == EventKind::Jump || e.kind == EventKind::Tunnel) ++flips;
        }
        total_time += rec.times.back();
        break;
      case SignalClass::IntermittentFlashForce: {
        std::set<std::size_t> flash_samples;
        const double dt = m > 1 ? rec.times[1] - rec.times[0] : 1.0;
        for (const auto& e : rec.events) {
          if (e.kind != EventKind::Hit) continue;
          const auto i = static_cast<std::size_t>(std::ceil(e.time / dt - 1e-12));
          if (i < m) flash_samples.insert(i);
        }
        for (std::size_t i = 0; i < m; ++i) {
          const Level l = level_of(rec.forces[i], f0, level_tolerance);
          if (l == Level::Other) return fail(where(r, i, "force not in {0, +-f0}"));
          if ((l != Level::Zero) != (flash_samples.count(i) > 0)) {
            return fail(where(r, i, "nonzero force away from a flash"));
          }
        }
        break;
      }
    }
  }

  if (verdict.signal_class == SignalClass::TelegraphJumps && !records.empty()) {
    if (!any_flip && flips == 0) return fail("no telegraph flip in the ensemble");
    const bool probe_driven = probe_driven_theory(equivalent_theory(verdict.theory));
    if (probe_driven && total_time > 0.0) {
      c.empirical_jump_rate = static_cast<double>(flips) / total_time;
      if (records.size() >= 1000) {
        const double ratio = *c.empirical_jump_rate / rates.effective_cm_rate;
        if (!(ratio >= 1.0 / 3.0 && ratio <= 3.0)) {
          std::ostringstream os;
          os << "empirical jump rate " << *c.empirical_jump_rate << " vs report "
             << rates.effective_cm_rate;
          return fail(os.str());
        }
      }
    }
  }
  return c;
}

ScenarioResult run_scenario(TheoryId theory, const ExperimentProtocol& p,
                            const ScenarioOptions& options, const CollapseParams& cp,
                            const PhysicalConstants& k) {
  ScenarioResult out;
  out.verdict = classify_verdict(theory, p, cp, k);
  out.rates = rate_report(theory, p, cp, k);
  const std::size_t n = options.n_traj;
  if (n == 0) return out;

  out.records.resize(n);
  if (options.engine == EngineKind::Grid) out.collapses.resize(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        const std::uint64_t s = stream_seed(options.seed, i);
        if (options.engine == EngineKind::Grid) {
          GridTrajectory g =
              grid_trajectory(theory, p, options.horizon, options.dt, s, options.grid, cp, k);
          out.records[i] = std::move(g.record);
          out.collapses[i] = std::move(g.collapses);
        } else {
          out.records[i] = run_two_site_trajectory(theory, p, options.horizon, options.dt, s, cp, k);
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  EnsembleStats stats = ensemble_statistics(out.records, options.n_lags, options.lag_stride);
  const double f0 = out.records.front().f0;
  const TheoryId base = equivalent_theory(theory);
  const SignalClass cls = out.verdict.signal_class;
  if (cls == SignalClass::TelegraphJumps && probe_driven_theory(base) &&
      options.engine == EngineKind::TwoSite) {
    const double gamma = out.rates.effective_cm_rate;
    std::vector<double> am(stats.times.size());
    for (std::size_t i = 0; i < am.size(); ++i) {
      am[i] = telegraph_analytic_mean(f0, gamma, stats.times[i]);
    }
    std::vector<double> ac(stats.lags.size());
    for (std::size_t i = 0; i < ac.size(); ++i) {
      ac[i] = telegraph_analytic_corr(f0, gamma, 0.0, stats.lags[i]);
    }
    stats.analytic_mean = std::move(am);
    stats.analytic_corr = std::move(ac);
  } else if (cls == SignalClass::NetZeroForce || cls == SignalClass::NoForce) {
    stats.analytic_mean = std::vector<double>(stats.times.size(), 0.0);
    stats.analytic_corr = std::vector<double>(stats.lags.size(), 0.0);
  }
  out.stats = std::move(stats);
  const double level_tolerance = options.engine == EngineKind::Grid ? 0.05 : 0.01;
  out.consistency = check_records(out.verdict, out.rates, out.records, level_tolerance);
  return out;
}

}  // namespace gravcat
