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

#include "gravcat/two_site.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "gravcat/error.hpp"
#include "gravcat/force_model.hpp"
#include "gravcat/rates.hpp"

namespace gravcat {

TwoSiteState TwoSiteState::cat() {
  const double h = 1.0 / std::sqrt(2.0);
  return {{h, 0.0}, {h, 0.0}};
}

double TwoSiteDensityMatrix::min_eigenvalue() const {
  const double half_tr = 0.5 * trace();
  const double half_diff = 0.5 * (rho_pp - rho_mm);
  return half_tr - std::sqrt(half_diff * half_diff + std::norm(rho_pm));
}

TwoSiteDensityMatrix TwoSiteDensityMatrix::from_state(const TwoSiteState& s) {
  return {s.p_plus(), s.p_minus(), s.c_plus * std::conj(s.c_minus)};
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Jump: return "jump";
    case EventKind::Hit: return "hit";
    case EventKind::Tunnel: return "tunnel";
  }
  return "unknown";
}

std::vector<double> uniform_times(double horizon, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  if (horizon < 0.0) throw std::invalid_argument("horizon must be >= 0");
  const auto n = static_cast<std::size_t>(std::floor(horizon / dt * (1.0 + 1e-12)));
  std::vector<double> t(n + 1);
  for (std::size_t i = 0; i <= n; ++i) t[i] = static_cast<double>(i) * dt;
  return t;
}

double two_site_force(const TwoSiteState& s, double f0) {
  return -f0 * (s.p_plus() - s.p_minus());
}

double telegraph_analytic_mean(double f0, double gamma, double t) {
  return -f0 * std::exp(-gamma * t);
}

double telegraph_analytic_corr(double f0, double gamma, double t, double t2) {
  return f0 * f0 * std::exp(-gamma * std::abs(t2 - t));
}

ForceRecord telegraph_sample(double f0, double gamma, double horizon, double dt,
                             std::uint64_t seed) {
  if (gamma < 0.0) throw std::invalid_argument("telegraph_sample: Gamma must be >= 0");
  if (!(dt * gamma < 0.1)) {
    throw NumericalError("telegraph_sample: dt*Gamma = " + std::to_string(dt * gamma) +
                         " violates the resolution bound 0.1");
  }
  ForceRecord rec;
  rec.times = uniform_times(horizon, dt);
  rec.forces.resize(rec.times.size());
  rec.seed = seed;
  rec.f0 = f0;
  Rng rng = make_rng(seed);
  const double flip_rate = 0.5 * gamma;
  double sign = -1.0;
  double next = poisson_next_event(flip_rate, rng);
  for (std::size_t i = 0; i < rec.times.size(); ++i) {
    while (next <= rec.times[i]) {
      sign = -sign;
      rec.events.push_back({next, EventKind::Jump});
      next += poisson_next_event(flip_rate, rng);
    }
    rec.forces[i] = sign * f0;
  }
  return rec;
}

TwoSiteState evolve_unitary(const TwoSiteState& s, double nu, double dt) {
  const double c = std::cos(nu * dt);
  const std::complex<double> mis(0.0, -std::sin(nu * dt));
  return {c * s.c_plus + mis * s.c_minus, mis * s.c_plus + c * s.c_minus};
}

JumpOutcome grw_jump_two_site(const TwoSiteState& s, Rng& rng) {
  const double pp = s.p_plus() / s.norm();
  if (uniform01(rng) < pp) return {TwoSiteState::plus(), +1};
  return {TwoSiteState::minus(), -1};
}

TwoSiteDensityMatrix dephasing_step(const TwoSiteDensityMatrix& rho, double lambda, double dt) {
  TwoSiteDensityMatrix out = rho;
  out.rho_pm *= std::exp(-lambda * dt);
  return out;
}

TwoSiteState csl_diffusive_step(const TwoSiteState& s, double gamma, double dt, Rng& rng) {
  if (gamma == 0.0) return s;
  if (!(gamma * dt < 0.1)) {
    throw NumericalError("csl_diffusive_step: Gamma*dt = " + std::to_string(gamma * dt) +
                         " violates the step bound 0.1");
  }
  // sigma_3 eigenvalues are +1 on |+>, -1 on |->; q and p are the shifted
  // eigenvalues (s3 - <s3>)/2 on each site.
  const double z = s.p_plus() - s.p_minus();
  const double q = 0.5 * (1.0 - z);
  const double p = 0.5 * (-1.0 - z);
  const double dw = std::normal_distribution<double>(0.0, std::sqrt(dt))(rng);
  const double sg = std::sqrt(gamma);
  TwoSiteState out{s.c_plus * (1.0 - 0.5 * gamma * q * q * dt + sg * q * dw),
                   s.c_minus * (1.0 - 0.5 * gamma * p * p * dt + sg * p * dw)};
  const double n = std::sqrt(out.norm());
  out.c_plus /= n;
  out.c_minus /= n;
  return out;
}

namespace {

enum class Mode { Zero, Telegraph, Jump, Flash, Diffusive, Dephasing };

// Output steps per unit rate above which a collapse completes within one
// sample and is resolved at once by the Born rule.
constexpr double kStiffRateDt = 0.1;
// Populations closer than this to a site count as localized.
constexpr double kLocalizedTolerance = 1e-3;

bool localized(const TwoSiteState& s) {
  return std::min(s.p_plus(), s.p_minus()) < kLocalizedTolerance;
}

struct Engine {
  ForceRecord rec;
  TwoSiteState state = TwoSiteState::cat();
  double nu = 0.0;
  bool freeze_after_collapse = false;
  bool collapsed = false;
  Rng rng;

  explicit Engine(std::uint64_t seed) : rng(make_rng(seed)) {}

  void localize(double t, EventKind kind) {
    state = grw_jump_two_site(state, rng).state;
    mark_collapsed(t, kind);
  }
  void mark_collapsed(double t, EventKind kind) {
    rec.events.push_back({t, kind});
    if (!collapsed && freeze_after_collapse) nu = 0.0;
    collapsed = true;
  }
};

Mode mode_for(TheoryId theory) {
  switch (equivalent_theory(theory)) {
    case TheoryId::NH: return Mode::Zero;
    case TheoryId::CQT_Newton:
    case TheoryId::GRW0:
    case TheoryId::CSL0:
    case TheoryId::DP0:
    case TheoryId::K0: return Mode::Telegraph;
    case TheoryId::GRW_mN:
    case TheoryId::K_mN: return Mode::Jump;
    case TheoryId::GRW_fN: return Mode::Flash;
    case TheoryId::CSL_mN:
    case TheoryId::TD_CSL: return Mode::Diffusive;
    case TheoryId::DP_mN:
    case TheoryId::TD_DP: return Mode::Dephasing;
    default: return Mode::Zero;
  }
}

// Off-diagonal decay rate of the collapse mechanism, for the Zeno tunneling
// rate 2 nu^2 / gamma_phi.
double dephasing_rate(Mode mode, double rate) {
  return mode == Mode::Diffusive ? 0.5 * rate : rate;
}

}  // namespace

ForceRecord run_two_site_trajectory(TheoryId theory, const ExperimentProtocol& p, double horizon,
                                    double dt, std::uint64_t seed, const CollapseParams& cp,
                                    const PhysicalConstants& k) {
  require_valid(p);
  const double f0 = point_force(p.sphere_mass, p.probe_mass, p.cat_separation,
                                p.probe_distance(), k);
  const RateReport report = rate_report(theory, p, cp, k);
  const Mode mode = mode_for(theory);
  const double rate = report.effective_cm_rate;

  if (mode == Mode::Telegraph) {
    const bool probe_driven = equivalent_theory(theory) == TheoryId::CQT_Newton ||
                              probe_pointer_projective(p, cp, k);
    ForceRecord rec = probe_driven ? telegraph_sample(f0, rate, horizon, dt, seed)
                                   : telegraph_sample(0.0, 0.0, horizon, dt, seed);
    rec.theory = theory;
    rec.f0 = f0;
    if (!probe_driven) std::fill(rec.forces.begin(), rec.forces.end(), 0.0);
    return rec;
  }

  Engine e(seed);
  e.rec.times = uniform_times(horizon, dt);
  e.rec.forces.assign(e.rec.times.size(), 0.0);
  e.rec.theory = theory;
  e.rec.seed = seed;
  e.rec.f0 = f0;
  if (mode == Mode::Zero) return e.rec;

  const std::vector<double>& times = e.rec.times;
  const double t_end = times.back();
  const bool effective = report.collapse_effective_on_cat;
  const bool keeps_tunneling =
      equivalent_theory(theory) == TheoryId::TD_CSL || equivalent_theory(theory) == TheoryId::TD_DP;
  e.nu = p.tunneling_rate;
  e.freeze_after_collapse = has_sn_self_interaction(theory);

  if (mode == Mode::Flash) {
    double t = 0.0;
    double next = poisson_next_event(rate, e.rng);
    while (next <= t_end) {
      e.state = evolve_unitary(e.state, e.nu, next - t);
      t = next;
      const JumpOutcome o = grw_jump_two_site(e.state, e.rng);
      if (effective) e.state = o.state;
      e.rec.events.push_back({t, EventKind::Hit});
      const auto i = static_cast<std::size_t>(std::ceil(t / dt - 1e-12));
      if (i < times.size()) e.rec.forces[i] = o.outcome > 0 ? -f0 : f0;
      next += poisson_next_event(rate, e.rng);
    }
    return e.rec;
  }

  const bool stiff = rate * dt >= kStiffRateDt;
  // Free-expansion protocols: the collapse process runs during the
  // coherence_time preparation before the record starts.
  if (effective && p.has_slit()) {
    bool resolved = stiff;
    if (!resolved && mode == Mode::Diffusive) {
      resolved = rate * p.coherence_time >= 50.0;
    } else if (!resolved) {
      resolved = poisson_next_event(rate, e.rng) < p.coherence_time;
    }
    if (resolved) {
      e.localize(0.0, mode == Mode::Jump ? EventKind::Hit : EventKind::Jump);
    } else if (mode == Mode::Diffusive) {
      const double steps = std::ceil(p.coherence_time * rate / 0.01);
      const double h = p.coherence_time / steps;
      for (double s = 0; s < steps; ++s) e.state = csl_diffusive_step(e.state, rate, h, e.rng);
      if (localized(e.state)) e.mark_collapsed(0.0, EventKind::Jump);
    }
  } else if (effective && stiff) {
    e.localize(0.0, mode == Mode::Jump ? EventKind::Hit : EventKind::Jump);
  }

  // Zeno-limited hopping once the collapse outpaces the output grid.
  const double zeno_rate =
      keeps_tunneling && stiff && effective
          ? 2.0 * p.tunneling_rate * p.tunneling_rate / dephasing_rate(mode, rate)
          : 0.0;
  if (keeps_tunneling && stiff && effective) e.nu = 0.0;

  const double inf = std::numeric_limits<double>::infinity();
  const bool discrete = mode == Mode::Jump || mode == Mode::Dephasing;
  // Stiff collapses are resolved above; later ones only re-select the occupied
  // site (or, width-ineffective, do nothing).
  double next_collapse =
      discrete && !stiff ? poisson_next_event(rate, e.rng) : inf;
  double next_tunnel = poisson_next_event(zeno_rate, e.rng);
  const EventKind collapse_kind = mode == Mode::Jump ? EventKind::Hit : EventKind::Jump;

  double t = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (mode == Mode::Diffusive && i > 0 && effective && !stiff && rate > 0.0) {
      const double steps = std::ceil(dt * rate / 0.01);
      const double h = dt / steps;
      for (double s = 0; s < steps; ++s) {
        e.state = evolve_unitary(e.state, e.nu, h);
        e.state = csl_diffusive_step(e.state, rate, h, e.rng);
        t += h;
        if (!e.collapsed && localized(e.state)) e.mark_collapsed(t, EventKind::Jump);
      }
      t = times[i];
    }
    for (;;) {
      const double next = std::min(next_collapse, next_tunnel);
      if (next > times[i]) break;
      e.state = evolve_unitary(e.state, e.nu, next - t);
      t = next;
      if (next_collapse <= next_tunnel) {
        if (effective) {
          e.localize(t, collapse_kind);
        } else {
          e.rec.events.push_back({t, collapse_kind});
        }
        next_collapse += poisson_next_event(rate, e.rng);
      } else {
        std::swap(e.state.c_plus, e.state.c_minus);
        e.rec.events.push_back({t, EventKind::Tunnel});
        next_tunnel += poisson_next_event(zeno_rate, e.rng);
      }
    }
    if (t < times[i]) {
      e.state = evolve_unitary(e.state, e.nu, times[i] - t);
      t = times[i];
    }
    e.rec.forces[i] = two_site_force(e.state, f0);
  }
  return e.rec;
}

}  // namespace gravcat
