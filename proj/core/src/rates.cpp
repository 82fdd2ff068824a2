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

#include "gravcat/rates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gravcat/force_model.hpp"

namespace gravcat {

double cqt_decay_rate(double tunneling_rate, double probe_resolution) {
  if (tunneling_rate < 0.0 || probe_resolution < 0.0) {
    throw std::invalid_argument("cqt_decay_rate: arguments must be >= 0");
  }
  return 0.5 * tunneling_rate * tunneling_rate * probe_resolution;
}

double grw_rate(double n_nucleons, double lambda_grw) {
  if (n_nucleons < 0.0) throw std::invalid_argument("grw_rate: N must be >= 0");
  return n_nucleons * lambda_grw;
}

double csl_lambda(double gamma, double r_c) {
  if (!(r_c > 0.0)) throw std::invalid_argument("csl_lambda: r_c must be > 0");
  return gamma / (8.0 * std::pow(std::numbers::pi, 1.5) * r_c * r_c * r_c);
}

double csl_cm_rate(double n_per_cluster, double k_clusters, double lambda_csl) {
  return lambda_csl * n_per_cluster * n_per_cluster * k_clusters;
}

double dp_damping_time(double mass, double R0, const PhysicalConstants& k) {
  if (!(mass > 0.0)) throw std::invalid_argument("dp_damping_time: mass must be > 0");
  return std::sqrt(std::numbers::pi) * k.hbar * R0 / (k.G * mass * mass);
}

double dp_noise_temperature(double reference_mass, double R0, const PhysicalConstants& k) {
  return k.hbar * k.hbar / (8.0 * k.k_B * reference_mass * R0 * R0);
}

double dp_reference_mass(double temperature, double R0, const PhysicalConstants& k) {
  return k.hbar * k.hbar / (8.0 * k.k_B * temperature * R0 * R0);
}

double td_csl_backaction_damping(double mass, double separation, double gamma,
                                 const PhysicalConstants& k) {
  return std::numbers::pi * k.G * k.G * mass * mass * separation / (2.0 * gamma);
}

TdDpDamping td_dp_damping_time(double mass, double R0, const CollapseParams& cp,
                               const PhysicalConstants& k) {
  TdDpDamping out;
  out.time = 0.5 * dp_damping_time(mass, R0, k);
  out.dissipative_valid = mass >= dp_reference_mass(cp.dp_noise_temperature, R0, k);
  return out;
}

double k_critical_width(double mass, double radius, bool macroscopic,
                        const PhysicalConstants& k) {
  if (!(mass > 0.0)) throw std::invalid_argument("k_critical_width: mass must be > 0");
  const double compton = k.hbar / (mass * k.c);
  if (macroscopic) {
    return std::cbrt(std::pow(radius / k.L_planck, 2)) * compton;
  }
  const double ratio = compton / k.L_planck;
  return ratio * ratio * compton;
}

double k_critical_time(double mass, double critical_width, const PhysicalConstants& k) {
  return mass * critical_width * critical_width / k.hbar;
}

PointerCheck pointer_orthogonality(const ExperimentProtocol& p, double pointer_mass, double f0,
                                   double interaction_time, PointerBody body,
                                   const CollapseParams& cp) {
  if (!(pointer_mass > 0.0)) {
    throw std::invalid_argument("pointer_orthogonality: pointer mass must be > 0");
  }
  PointerCheck out;
  out.kinematic_deflection = f0 * interaction_time * interaction_time / (2.0 * pointer_mass);
  out.pointer_separation_used =
      body == PointerBody::Probe ? p.pointer_separation : 2.0 * out.kinematic_deflection;
  out.projective = out.pointer_separation_used > cp.sigma_grw;
  return out;
}

double probe_collapse_rate(double n_pointer_nucleons, double n_sphere_nucleons,
                           double lambda_grw) {
  return (n_pointer_nucleons + n_sphere_nucleons) * lambda_grw;
}

double wafer_nucleon_estimate(double thickness, double width, double density,
                              const PhysicalConstants& k) {
  return density * thickness * width * width / k.m_nucleon;
}

bool probe_pointer_projective(const ExperimentProtocol& p, const CollapseParams& cp,
                              const PhysicalConstants& k) {
  const double f0 = point_force(p.sphere_mass, p.probe_mass, p.cat_separation,
                                p.probe_distance(), k);
  return pointer_orthogonality(p, p.probe_mass, f0, p.probe_resolution, PointerBody::Probe, cp)
      .projective;
}

RateReport rate_report(TheoryId theory, const ExperimentProtocol& p, const CollapseParams& cp,
                       const PhysicalConstants& k) {
  RateReport r;
  r.theory = theory;
  const double n = p.sphere_nucleons(k);
  const double m = p.sphere_mass;
  const double lambda_csl = csl_lambda(cp.gamma_csl, cp.r_c);

  // With an orthogonal pointer the probe collapses the cat at (N_probe +
  // N_sphere) lambda_GRW, but the observable switching cannot outrun the
  // probe-limited telegraph rate.
  auto probe_driven = [&](double intrinsic) {
    if (!probe_pointer_projective(p, cp, k)) return intrinsic;
    return std::min(cqt_decay_rate(p.tunneling_rate, p.probe_resolution),
                    probe_collapse_rate(p.probe_pointer_nucleons, n, cp.lambda_grw));
  };

  switch (equivalent_theory(theory)) {
    case TheoryId::CQT_Newton:
      r.intrinsic_rate = 0.0;
      r.effective_cm_rate = cqt_decay_rate(p.tunneling_rate, p.probe_resolution);
      break;
    case TheoryId::GRW_mN:
    case TheoryId::GRW_fN:
      r.intrinsic_rate = cp.lambda_grw;
      r.effective_cm_rate = grw_rate(n, cp.lambda_grw);
      r.collapse_width = cp.sigma_grw;
      break;
    case TheoryId::CSL_mN:
      r.intrinsic_rate = lambda_csl;
      r.effective_cm_rate = csl_cm_rate(n, 1.0, lambda_csl);
      r.collapse_width = cp.r_c;
      break;
    case TheoryId::TD_CSL: {
      r.intrinsic_rate = lambda_csl;
      r.effective_cm_rate = csl_cm_rate(n, 1.0, lambda_csl);
      r.collapse_width = cp.sigma_td_csl;
      const double back = td_csl_backaction_damping(m, p.cat_separation, cp.gamma_td_csl, k);
      if (back > 0.0) r.damping_time = 1.0 / back;
      break;
    }
    case TheoryId::DP_mN: {
      const double tau = dp_damping_time(m, cp.R0_dp, k);
      r.intrinsic_rate = 1.0 / tau;
      r.effective_cm_rate = 1.0 / tau;
      r.collapse_width = cp.R0_dp;
      r.damping_time = tau;
      break;
    }
    case TheoryId::TD_DP: {
      const double tau = td_dp_damping_time(m, cp.sigma_td_dp, cp, k).time;
      r.intrinsic_rate = 1.0 / tau;
      r.effective_cm_rate = 1.0 / tau;
      r.collapse_width = cp.sigma_td_dp;
      r.damping_time = tau;
      break;
    }
    case TheoryId::K_mN: {
      const double a_c = k_critical_width(m, p.sphere_radius, true, k);
      r.intrinsic_rate = 1.0 / k_critical_time(m, a_c, k);
      r.effective_cm_rate = r.intrinsic_rate;
      r.collapse_width = a_c;
      break;
    }
    case TheoryId::GRW0:
      r.intrinsic_rate = grw_rate(n, cp.lambda_grw);
      r.effective_cm_rate = probe_driven(r.intrinsic_rate);
      r.collapse_width = cp.sigma_grw;
      break;
    case TheoryId::CSL0:
      r.intrinsic_rate = csl_cm_rate(n, 1.0, lambda_csl);
      r.effective_cm_rate = probe_driven(r.intrinsic_rate);
      r.collapse_width = cp.r_c;
      break;
    case TheoryId::DP0:
      r.damping_time = dp_damping_time(m, cp.R0_dp, k);
      r.intrinsic_rate = 1.0 / *r.damping_time;
      r.effective_cm_rate = probe_driven(r.intrinsic_rate);
      r.collapse_width = cp.R0_dp;
      break;
    case TheoryId::K0: {
      const double a_c = k_critical_width(m, p.sphere_radius, true, k);
      r.intrinsic_rate = 1.0 / k_critical_time(m, a_c, k);
      r.effective_cm_rate = probe_driven(r.intrinsic_rate);
      r.collapse_width = a_c;
      break;
    }
    case TheoryId::NH:
    default:
      break;
  }

  r.hits_within_coherence = r.effective_cm_rate * p.coherence_time >= 1.0;
  r.collapse_effective_on_cat = r.collapse_width ? p.cat_separation > *r.collapse_width
                                                 : r.effective_cm_rate > 0.0;
  return r;
}

}  // namespace gravcat
