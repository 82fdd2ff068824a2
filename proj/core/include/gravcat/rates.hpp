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

#ifndef GRAVCAT_RATES_HPP_
#define GRAVCAT_RATES_HPP_

#include <optional>

#include "gravcat/physics.hpp"
#include "gravcat/protocol.hpp"
#include "gravcat/theory.hpp"

namespace gravcat {

// Closed-form collapse/decoherence rates and scales. Everything is SI.

// Decay constant of the probe-monitored telegraph force, nu^2 tau / 2.
double cqt_decay_rate(double tunneling_rate, double probe_resolution);

// N lambda_GRW.
double grw_rate(double n_nucleons, double lambda_grw = default_collapse_params().lambda_grw);

// lambda_CSL = gamma / (8 pi^{3/2} r_c^3).
double csl_lambda(double gamma, double r_c);

// Centre-of-mass localization rate lambda N^2 k for k clusters of N nucleons
// each within r_c (identical particles).
double csl_cm_rate(double n_per_cluster, double k_clusters, double lambda_csl);

// Diosi-Penrose damping time sqrt(pi) hbar R0 / (G m^2).
double dp_damping_time(double mass, double R0, const PhysicalConstants& k = default_constants());

// Asymptotic noise temperature hbar^2 / (8 k_B m_r R0^2) of dissipative DP.
double dp_noise_temperature(double reference_mass, double R0,
                            const PhysicalConstants& k = default_constants());
// Inverse of dp_noise_temperature: the reference mass m_r for a given T.
double dp_reference_mass(double temperature, double R0,
                         const PhysicalConstants& k = default_constants());

// Coefficient pi G^2 m^2 |x1 - x2| / (2 gamma) damping the off-diagonal
// density-matrix element through gravitational back-action (TD-CSL).
double td_csl_backaction_damping(double mass, double separation, double gamma,
                                 const PhysicalConstants& k = default_constants());

struct TdDpDamping {
  double time = 0.0;               // s, half the DP damping time
  bool dissipative_valid = false;  // mass >= dissipative reference mass
};

// TD-DP doubles the DP decoherence term, halving the damping time. The
// dissipative correction is only trusted above m_r (from the DP noise
// temperature in `cp`).
TdDpDamping td_dp_damping_time(double mass, double R0,
                               const CollapseParams& cp = default_collapse_params(),
                               const PhysicalConstants& k = default_constants());

// Karolyhazy critical width. Elementary: (L/L_p)^2 L. Macroscopic body of
// size R: (R/L_p)^{2/3} L. L = hbar/(m c) in both.
double k_critical_width(double mass, double radius, bool macroscopic,
                        const PhysicalConstants& k = default_constants());

// Karolyhazy critical time m a_c^2 / hbar.
double k_critical_time(double mass, double critical_width,
                       const PhysicalConstants& k = default_constants());

enum class PointerBody { Probe, Other };

struct PointerCheck {
  bool projective = false;
  double kinematic_deflection = 0.0;    // m
  double pointer_separation_used = 0.0; // m
};

// Whether correlated pointer states of `body` are separated by more than
// sigma_GRW. For the probe the protocol's declared pointer separation is used;
// for any other body the split is twice the rigid-body deflection
// f0 t^2 / (2 M).
PointerCheck pointer_orthogonality(const ExperimentProtocol& p, double pointer_mass, double f0,
                                   double interaction_time, PointerBody body,
                                   const CollapseParams& cp = default_collapse_params());

// pointer_orthogonality for the protocol's own probe over one resolution time.
bool probe_pointer_projective(const ExperimentProtocol& p,
                              const CollapseParams& cp = default_collapse_params(),
                              const PhysicalConstants& k = default_constants());

// (N_probe + N_sphere) lambda_GRW.
double probe_collapse_rate(double n_pointer_nucleons, double n_sphere_nucleons,
                           double lambda_grw = default_collapse_params().lambda_grw);

// Nucleon count of a square wafer (thickness x width x width).
double wafer_nucleon_estimate(double thickness, double width, double density,
                              const PhysicalConstants& k = default_constants());

struct RateReport {
  TheoryId theory = TheoryId::CQT_Newton;
  double intrinsic_rate = 0.0;            // s^-1
  double effective_cm_rate = 0.0;         // s^-1
  std::optional<double> collapse_width;   // m
  std::optional<double> damping_time;     // s
  bool hits_within_coherence = false;
  bool collapse_effective_on_cat = false;
};

RateReport rate_report(TheoryId theory, const ExperimentProtocol& p,
                       const CollapseParams& cp = default_collapse_params(),
                       const PhysicalConstants& k = default_constants());

}  // namespace gravcat

#endif  // GRAVCAT_RATES_HPP_
