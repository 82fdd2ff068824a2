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

#ifndef GRAVCAT_TWO_SITE_HPP_
#define GRAVCAT_TWO_SITE_HPP_

#include <complex>
#include <cstdint>
#include <string_view>
#include <vector>

#include "gravcat/physics.hpp"
#include "gravcat/protocol.hpp"
#include "gravcat/random.hpp"
#include "gravcat/theory.hpp"

namespace gravcat {

// Site basis: |+> is the minimum at x = -L/2 and pulls the probe (at x = 0)
// with force -f0; |-> sits at +L/2 and gives +f0.
struct TwoSiteState {
  std::complex<double> c_plus{1.0, 0.0};
  std::complex<double> c_minus{0.0, 0.0};

  double p_plus() const { return std::norm(c_plus); }
  double p_minus() const { return std::norm(c_minus); }
  double norm() const { return p_plus() + p_minus(); }

  static TwoSiteState plus() { return {}; }
  static TwoSiteState minus() { return {{0.0, 0.0}, {1.0, 0.0}}; }
  // Equal-weight cat (|+> + |->)/sqrt(2).
  static TwoSiteState cat();
};

struct TwoSiteDensityMatrix {
  double rho_pp = 1.0;
  double rho_mm = 0.0;
  std::complex<double> rho_pm{0.0, 0.0};  // rho_mp is its conjugate

  double trace() const { return rho_pp + rho_mm; }
  double min_eigenvalue() const;
  static TwoSiteDensityMatrix from_state(const TwoSiteState& s);
};

enum class EventKind { Jump, Hit, Tunnel };
std::string_view to_string(EventKind kind);

struct ForceEvent {
  double time = 0.0;
  EventKind kind = EventKind::Jump;
  friend bool operator==(const ForceEvent&, const ForceEvent&) = default;
};

struct ForceRecord {
  std::vector<double> times;   // s, uniform
  std::vector<double> forces;  // N
  TheoryId theory = TheoryId::CQT_Newton;
  std::uint64_t seed = 0;
  double f0 = 0.0;             // N, force scale used by the record
  std::vector<ForceEvent> events;
  friend bool operator==(const ForceRecord&, const ForceRecord&) = default;
};

// Sample times 0, dt, ..., n dt with n = floor(horizon/dt).
std::vector<double> uniform_times(double horizon, double dt);

// Force on the probe for a two-site state, -f0 (|c+|^2 - |c-|^2).
double two_site_force(const TwoSiteState& s, double f0);

// -f0 exp(-Gamma t), starting from |+>.
double telegraph_analytic_mean(double f0, double gamma, double t);
// f0^2 exp(-Gamma |t2 - t|).
double telegraph_analytic_corr(double f0, double gamma, double t, double t2);

// Symmetric two-state Markov jump process starting at -f0 with flip rate
// Gamma/2 out of either state. Flip times are exact (event driven) and listed
// as Jump events; the force is sampled on the uniform grid. Throws
// NumericalError unless dt Gamma < 0.1.
ForceRecord telegraph_sample(double f0, double gamma, double horizon, double dt,
                             std::uint64_t seed);

// exp(-i nu sigma_1 dt) with nu an angular rate.
TwoSiteState evolve_unitary(const TwoSiteState& s, double nu, double dt);

struct JumpOutcome {
  TwoSiteState state;
  int outcome = +1;  // +1 or -1
};

// Born-rule localization onto one site.
JumpOutcome grw_jump_two_site(const TwoSiteState& s, Rng& rng);

// Off-diagonals times exp(-Lambda dt).
TwoSiteDensityMatrix dephasing_step(const TwoSiteDensityMatrix& rho, double lambda, double dt);

// One Euler-Maruyama step (Ito) of the norm-preserving diffusive collapse
// dc = -(G/8)(s3 - <s3>)^2 c dt + (sqrt(G)/2)(s3 - <s3>) c dW, renormalized.
// Throws NumericalError unless gamma dt < 0.1.
TwoSiteState csl_diffusive_step(const TwoSiteState& s, double gamma, double dt, Rng& rng);

// Composes the steps above for one theory. See the engine notes in the
// README for the per-theory rules.
ForceRecord run_two_site_trajectory(TheoryId theory, const ExperimentProtocol& p, double horizon,
                                    double dt, std::uint64_t seed,
                                    const CollapseParams& cp = default_collapse_params(),
                                    const PhysicalConstants& k = default_constants());

}  // namespace gravcat

#endif  // GRAVCAT_TWO_SITE_HPP_
