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

#ifndef GRAVCAT_RADIAL_SN_HPP_
#define GRAVCAT_RADIAL_SN_HPP_

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "gravcat/physics.hpp"

namespace gravcat {

// Spherically symmetric state on r_j = (j + 1) dr, j = 0..n-1, with a hard
// wall at r_max = (n + 1) dr. u = r psi in m^{-1/2}; 4 pi integral |u|^2 dr = 1.
struct RadialState {
  double dr = 0.0;  // m
  std::vector<std::complex<double>> u;
  double mass = 0.0;  // kg

  std::size_t size() const { return u.size(); }
  double r(std::size_t j) const { return dr * static_cast<double>(j + 1); }
  double r_max() const { return dr * static_cast<double>(u.size() + 1); }
  double norm() const;
  // sqrt(<r^2>).
  double rms_radius() const;
  double probability_beyond(double radius) const;
};

// Gaussian with |psi|^2 proportional to exp(-r^2 / (2 sigma0^2)) (per-axis
// standard deviation sigma0, rms radius sqrt(3) sigma0). n + 1 should be a
// power of two for fast sine transforms.
RadialState make_radial_gaussian(double mass, double sigma0, double r_max, std::size_t n);

// G m^3 sigma0 / hbar^2: the self-gravity strength in units where length is
// sigma0 and time is m sigma0^2 / hbar.
double sn_coupling(double mass, double sigma0, double G_eff,
                   const PhysicalConstants& k = default_constants());

// Analytic free rms radius sqrt(3) sigma0 sqrt(1 + (hbar t / (2 m sigma0^2))^2).
double free_rms_radius(double mass, double sigma0, double t,
                       const PhysicalConstants& k = default_constants());

// Newtonian self-potential energy per particle, V(r) = -G m^2 [(1/r)
// integral_0^r 4 pi r'^2 |psi|^2 dr' + integral_r^rmax 4 pi r' |psi|^2 dr'], in J.
std::vector<double> sn_potential(const RadialState& s, double G_eff);

// Kinetic plus half the self-gravitational energy, in J.
double sn_energy(const RadialState& s, double G_eff,
                 const PhysicalConstants& k = default_constants());

struct SnSeries {
  RadialState state;
  std::vector<double> times;   // s
  std::vector<double> widths;  // rms radius, m
};

// n_steps Strang steps (half kinetic, potential, half kinetic) of size dt.
// The kinetic step is exact in the sine basis. Throws NumericalError if the
// potential phase per step reaches 0.1 rad, the norm drifts by more than
// 1e-6, or more than 1e-4 of the probability sits beyond 0.9 r_max. The
// width is recorded every `record_every` steps (and at t = 0).
SnSeries sn_evolve_radial(const RadialState& state, double G_eff, double dt, std::size_t n_steps,
                          std::size_t record_every = 1,
                          const PhysicalConstants& k = default_constants());

// Same stepping over `duration` with the step chosen each time so that the
// potential phase stays below 0.1 rad and no step exceeds
// duration / n_samples; widths are recorded at n_samples + 1 equally spaced
// times.
SnSeries sn_evolve_for(const RadialState& state, double G_eff, double duration,
                       std::size_t n_samples, const PhysicalConstants& k = default_constants());

struct SnBudget {
  // Run length in units of the initial dynamical time, the shorter of the
  // dispersion time 2 m sigma0^2 / hbar and the free-fall time
  // sqrt(sigma0^3 / (G m)), unless an absolute horizon (s) is given. Runs
  // much longer than the free-fall time see the post-collapse rebound and the
  // outgoing tail, which make the width slope non-monotonic in mass.
  double horizon_dynamical_times = 0.5;
  std::optional<double> horizon;
  double r_max_over_sigma = 40.0;
  std::size_t n_points = 4095;
  std::size_t n_samples = 400;
  double bracket_ratio = 2.0;
  std::optional<double> G_eff;  // defaults to the Newton constant
  friend bool operator==(const SnBudget&, const SnBudget&) = default;
};

// Initial dynamical time described in SnBudget, in s.
double sn_dynamical_time(double mass, double sigma0, double G_eff,
                         const PhysicalConstants& k = default_constants());

// Mean d(width)/dt over the final quarter of a run (m/s); negative means the
// packet is contracting.
double sn_final_quarter_slope(double mass, double sigma0, const SnBudget& budget,
                              const PhysicalConstants& k = default_constants());

struct CriticalMassResult {
  bool found = false;  // false: no collapse up to mass_hi (e.g. G = 0)
  double mass_lo = 0.0;  // kg, disperses
  double mass_hi = 0.0;  // kg, contracts
  std::size_t evaluations = 0;
};

// Log-space bisection on the sign of sn_final_quarter_slope until
// mass_hi / mass_lo <= budget.bracket_ratio. Throws std::invalid_argument if
// mass_lo already contracts.
CriticalMassResult detect_critical_mass(double sigma0, double mass_lo, double mass_hi,
                                        const SnBudget& budget = {},
                                        const PhysicalConstants& k = default_constants());

}  // namespace gravcat

#endif  // GRAVCAT_RADIAL_SN_HPP_
