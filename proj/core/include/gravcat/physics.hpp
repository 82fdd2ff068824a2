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

#ifndef GRAVCAT_PHYSICS_HPP_
#define GRAVCAT_PHYSICS_HPP_

#include <string>
#include <vector>

namespace gravcat {

// SI values. Rescaled-unit runs may override any of them, but all must stay
// strictly positive.
struct PhysicalConstants {
  double G = 6.67430e-11;             // m^3 kg^-1 s^-2
  double hbar = 1.054571817e-34;      // J s
  double c = 299792458.0;             // m s^-1
  double k_B = 1.380649e-23;          // J K^-1
  double m_nucleon = 1.67262192369e-27;  // kg
  double L_planck = 1.616255e-35;     // m
  double amu = 1.66053906660e-27;     // kg

  // Names of non-positive fields; empty when valid.
  std::vector<std::string> invalid_fields() const;
  friend bool operator==(const PhysicalConstants&, const PhysicalConstants&) = default;
};

// Fundamental constants of the collapse models. Defaults are the commonly
// quoted values for GRW, CSL, Diosi-Penrose and Tilloy-Diosi.
struct CollapseParams {
  double lambda_grw = 1e-16;      // s^-1, per nucleon
  double sigma_grw = 1e-7;        // m
  double gamma_csl = 1e-36;       // m^3 s^-1
  double r_c = 1e-7;              // m
  double gamma_td_csl = 1e-24;    // SI; pi G^2 m^2 d / (2 gamma) is a rate
  double sigma_td_csl = 1e-7;     // m
  double sigma_td_dp = 1e-15;     // m
  double R0_dp = 1e-15;           // m
  double kappa_td = 2.0;
  double dp_noise_temperature = 1.0;  // K, fixes the dissipative DP reference mass

  std::vector<std::string> invalid_fields() const;
  friend bool operator==(const CollapseParams&, const CollapseParams&) = default;
};

inline const PhysicalConstants& default_constants() {
  static const PhysicalConstants k{};
  return k;
}

inline const CollapseParams& default_collapse_params() {
  static const CollapseParams k{};
  return k;
}

// Material densities used by the presets (kg m^-3).
inline constexpr double kLeadDensity = 11340.0;
inline constexpr double kTantalumDensity = 16700.0;

}  // namespace gravcat

#endif  // GRAVCAT_PHYSICS_HPP_
