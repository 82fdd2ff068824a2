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

#ifndef GRAVCAT_PROTOCOL_HPP_
#define GRAVCAT_PROTOCOL_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gravcat/physics.hpp"

namespace gravcat {

enum class ProtocolName { RomeroIsart, Pino, Custom };

std::string_view to_string(ProtocolName name);
// Accepts the canonical names plus the lower-case/kebab spellings used in
// config files ("romero-isart", "pino", "custom"). Throws ConfigError.
ProtocolName parse_protocol_name(std::string_view text);

// One cat-state preparation plus the probe arrangement. All SI.
struct ExperimentProtocol {
  ProtocolName name = ProtocolName::Custom;
  double sphere_mass = 0.0;                 // kg
  double sphere_radius = 0.0;               // m
  std::optional<double> sphere_density;     // kg m^-3
  double cat_separation = 0.0;              // L, m
  double probe_mass = 0.0;                  // kg
  double surface_gap = 0.0;                 // a, m
  double tunneling_rate = 0.0;              // nu, angular, s^-1
  double probe_resolution = 0.0;            // tau, s
  double coherence_time = 0.0;              // s
  double slit_width = 0.0;                  // m; zero when the protocol has no slit
  double probe_pointer_nucleons = 1e20;
  double pointer_separation = 1e-6;         // m, probe deflection split

  // D = R + a.
  double probe_distance() const { return sphere_radius + surface_gap; }
  // Transverse offset y of the probe so that sqrt(y^2 + L^2/4) = R + a.
  double probe_offset() const;
  double sphere_nucleons(const PhysicalConstants& k = default_constants()) const {
    return sphere_mass / k.m_nucleon;
  }
  // True for free-expansion protocols where the cat forms after a slit passage.
  bool has_slit() const { return slit_width > 0.0; }

  friend bool operator==(const ExperimentProtocol&, const ExperimentProtocol&) = default;
};

// D = sqrt(y^2 + L^2/4).
double probe_distance_from_offset(double offset_y, double cat_separation);

struct ProtocolViolation {
  std::string field;
  std::string message;
};

// Lower bound on the sphere-probe surface gap (Casimir forces).
inline constexpr double kMinSurfaceGap = 1e-6;

std::vector<ProtocolViolation> validate_protocol(const ExperimentProtocol& p);

// Throws ConfigError listing every violation.
const ExperimentProtocol& require_valid(const ExperimentProtocol& p);

// Throws ConfigError for Custom (no preset exists).
ExperimentProtocol preset_protocol(ProtocolName name);

}  // namespace gravcat

#endif  // GRAVCAT_PROTOCOL_HPP_
