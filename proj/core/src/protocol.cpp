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

#include "gravcat/protocol.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gravcat/error.hpp"
#include "gravcat/units.hpp"

namespace gravcat {

std::string_view to_string(ProtocolName name) {
  switch (name) {
    case ProtocolName::RomeroIsart: return "RomeroIsart";
    case ProtocolName::Pino: return "Pino";
    case ProtocolName::Custom: return "Custom";
  }
  return "?";
}

ProtocolName parse_protocol_name(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (ch == '-' || ch == '_' || ch == ' ') continue;
    s += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  if (s == "romeroisart") return ProtocolName::RomeroIsart;
  if (s == "pino") return ProtocolName::Pino;
  if (s == "custom") return ProtocolName::Custom;
  throw ConfigError("unknown protocol '" + std::string(text) +
                    "' (valid: RomeroIsart, Pino, Custom)");
}

double ExperimentProtocol::probe_offset() const {
  const double d = probe_distance();
  const double half = 0.5 * cat_separation;
  return std::sqrt(std::max(0.0, d * d - half * half));
}

double probe_distance_from_offset(double offset_y, double cat_separation) {
  return std::sqrt(offset_y * offset_y + 0.25 * cat_separation * cat_separation);
}

std::vector<ProtocolViolation> validate_protocol(const ExperimentProtocol& p) {
  std::vector<ProtocolViolation> out;
  auto positive = [&](const char* field, double v) {
    if (!(v > 0.0)) out.push_back({field, "must be > 0, got " + format_double(v)});
  };
  auto non_negative = [&](const char* field, double v) {
    if (!(v >= 0.0)) out.push_back({field, "must be >= 0, got " + format_double(v)});
  };

  positive("sphere_mass", p.sphere_mass);
  positive("sphere_radius", p.sphere_radius);
  non_negative("cat_separation", p.cat_separation);
  positive("probe_mass", p.probe_mass);
  if (!(p.surface_gap >= kMinSurfaceGap)) {
    out.push_back({"surface_gap", "must be >= 1e-06 m (Casimir bound), got " +
                                      format_double(p.surface_gap) + " m"});
  }
  non_negative("tunneling_rate", p.tunneling_rate);
  positive("probe_resolution", p.probe_resolution);
  positive("coherence_time", p.coherence_time);
  non_negative("slit_width", p.slit_width);
  non_negative("probe_pointer_nucleons", p.probe_pointer_nucleons);
  non_negative("pointer_separation", p.pointer_separation);

  if (p.sphere_density) {
    const double rho = *p.sphere_density;
    if (!(rho > 0.0)) {
      out.push_back({"sphere_density", "must be > 0, got " + format_double(rho)});
    } else if (p.sphere_mass > 0.0 && p.sphere_radius > 0.0) {
      const double volume = 4.0 / 3.0 * std::numbers::pi * std::pow(p.sphere_radius, 3);
      const double implied = rho * volume;
      const double rel = std::abs(p.sphere_mass - implied) / implied;
      if (rel > 0.01) {
        out.push_back({"sphere_mass", "inconsistent with density*(4/3)pi*R^3 = " +
                                          format_double(implied) + " kg (relative mismatch " +
                                          format_double(rel) + " > 0.01)"});
      }
    }
  }
  return out;
}

const ExperimentProtocol& require_valid(const ExperimentProtocol& p) {
  const auto violations = validate_protocol(p);
  if (!violations.empty()) {
    std::string msg = "invalid protocol:";
    for (const auto& v : violations) msg += "\n  " + v.field + ": " + v.message;
    throw ConfigError(msg);
  }
  return p;
}

ExperimentProtocol preset_protocol(ProtocolName name) {
  const auto& k = default_constants();
  ExperimentProtocol p;
  p.name = name;
  p.probe_mass = 4.0e-12;  // 4.0 ng trampoline resonator
  p.surface_gap = 1e-6;
  p.tunneling_rate = 10.0;
  p.probe_resolution = 0.02;
  p.probe_pointer_nucleons = 1e20;
  p.pointer_separation = 1e-6;

  switch (name) {
    case ProtocolName::RomeroIsart:
      // Lead microsphere coupled to a qubit; mass follows from the density.
      p.sphere_radius = 2e-6;
      p.sphere_density = kLeadDensity;
      p.sphere_mass = kLeadDensity * 4.0 / 3.0 * std::numbers::pi * std::pow(p.sphere_radius, 3);
      p.cat_separation = 1e-12;
      p.coherence_time = 0.1;
      p.slit_width = 0.0;
      break;
    case ProtocolName::Pino:
      // Free expansion through a double slit, at the enlarged 1e18 amu mass.
      p.sphere_radius = 1e-6;
      p.sphere_mass = 1e18 * k.amu;
      p.cat_separation = 5e-7;
      p.coherence_time = 0.5;
      p.slit_width = 1.061e-8;
      break;
    case ProtocolName::Custom:
      throw ConfigError("protocol 'Custom' has no preset; give the fields explicitly");
  }
  return p;
}

}  // namespace gravcat
