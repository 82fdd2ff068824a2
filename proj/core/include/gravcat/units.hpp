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

#ifndef GRAVCAT_UNITS_HPP_
#define GRAVCAT_UNITS_HPP_

#include <string>
#include <string_view>

namespace gravcat {

enum class Dimension {
  kMass,
  kLength,
  kTime,
  kRate,
  kDensity,
  kEnergy,
  kTemperature,
  kForce,
  kVolumeRate,  // m^3 s^-1
  kDimensionless,
};

std::string_view to_string(Dimension d);

// SI unit symbol used when writing quantities back out.
std::string_view si_symbol(Dimension d);

// Parses "<number> <unit>" into SI. The unit is mandatory for every dimension
// except kDimensionless. Throws ConfigError naming `key` on failure.
double parse_quantity(std::string_view text, Dimension dim, std::string_view key = {});

// "<value> <si symbol>" with 17 significant digits; parse_quantity inverts it
// exactly.
std::string format_quantity(double value, Dimension dim);

// Shortest decimal string with 17 significant digits.
std::string format_double(double value);

}  // namespace gravcat

#endif  // GRAVCAT_UNITS_HPP_
