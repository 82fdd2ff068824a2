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

#include "gravcat/units.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>
#include <utility>

#include "gravcat/error.hpp"

namespace gravcat {
namespace {

struct UnitEntry {
  std::string_view symbol;
  double factor;
};

constexpr double kAmu = 1.66053906660e-27;
constexpr double kElectronVolt = 1.602176634e-19;

constexpr std::array kMassUnits = {
    UnitEntry{"kg", 1.0},     UnitEntry{"g", 1e-3},     UnitEntry{"mg", 1e-6},
    UnitEntry{"ug", 1e-9},    UnitEntry{"\xC2\xB5g", 1e-9}, UnitEntry{"ng", 1e-12},
    UnitEntry{"pg", 1e-15},   UnitEntry{"amu", kAmu},   UnitEntry{"u", kAmu},
};
constexpr std::array kLengthUnits = {
    UnitEntry{"m", 1.0},      UnitEntry{"cm", 1e-2},    UnitEntry{"mm", 1e-3},
    UnitEntry{"um", 1e-6},    UnitEntry{"\xC2\xB5m", 1e-6}, UnitEntry{"nm", 1e-9},
    UnitEntry{"pm", 1e-12},   UnitEntry{"fm", 1e-15},
};
constexpr std::array kTimeUnits = {
    UnitEntry{"s", 1.0},      UnitEntry{"ms", 1e-3},    UnitEntry{"us", 1e-6},
    UnitEntry{"\xC2\xB5s", 1e-6}, UnitEntry{"ns", 1e-9}, UnitEntry{"min", 60.0},
    UnitEntry{"h", 3600.0},
};
constexpr std::array kRateUnits = {
    UnitEntry{"1/s", 1.0},    UnitEntry{"/s", 1.0},     UnitEntry{"s^-1", 1.0},
    UnitEntry{"Hz", 1.0},     UnitEntry{"1/ms", 1e3},   UnitEntry{"kHz", 1e3},
};
constexpr std::array kDensityUnits = {
    UnitEntry{"kg/m^3", 1.0}, UnitEntry{"g/cm^3", 1e3},
};
constexpr std::array kEnergyUnits = {
    UnitEntry{"J", 1.0}, UnitEntry{"eV", kElectronVolt},
};
constexpr std::array kTemperatureUnits = {
    UnitEntry{"K", 1.0}, UnitEntry{"mK", 1e-3},
};
constexpr std::array kForceUnits = {
    UnitEntry{"N", 1.0}, UnitEntry{"zN", 1e-21},
};
constexpr std::array kVolumeRateUnits = {
    UnitEntry{"m^3/s", 1.0},
};

template <std::size_t N>
bool lookup(const std::array<UnitEntry, N>& table, std::string_view symbol, double& factor) {
  for (const auto& e : table) {
    if (e.symbol == symbol) {
      factor = e.factor;
      return true;
    }
  }
  return false;
}

template <std::size_t N>
std::string list_symbols(const std::array<UnitEntry, N>& table) {
  std::string out;
  for (const auto& e : table) {
    if (!out.empty()) out += ", ";
    out += e.symbol;
  }
  return out;
}

bool lookup_unit(Dimension dim, std::string_view symbol, double& factor, std::string& valid) {
  switch (dim) {
    case Dimension::kMass:
      valid = list_symbols(kMassUnits);
      return lookup(kMassUnits, symbol, factor);
    case Dimension::kLength:
      valid = list_symbols(kLengthUnits);
      return lookup(kLengthUnits, symbol, factor);
    case Dimension::kTime:
      valid = list_symbols(kTimeUnits);
      return lookup(kTimeUnits, symbol, factor);
    case Dimension::kRate:
      valid = list_symbols(kRateUnits);
      return lookup(kRateUnits, symbol, factor);
    case Dimension::kDensity:
      valid = list_symbols(kDensityUnits);
      return lookup(kDensityUnits, symbol, factor);
    case Dimension::kEnergy:
      valid = list_symbols(kEnergyUnits);
      return lookup(kEnergyUnits, symbol, factor);
    case Dimension::kTemperature:
      valid = list_symbols(kTemperatureUnits);
      return lookup(kTemperatureUnits, symbol, factor);
    case Dimension::kForce:
      valid = list_symbols(kForceUnits);
      return lookup(kForceUnits, symbol, factor);
    case Dimension::kVolumeRate:
      valid = list_symbols(kVolumeRateUnits);
      return lookup(kVolumeRateUnits, symbol, factor);
    case Dimension::kDimensionless:
      valid = "(none)";
      factor = 1.0;
      return symbol.empty();
  }
  return false;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string key_prefix(std::string_view key) {
  return key.empty() ? std::string{} : "'" + std::string(key) + "': ";
}

}  // namespace

std::string_view to_string(Dimension d) {
  switch (d) {
    case Dimension::kMass: return "mass";
    case Dimension::kLength: return "length";
    case Dimension::kTime: return "time";
    case Dimension::kRate: return "rate";
    case Dimension::kDensity: return "density";
    case Dimension::kEnergy: return "energy";
    case Dimension::kTemperature: return "temperature";
    case Dimension::kForce: return "force";
    case Dimension::kVolumeRate: return "volume rate";
    case Dimension::kDimensionless: return "dimensionless";
  }
  return "?";
}

std::string_view si_symbol(Dimension d) {
  switch (d) {
    case Dimension::kMass: return "kg";
    case Dimension::kLength: return "m";
    case Dimension::kTime: return "s";
    case Dimension::kRate: return "1/s";
    case Dimension::kDensity: return "kg/m^3";
    case Dimension::kEnergy: return "J";
    case Dimension::kTemperature: return "K";
    case Dimension::kForce: return "N";
    case Dimension::kVolumeRate: return "m^3/s";
    case Dimension::kDimensionless: return "";
  }
  return "";
}

double parse_quantity(std::string_view text, Dimension dim, std::string_view key) {
  const std::string_view s = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr == s.data()) {
    throw ConfigError(key_prefix(key) + "expected a number, got '" + std::string(s) + "'");
  }
  const std::string_view unit = trim(std::string_view(ptr, static_cast<std::size_t>(s.data() + s.size() - ptr)));
  if (dim != Dimension::kDimensionless && unit.empty()) {
    throw ConfigError(key_prefix(key) + "missing unit for " + std::string(to_string(dim)) +
                      " quantity '" + std::string(s) + "'");
  }
  double factor = 1.0;
  std::string valid;
  if (!lookup_unit(dim, unit, factor, valid)) {
    throw ConfigError(key_prefix(key) + "unknown " + std::string(to_string(dim)) + " unit '" +
                      std::string(unit) + "' (valid: " + valid + ")");
  }
  if (!std::isfinite(value)) {
    throw ConfigError(key_prefix(key) + "value is not finite");
  }
  return factor == 1.0 ? value : value * factor;
}

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

std::string format_quantity(double value, Dimension dim) {
  std::string out = format_double(value);
  const std::string_view sym = si_symbol(dim);
  if (!sym.empty()) {
    out += ' ';
    out += sym;
  }
  return out;
}

}  // namespace gravcat
