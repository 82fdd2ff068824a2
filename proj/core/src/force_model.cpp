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

#include "gravcat/force_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gravcat {

double MatterDensity1D::total_mass() const {
  if (values.size() < 2) return 0.0;
  double sum = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) sum += values[i];
  return sum * dx;
}

double point_force(double sphere_mass, double probe_mass, double cat_separation,
                   double distance, const PhysicalConstants& k) {
  if (!(distance > 0.0)) throw std::invalid_argument("point_force: distance must be > 0");
  if (cat_separation < 0.0) throw std::invalid_argument("point_force: separation must be >= 0");
  return k.G * sphere_mass * probe_mass * cat_separation / (2.0 * distance * distance * distance);
}

double density_force(double density, double probe_mass, double cat_separation,
                     double surface_gap, double radius, const PhysicalConstants& k) {
  if (!(radius > 0.0)) throw std::invalid_argument("density_force: radius must be > 0");
  if (surface_gap < 0.0) throw std::invalid_argument("density_force: gap must be >= 0");
  if (std::isinf(surface_gap)) return 0.0;
  const double shrink = 1.0 + surface_gap / radius;
  return 2.0 * std::numbers::pi / 3.0 * k.G * density * probe_mass * cat_separation /
         (shrink * shrink * shrink);
}

double net_force_on_probe(const MatterDensity1D& density, double probe_x, double probe_y,
                          double probe_mass, const PhysicalConstants& k) {
  const std::size_t n = density.values.size();
  if (n < 2 || !(density.dx > 0.0)) {
    throw std::invalid_argument("net_force_on_probe: density needs >= 2 points and dx > 0");
  }
  if (std::abs(probe_y) < density.dx && probe_x >= density.grid_min - density.dx &&
      probe_x <= density.grid_max() + density.dx) {
    throw std::invalid_argument("net_force_on_probe: probe lies inside the density support");
  }
  const double y2 = probe_y * probe_y;
  auto integrand = [&](std::size_t i) {
    const double sep = probe_x - density.x(i);
    const double r2 = sep * sep + y2;
    return density.values[i] * sep / (r2 * std::sqrt(r2));
  };
  double sum = 0.5 * (integrand(0) + integrand(n - 1));
  for (std::size_t i = 1; i + 1 < n; ++i) sum += integrand(i);
  return -k.G * probe_mass * sum * density.dx;
}

double self_energy(double sphere_mass, double cat_separation, const PhysicalConstants& k) {
  if (!(cat_separation > 0.0)) throw std::invalid_argument("self_energy: separation must be > 0");
  return -k.G * sphere_mass * sphere_mass / (4.0 * cat_separation);
}

}  // namespace gravcat
