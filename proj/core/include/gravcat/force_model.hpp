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

#ifndef GRAVCAT_FORCE_MODEL_HPP_
#define GRAVCAT_FORCE_MODEL_HPP_

#include <span>
#include <vector>

#include "gravcat/physics.hpp"

namespace gravcat {

// Axial mass-per-length profile; transverse directions integrated out.
struct MatterDensity1D {
  double grid_min = 0.0;  // m
  double dx = 0.0;        // m
  std::vector<double> values;  // kg m^-1, one per grid point

  double grid_max() const {
    return values.empty() ? grid_min : grid_min + dx * static_cast<double>(values.size() - 1);
  }
  double x(std::size_t i) const { return grid_min + dx * static_cast<double>(i); }
  // Trapezoid integral of values.
  double total_mass() const;
};

// Horizontal force magnitude GMmL/(2D^3) from a mass localized in one minimum.
double point_force(double sphere_mass, double probe_mass, double cat_separation,
                   double distance, const PhysicalConstants& k = default_constants());

// Same force written through the density: (2 pi/3) G rho m L / (1 + a/R)^3.
double density_force(double density, double probe_mass, double cat_separation,
                     double surface_gap, double radius,
                     const PhysicalConstants& k = default_constants());

// Horizontal force on a probe at (probe_x, probe_y) from a 1-D density on the
// x axis:
//   F_x = -G m  integral rho(x) (probe_x - x) / ((probe_x - x)^2 + probe_y^2)^{3/2} dx
// Trapezoid quadrature. Throws std::invalid_argument if the probe sits within
// one grid cell of the density support.
double net_force_on_probe(const MatterDensity1D& density, double probe_x, double probe_y,
                          double probe_mass, const PhysicalConstants& k = default_constants());

// Mutual gravitational energy of the two half-mass lumps, -GM^2/(4L).
double self_energy(double sphere_mass, double cat_separation,
                   const PhysicalConstants& k = default_constants());

}  // namespace gravcat

#endif  // GRAVCAT_FORCE_MODEL_HPP_
