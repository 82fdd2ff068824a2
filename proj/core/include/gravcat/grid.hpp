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

#ifndef GRAVCAT_GRID_HPP_
#define GRAVCAT_GRID_HPP_

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "gravcat/force_model.hpp"
#include "gravcat/physics.hpp"
#include "gravcat/protocol.hpp"
#include "gravcat/random.hpp"
#include "gravcat/theory.hpp"
#include "gravcat/two_site.hpp"

namespace gravcat {

// Uniform grid x0, x0 + dx, ..., x0 + (n-1) dx. n must be a power of two.
struct Grid1D {
  double x0 = 0.0;
  double dx = 0.0;
  std::size_t n = 0;

  double x(std::size_t i) const { return x0 + dx * static_cast<double>(i); }
  double x_max() const { return x(n - 1); }
  // n points spanning [x_min, x_max] inclusive.
  static Grid1D spanning(double x_min, double x_max, std::size_t n);
};

struct WaveState1D {
  double x0 = 0.0;
  double dx = 0.0;
  std::vector<std::complex<double>> psi;
  double mass = 0.0;  // kg

  Grid1D grid() const { return {x0, dx, psi.size()}; }
  double x(std::size_t i) const { return x0 + dx * static_cast<double>(i); }
  // Riemann sum of |psi|^2 dx.
  double norm() const;
  void normalize();
  double mean_position() const;
  // Standard deviation of |psi|^2.
  double width() const;
  // mass |psi|^2 as a line density.
  MatterDensity1D matter_density() const;
  // Probability in [a, b].
  double probability_between(double a, double b) const;
  friend bool operator==(const WaveState1D&, const WaveState1D&) = default;
};

// Normalized sum of two Gaussians with |psi|^2 standard deviation sigma,
// centred at -L/2 (the + site) and +L/2, with weights weight_plus and
// 1 - weight_plus. Cross terms are kept in the normalization.
WaveState1D make_cat_state(double sigma, double cat_separation, const Grid1D& grid,
                           double mass = 0.0, double weight_plus = 0.5);

// Multiplies psi by the square root of the normalized Gaussian
// g(x - X) = exp(-(x - X)^2 / (2 s^2)) / sqrt(2 pi s^2) and renormalizes.
// Throws NumericalError when the overlap C^2 underflows.
WaveState1D grw_hit(const WaveState1D& state, double center, double sigma_grw);

// Tabulated C(X)^2 = integral g(x - X)|psi(x)|^2 dx and its CDF.
class CollapseCenterTable {
 public:
  CollapseCenterTable(const WaveState1D& state, double sigma_grw);

  double density(double x) const;
  double cdf(double x) const;
  // Inverse CDF with linear interpolation.
  double sample(Rng& rng) const;
  double quantile(double u) const;
  // Integral of the tabulated density before normalization.
  double raw_integral() const { return raw_integral_; }
  const std::vector<double>& nodes() const { return x_; }

 private:
  double x_lo_ = 0.0;
  double h_ = 0.0;
  std::vector<double> x_;
  std::vector<double> rho_;
  std::vector<double> cdf_;
  double raw_integral_ = 0.0;
};

// One draw from C(X)^2. Throws NumericalError if its integral is off by more
// than 1e-6.
double sample_collapse_center(const WaveState1D& state, double sigma_grw, Rng& rng);

// Two inverted Gaussians of depth U0 and width w at +-L/2.
double double_well_potential(double x, double depth, double well_width, double cat_separation);

// Depth that makes a Gaussian of |psi|^2 width sigma the harmonic ground
// state of one well: U0 = hbar^2 w^2 / (4 m sigma^4).
double harmonic_well_depth(double mass, double sigma, double well_width,
                           const PhysicalConstants& k = default_constants());

// Strang split-step Fourier evolution over `duration` under `potential`
// (sampled on the state grid). Substeps keep the potential phase per step
// below 0.1 rad.
void evolve_split_step(WaveState1D& state, const std::vector<double>& potential, double duration,
                       const PhysicalConstants& k = default_constants());

struct CollapseEvent {
  double time = 0.0;
  double center = 0.0;
  double pre_width = 0.0;
  double post_width = 0.0;
  friend bool operator==(const CollapseEvent&, const CollapseEvent&) = default;
};

struct GridOptions {
  std::size_t n_points = 2048;
  std::optional<double> packet_width;  // default: slit width, else L/20
  std::optional<double> well_depth;    // default: harmonic_well_depth
  std::vector<double> forced_hits;     // extra hit times, s
  bool poisson_hits = true;
  friend bool operator==(const GridOptions&, const GridOptions&) = default;
};

struct GridTrajectory {
  ForceRecord record;
  std::vector<CollapseEvent> collapses;
  WaveState1D final_state;
};

// Grid-level trajectory for GRW_mN, K_mN (and BeraEtAl) and NH: cat in the
// double well, hits at Poisson times (plus forced ones), probe force from the
// instantaneous density at every output time.
GridTrajectory grid_trajectory(TheoryId theory, const ExperimentProtocol& p, double horizon,
                               double dt, std::uint64_t seed, const GridOptions& options = {},
                               const CollapseParams& cp = default_collapse_params(),
                               const PhysicalConstants& k = default_constants());

// Binary layout, little-endian: uint64 n, float64 dx, float64 x0,
// float64 mass, then n pairs of float64 (re, im).
void write_wave_state(std::ostream& out, const WaveState1D& state);
WaveState1D read_wave_state(std::istream& in);

}  // namespace gravcat

#endif  // GRAVCAT_GRID_HPP_
