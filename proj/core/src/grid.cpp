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

#include "gravcat/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "fftw_util.hpp"
#include "gravcat/error.hpp"
#include "gravcat/rates.hpp"

namespace gravcat {

namespace {

bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

double gaussian_density(double d, double s) {
  return std::exp(-0.5 * d * d / (s * s)) / (std::sqrt(2.0 * std::numbers::pi) * s);
}

}  // namespace

Grid1D Grid1D::spanning(double x_min, double x_max, std::size_t n) {
  if (!is_power_of_two(n)) throw std::invalid_argument("grid size must be a power of two");
  if (!(x_max > x_min)) throw std::invalid_argument("grid: x_max must exceed x_min");
  return {x_min, (x_max - x_min) / static_cast<double>(n - 1), n};
}

double WaveState1D::norm() const {
  double s = 0.0;
  for (const auto& c : psi) s += std::norm(c);
  return s * dx;
}

void WaveState1D::normalize() {
  const double n = norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw NumericalError("wavefunction has zero norm");
  const double f = 1.0 / std::sqrt(n);
  for (auto& c : psi) c *= f;
}

double WaveState1D::mean_position() const {
  double s = 0.0;
  double w = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double p = std::norm(psi[i]);
    s += p * x(i);
    w += p;
  }
  return s / w;
}

double WaveState1D::width() const {
  const double mu = mean_position();
  double s = 0.0;
  double w = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double p = std::norm(psi[i]);
    const double d = x(i) - mu;
    s += p * d * d;
    w += p;
  }
  return std::sqrt(s / w);
}

MatterDensity1D WaveState1D::matter_density() const {
  MatterDensity1D rho;
  rho.grid_min = x0;
  rho.dx = dx;
  rho.values.resize(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) rho.values[i] = mass * std::norm(psi[i]);
  return rho;
}

double WaveState1D::probability_between(double a, double b) const {
  double s = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (x(i) >= a && x(i) <= b) s += std::norm(psi[i]);
  }
  return s * dx;
}

WaveState1D make_cat_state(double sigma, double cat_separation, const Grid1D& grid, double mass,
                           double weight_plus) {
  if (!(sigma > 0.0)) throw std::invalid_argument("make_cat_state: sigma must be > 0");
  if (cat_separation < 0.0) throw std::invalid_argument("make_cat_state: L must be >= 0");
  if (weight_plus < 0.0 || weight_plus > 1.0) {
    throw std::invalid_argument("make_cat_state: weight must lie in [0, 1]");
  }
  if (!is_power_of_two(grid.n)) throw std::invalid_argument("grid size must be a power of two");
  if (grid.x_max() - grid.x0 < cat_separation + 10.0 * sigma) {
    throw std::invalid_argument("make_cat_state: grid must span at least L + 10 sigma");
  }
  WaveState1D s;
  s.x0 = grid.x0;
  s.dx = grid.dx;
  s.mass = mass;
  s.psi.resize(grid.n);
  const double ap = std::sqrt(weight_plus);
  const double am = std::sqrt(1.0 - weight_plus);
  const double half = 0.5 * cat_separation;
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double x = grid.x(i);
    const double dp = (x + half) / sigma;
    const double dm = (x - half) / sigma;
    s.psi[i] = ap * std::exp(-0.25 * dp * dp) + am * std::exp(-0.25 * dm * dm);
  }
  s.normalize();
  return s;
}

WaveState1D grw_hit(const WaveState1D& state, double center, double sigma_grw) {
  if (!(sigma_grw > 0.0)) throw std::invalid_argument("grw_hit: sigma must be > 0");
  // Work with exponents relative to the largest one on the support so that a
  // far-off centre does not underflow.
  double top = -std::numeric_limits<double>::infinity();
  std::vector<double> expo(state.psi.size());
  for (std::size_t i = 0; i < state.psi.size(); ++i) {
    const double d = (state.x(i) - center) / sigma_grw;
    expo[i] = -0.25 * d * d;
    if (state.psi[i] != 0.0) top = std::max(top, expo[i]);
  }
  if (!std::isfinite(top)) throw NumericalError("grw_hit: empty wavefunction");
  WaveState1D out = state;
  for (std::size_t i = 0; i < out.psi.size(); ++i) out.psi[i] *= std::exp(expo[i] - top);
  out.normalize();
  return out;
}

CollapseCenterTable::CollapseCenterTable(const WaveState1D& state, double sigma_grw) {
  if (!(sigma_grw > 0.0)) throw std::invalid_argument("collapse table: sigma must be > 0");
  const std::size_t n = state.psi.size();
  double pmax = 0.0;
  for (const auto& c : state.psi) pmax = std::max(pmax, std::norm(c));
  if (!(pmax > 0.0)) throw NumericalError("collapse table: empty wavefunction");
  std::size_t lo = n;
  std::size_t hi = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::norm(state.psi[i]) > 1e-20 * pmax) {
      lo = std::min(lo, i);
      hi = i;
    }
  }
  constexpr double kReach = 8.0;
  constexpr std::size_t kMaxNodes = std::size_t{1} << 20;
  x_lo_ = state.x(lo) - kReach * sigma_grw;
  const double x_hi = state.x(hi) + kReach * sigma_grw;
  h_ = std::min(sigma_grw / 16.0, state.dx);
  if ((x_hi - x_lo_) / h_ > static_cast<double>(kMaxNodes - 1)) {
    h_ = (x_hi - x_lo_) / static_cast<double>(kMaxNodes - 1);
  }
  const auto nodes = static_cast<std::size_t>(std::ceil((x_hi - x_lo_) / h_)) + 1;
  x_.resize(nodes);
  for (std::size_t k = 0; k < nodes; ++k) x_[k] = x_lo_ + h_ * static_cast<double>(k);

  // Point sources: grid samples, or grid mass binned onto the nodes when the
  // table is coarser than the grid.
  std::vector<double> src_x;
  std::vector<double> src_w;
  if (h_ > state.dx) {
    std::vector<double> bins(nodes, 0.0);
    for (std::size_t i = lo; i <= hi; ++i) {
      const auto k = static_cast<std::size_t>(std::lround((state.x(i) - x_lo_) / h_));
      bins[std::min(k, nodes - 1)] += std::norm(state.psi[i]) * state.dx;
    }
    for (std::size_t k = 0; k < nodes; ++k) {
      if (bins[k] > 0.0) {
        src_x.push_back(x_[k]);
        src_w.push_back(bins[k]);
      }
    }
  } else {
    for (std::size_t i = lo; i <= hi; ++i) {
      src_x.push_back(state.x(i));
      src_w.push_back(std::norm(state.psi[i]) * state.dx);
    }
  }

  rho_.assign(nodes, 0.0);
  const double reach = kReach * sigma_grw;
  std::size_t first = 0;
  for (std::size_t k = 0; k < nodes; ++k) {
    while (first < src_x.size() && src_x[first] < x_[k] - reach) ++first;
    double s = 0.0;
    for (std::size_t j = first; j < src_x.size() && src_x[j] <= x_[k] + reach; ++j) {
      s += src_w[j] * gaussian_density(x_[k] - src_x[j], sigma_grw);
    }
    rho_[k] = s;
  }
  cdf_.assign(nodes, 0.0);
  for (std::size_t k = 1; k < nodes; ++k) {
    cdf_[k] = cdf_[k - 1] + 0.5 * h_ * (rho_[k - 1] + rho_[k]);
  }
  raw_integral_ = cdf_.back();
  if (!(raw_integral_ > 0.0)) throw NumericalError("collapse table: zero total weight");
  for (auto& c : cdf_) c /= raw_integral_;
  for (auto& r : rho_) r /= raw_integral_;
}

double CollapseCenterTable::density(double x) const {
  if (x <= x_.front() || x >= x_.back()) return 0.0;
  const double u = (x - x_lo_) / h_;
  const auto k = std::min(static_cast<std::size_t>(u), x_.size() - 2);
  const double f = u - static_cast<double>(k);
  return (1.0 - f) * rho_[k] + f * rho_[k + 1];
}

double CollapseCenterTable::cdf(double x) const {
  if (x <= x_.front()) return 0.0;
  if (x >= x_.back()) return 1.0;
  const double u = (x - x_lo_) / h_;
  const auto k = std::min(static_cast<std::size_t>(u), x_.size() - 2);
  const double f = u - static_cast<double>(k);
  return (1.0 - f) * cdf_[k] + f * cdf_[k + 1];
}

double CollapseCenterTable::quantile(double u) const {
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.begin()) return x_.front();
  if (it == cdf_.end()) return x_.back();
  const auto k = static_cast<std::size_t>(it - cdf_.begin()) - 1;
  const double span = cdf_[k + 1] - cdf_[k];
  const double f = span > 0.0 ? (u - cdf_[k]) / span : 0.0;
  return x_[k] + f * h_;
}

double CollapseCenterTable::sample(Rng& rng) const { return quantile(uniform01(rng)); }

double sample_collapse_center(const WaveState1D& state, double sigma_grw, Rng& rng) {
  const CollapseCenterTable table(state, sigma_grw);
  if (std::abs(table.raw_integral() - 1.0) > 1e-6) {
    throw NumericalError("collapse-centre density integrates to " +
                         std::to_string(table.raw_integral()) + ", expected 1");
  }
  return table.sample(rng);
}

double double_well_potential(double x, double depth, double well_width, double cat_separation) {
  const double a = (x + 0.5 * cat_separation) / well_width;
  const double b = (x - 0.5 * cat_separation) / well_width;
  return -depth * (std::exp(-0.5 * a * a) + std::exp(-0.5 * b * b));
}

double harmonic_well_depth(double mass, double sigma, double well_width,
                           const PhysicalConstants& k) {
  const double s2 = sigma * sigma;
  return k.hbar * k.hbar * well_width * well_width / (4.0 * mass * s2 * s2);
}

void evolve_split_step(WaveState1D& state, const std::vector<double>& potential, double duration,
                       const PhysicalConstants& k) {
  const std::size_t n = state.psi.size();
  if (potential.size() != n) throw std::invalid_argument("potential size mismatch");
  if (!(state.mass > 0.0)) throw std::invalid_argument("split-step needs a positive mass");
  if (duration < 0.0) throw std::invalid_argument("split-step duration must be >= 0");
  if (duration == 0.0) return;

  const double vmin = *std::min_element(potential.begin(), potential.end());
  double vspan = 0.0;
  for (double v : potential) vspan = std::max(vspan, v - vmin);
  const double steps = std::max(1.0, std::ceil(vspan * duration / (0.1 * k.hbar)));
  const double h = duration / steps;

  std::vector<std::complex<double>> half_v(n);
  for (std::size_t i = 0; i < n; ++i) {
    half_v[i] = std::polar(1.0, -(potential[i] - vmin) * h / (2.0 * k.hbar));
  }
  std::vector<std::complex<double>> kin(n);
  const double dk = 2.0 * std::numbers::pi / (static_cast<double>(n) * state.dx);
  for (std::size_t j = 0; j < n; ++j) {
    const double kj = dk * (j < n / 2 ? static_cast<double>(j)
                                      : static_cast<double>(j) - static_cast<double>(n));
    kin[j] = std::polar(1.0 / static_cast<double>(n), -k.hbar * kj * kj * h / (2.0 * state.mass));
  }

  detail::ComplexFft fft(n);
  std::complex<double>* buf = fft.data();
  std::copy(state.psi.begin(), state.psi.end(), buf);
  for (double s = 0; s < steps; ++s) {
    for (std::size_t i = 0; i < n; ++i) buf[i] *= half_v[i];
    fft.forward();
    for (std::size_t j = 0; j < n; ++j) buf[j] *= kin[j];
    fft.backward();
    for (std::size_t i = 0; i < n; ++i) buf[i] *= half_v[i];
  }
  std::copy(buf, buf + n, state.psi.begin());
}

GridTrajectory grid_trajectory(TheoryId theory, const ExperimentProtocol& p, double horizon,
                               double dt, std::uint64_t seed, const GridOptions& options,
                               const CollapseParams& cp, const PhysicalConstants& k) {
  const TheoryId base = equivalent_theory(theory);
  if (base != TheoryId::GRW_mN && base != TheoryId::K_mN && base != TheoryId::NH) {
    throw ConfigError("grid engine supports GRW_mN, K_mN, BeraEtAl and NH; got " +
                      std::string(to_string(theory)));
  }
  require_valid(p);
  const RateReport report = rate_report(theory, p, cp, k);
  const double f0 = point_force(p.sphere_mass, p.probe_mass, p.cat_separation,
                                p.probe_distance(), k);
  const double L = p.cat_separation;
  const double sigma = options.packet_width.value_or(p.has_slit() ? p.slit_width : L / 20.0);
  const double half_extent = 0.5 * L + 10.0 * sigma;
  const Grid1D grid = Grid1D::spanning(-half_extent, half_extent, options.n_points);

  GridTrajectory out;
  out.final_state = make_cat_state(sigma, L, grid, p.sphere_mass);
  ForceRecord& rec = out.record;
  rec.times = uniform_times(horizon, dt);
  rec.forces.assign(rec.times.size(), 0.0);
  rec.theory = theory;
  rec.seed = seed;
  rec.f0 = f0;
  if (base == TheoryId::NH) return out;

  const double well_width = 0.25 * L;
  const double depth =
      options.well_depth.value_or(harmonic_well_depth(p.sphere_mass, sigma, well_width, k));
  std::vector<double> potential(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    potential[i] = double_well_potential(grid.x(i), depth, well_width, L);
  }

  const double hit_width = *report.collapse_width;
  const double rate = report.effective_cm_rate;
  const double t_end = rec.times.back();
  Rng rng = make_rng(seed);

  std::vector<double> hits = options.forced_hits;
  if (options.poisson_hits) {
    if (p.has_slit() && poisson_next_event(rate, rng) < p.coherence_time) hits.push_back(0.0);
    for (double t = poisson_next_event(rate, rng); t <= t_end; t += poisson_next_event(rate, rng)) {
      hits.push_back(t);
    }
  }
  std::sort(hits.begin(), hits.end());

  WaveState1D& psi = out.final_state;
  const double probe_y = p.probe_offset();
  auto apply_hit = [&](double t) {
    CollapseEvent ev;
    ev.time = t;
    ev.pre_width = psi.width();
    ev.center = sample_collapse_center(psi, hit_width, rng);
    psi = grw_hit(psi, ev.center, hit_width);
    ev.post_width = psi.width();
    out.collapses.push_back(ev);
    rec.events.push_back({t, EventKind::Hit});
  };

  double t = 0.0;
  std::size_t next_hit = 0;
  for (std::size_t i = 0; i < rec.times.size(); ++i) {
    while (next_hit < hits.size() && hits[next_hit] <= rec.times[i]) {
      evolve_split_step(psi, potential, hits[next_hit] - t, k);
      t = hits[next_hit++];
      apply_hit(t);
    }
    evolve_split_step(psi, potential, rec.times[i] - t, k);
    t = rec.times[i];
    const double drift = std::abs(psi.norm() - 1.0);
    if (drift > 1e-6) {
      throw NumericalError("grid trajectory norm drift " + std::to_string(drift));
    }
    rec.forces[i] = net_force_on_probe(psi.matter_density(), 0.0, probe_y, p.probe_mass, k);
  }
  return out;
}

namespace {

template <typename T>
void put(std::ostream& out, T v) {
  static_assert(sizeof(T) == 8);
  auto bits = std::bit_cast<std::uint64_t>(v);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

template <typename T>
T get(std::istream& in) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8)) throw std::runtime_error("truncated state file");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return std::bit_cast<T>(bits);
}

}  // namespace

void write_wave_state(std::ostream& out, const WaveState1D& state) {
  put<std::uint64_t>(out, state.psi.size());
  put<double>(out, state.dx);
  put<double>(out, state.x0);
  put<double>(out, state.mass);
  for (const auto& c : state.psi) {
    put<double>(out, c.real());
    put<double>(out, c.imag());
  }
}

WaveState1D read_wave_state(std::istream& in) {
  WaveState1D s;
  const auto n = get<std::uint64_t>(in);
  if (n > (std::uint64_t{1} << 32)) throw std::runtime_error("implausible state size");
  s.dx = get<double>(in);
  s.x0 = get<double>(in);
  s.mass = get<double>(in);
  s.psi.resize(n);
  for (auto& c : s.psi) {
    const double re = get<double>(in);
    const double im = get<double>(in);
    c = {re, im};
  }
  return s;
}

}  // namespace gravcat
