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

#include "gravcat/radial_sn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fftw_util.hpp"
#include "gravcat/error.hpp"

namespace gravcat {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;
constexpr double kMaxPhase = 0.1;
constexpr double kNormTolerance = 1e-6;
constexpr double kEdgeTolerance = 1e-4;

// Shell-integral potential for density 4 pi |u|^2 on r_j = (j+1) h, in units
// of -G m^2 (so the returned values are <= 0 after the sign flip).
std::vector<double> shell_potential(const std::vector<std::complex<double>>& u, double h) {
  const std::size_t n = u.size();
  std::vector<double> dens(n);
  for (std::size_t j = 0; j < n; ++j) dens[j] = kFourPi * std::norm(u[j]);
  std::vector<double> v(n);
  double enclosed = 0.0;
  double prev = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    enclosed += 0.5 * h * (prev + dens[j]);
    prev = dens[j];
    v[j] = enclosed / (h * static_cast<double>(j + 1));
  }
  double outer = 0.0;
  double prev_q = 0.0;
  for (std::size_t j = n; j-- > 0;) {
    const double q = dens[j] / (h * static_cast<double>(j + 1));
    outer += 0.5 * h * (prev_q + q);
    prev_q = q;
    v[j] = -(v[j] + outer);
  }
  return v;
}

// Evolution in units of length ell and time m ell^2 / hbar.
class Stepper {
 public:
  Stepper(const RadialState& s, double G_eff, const PhysicalConstants& k)
      : n_(s.size()), mass_(s.mass), re_(n_), im_(n_) {
    if (n_ < 4) throw std::invalid_argument("radial grid needs at least 4 points");
    if (!(s.mass > 0.0)) throw std::invalid_argument("radial state needs a positive mass");
    ell_ = s.rms_radius() / std::sqrt(3.0);
    h_ = s.dr / ell_;
    time_unit_ = s.mass * ell_ * ell_ / k.hbar;
    kappa_ = G_eff * s.mass * s.mass * s.mass * ell_ / (k.hbar * k.hbar);
    const double scale = std::sqrt(ell_);
    u_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) u_[j] = s.u[j] * scale;
    const double rho_max = h_ * static_cast<double>(n_ + 1);
    half_k2_.resize(n_);
    for (std::size_t q = 0; q < n_; ++q) {
      const double kq = std::numbers::pi * static_cast<double>(q + 1) / rho_max;
      half_k2_[q] = 0.5 * kq * kq;
    }
    initial_norm_ = norm();
    refresh_potential_scale();
  }

  double time_unit() const { return time_unit_; }

  void kinetic(double tau) {
    if (tau == 0.0) return;
    double* a = re_.data();
    double* b = im_.data();
    for (std::size_t j = 0; j < n_; ++j) {
      a[j] = u_[j].real();
      b[j] = u_[j].imag();
    }
    re_.execute();
    im_.execute();
    const double inv = 1.0 / (2.0 * static_cast<double>(n_ + 1));
    for (std::size_t q = 0; q < n_; ++q) {
      const std::complex<double> c =
          std::complex<double>(a[q], b[q]) * std::polar(inv, -half_k2_[q] * tau);
      a[q] = c.real();
      b[q] = c.imag();
    }
    re_.execute();
    im_.execute();
    for (std::size_t j = 0; j < n_; ++j) u_[j] = {a[j], b[j]};
  }

  void potential(double tau) {
    if (kappa_ == 0.0) return;
    const std::vector<double> v = shell_potential(u_, h_);
    double vmax = 0.0;
    for (double x : v) vmax = std::max(vmax, -x);
    max_v_ = vmax;
    const double phase = kappa_ * vmax * tau;
    if (phase >= kMaxPhase) {
      throw NumericalError("Schrodinger-Newton step too large: potential phase " +
                           std::to_string(phase) + " rad per step");
    }
    for (std::size_t j = 0; j < n_; ++j) u_[j] *= std::polar(1.0, -kappa_ * v[j] * tau);
  }

  // Largest step keeping the potential phase at `fraction` of the bound.
  double stable_step(double fraction) const {
    if (kappa_ == 0.0 || max_v_ == 0.0) return std::numeric_limits<double>::infinity();
    return fraction * kMaxPhase / (kappa_ * max_v_);
  }

  double norm() const {
    double s = 0.0;
    for (const auto& c : u_) s += std::norm(c);
    return kFourPi * s * h_;
  }

  void check() const {
    const double drift = std::abs(norm() - initial_norm_);
    if (drift > kNormTolerance) {
      throw NumericalError("Schrodinger-Newton norm drift " + std::to_string(drift));
    }
    const std::size_t edge = static_cast<std::size_t>(0.9 * static_cast<double>(n_ + 1));
    double out = 0.0;
    for (std::size_t j = edge; j < n_; ++j) out += std::norm(u_[j]);
    out *= kFourPi * h_;
    if (out > kEdgeTolerance) {
      throw NumericalError("Schrodinger-Newton box too small: " + std::to_string(out) +
                           " of the probability beyond 0.9 r_max");
    }
  }

  RadialState physical(double dr) const {
    RadialState s;
    s.dr = dr;
    s.mass = mass_;
    s.u.resize(n_);
    const double scale = 1.0 / std::sqrt(ell_);
    for (std::size_t j = 0; j < n_; ++j) s.u[j] = u_[j] * scale;
    return s;
  }

  double rms_radius() const {
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      const double r = h_ * static_cast<double>(j + 1);
      s += r * r * std::norm(u_[j]);
    }
    return ell_ * std::sqrt(kFourPi * s * h_ / norm());
  }

 private:
  void refresh_potential_scale() {
    if (kappa_ == 0.0) return;
    const std::vector<double> v = shell_potential(u_, h_);
    for (double x : v) max_v_ = std::max(max_v_, -x);
  }

  std::size_t n_;
  double mass_;
  double ell_ = 0.0;
  double h_ = 0.0;
  double time_unit_ = 0.0;
  double kappa_ = 0.0;
  double initial_norm_ = 1.0;
  double max_v_ = 0.0;
  std::vector<std::complex<double>> u_;
  std::vector<double> half_k2_;
  detail::SineTransform re_;
  detail::SineTransform im_;
};

}  // namespace

double RadialState::norm() const {
  double s = 0.0;
  for (const auto& c : u) s += std::norm(c);
  return kFourPi * s * dr;
}

double RadialState::rms_radius() const {
  double s = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) s += r(j) * r(j) * std::norm(u[j]);
  return std::sqrt(kFourPi * s * dr / norm());
}

double RadialState::probability_beyond(double radius) const {
  double s = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (r(j) > radius) s += std::norm(u[j]);
  }
  return kFourPi * s * dr;
}

RadialState make_radial_gaussian(double mass, double sigma0, double r_max, std::size_t n) {
  if (!(sigma0 > 0.0)) throw std::invalid_argument("radial Gaussian: sigma0 must be > 0");
  if (r_max < 10.0 * sigma0) {
    throw std::invalid_argument("radial Gaussian: r_max must be at least 10 sigma0");
  }
  if (n < 4) throw std::invalid_argument("radial Gaussian: need at least 4 points");
  RadialState s;
  s.mass = mass;
  s.dr = r_max / static_cast<double>(n + 1);
  s.u.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double r = s.r(j);
    s.u[j] = r * std::exp(-0.25 * r * r / (sigma0 * sigma0));
  }
  const double f = 1.0 / std::sqrt(s.norm());
  for (auto& c : s.u) c *= f;
  return s;
}

double sn_coupling(double mass, double sigma0, double G_eff, const PhysicalConstants& k) {
  return G_eff * mass * mass * mass * sigma0 / (k.hbar * k.hbar);
}

double free_rms_radius(double mass, double sigma0, double t, const PhysicalConstants& k) {
  const double s = k.hbar * t / (2.0 * mass * sigma0 * sigma0);
  return std::sqrt(3.0) * sigma0 * std::sqrt(1.0 + s * s);
}

std::vector<double> sn_potential(const RadialState& s, double G_eff) {
  std::vector<double> v = shell_potential(s.u, s.dr);
  const double scale = G_eff * s.mass * s.mass;
  for (auto& x : v) x *= scale;
  return v;
}

double sn_energy(const RadialState& s, double G_eff, const PhysicalConstants& k) {
  const std::size_t n = s.size();
  detail::SineTransform re(n);
  detail::SineTransform im(n);
  for (std::size_t j = 0; j < n; ++j) {
    re.data()[j] = s.u[j].real();
    im.data()[j] = s.u[j].imag();
  }
  re.execute();
  im.execute();
  double grad2 = 0.0;
  for (std::size_t q = 0; q < n; ++q) {
    const double kq = std::numbers::pi * static_cast<double>(q + 1) / s.r_max();
    grad2 += kq * kq * (re.data()[q] * re.data()[q] + im.data()[q] * im.data()[q]);
  }
  grad2 *= s.dr / (2.0 * static_cast<double>(n + 1));
  const double kinetic = kFourPi * 0.5 * k.hbar * k.hbar / s.mass * grad2;

  const std::vector<double> v = sn_potential(s, G_eff);
  double pot = 0.0;
  for (std::size_t j = 0; j < n; ++j) pot += v[j] * std::norm(s.u[j]);
  pot *= 0.5 * kFourPi * s.dr;
  return kinetic + pot;
}

SnSeries sn_evolve_radial(const RadialState& state, double G_eff, double dt, std::size_t n_steps,
                          std::size_t record_every, const PhysicalConstants& k) {
  if (!(dt > 0.0)) throw std::invalid_argument("sn_evolve_radial: dt must be > 0");
  if (record_every == 0) record_every = 1;
  Stepper st(state, G_eff, k);
  const double tau = dt / st.time_unit();
  SnSeries out;
  out.times.push_back(0.0);
  out.widths.push_back(st.rms_radius());
  double pending = 0.0;
  for (std::size_t i = 1; i <= n_steps; ++i) {
    st.kinetic(pending + 0.5 * tau);
    st.potential(tau);
    pending = 0.5 * tau;
    if (i % record_every == 0 || i == n_steps) {
      st.kinetic(pending);
      pending = 0.0;
      st.check();
      out.times.push_back(dt * static_cast<double>(i));
      out.widths.push_back(st.rms_radius());
    }
  }
  out.state = st.physical(state.dr);
  return out;
}

SnSeries sn_evolve_for(const RadialState& state, double G_eff, double duration,
                       std::size_t n_samples, const PhysicalConstants& k) {
  if (!(duration > 0.0)) throw std::invalid_argument("sn_evolve_for: duration must be > 0");
  if (n_samples == 0) throw std::invalid_argument("sn_evolve_for: need at least one sample");
  Stepper st(state, G_eff, k);
  const double interval = duration / static_cast<double>(n_samples) / st.time_unit();
  SnSeries out;
  out.times.push_back(0.0);
  out.widths.push_back(st.rms_radius());
  for (std::size_t i = 1; i <= n_samples; ++i) {
    double left = interval;
    double pending = 0.0;
    while (left > 0.0) {
      double tau = std::min(left, st.stable_step(0.5));
      if (left - tau < 1e-12 * interval) tau = left;
      st.kinetic(pending + 0.5 * tau);
      st.potential(tau);
      pending = 0.5 * tau;
      left -= tau;
    }
    st.kinetic(pending);
    st.check();
    out.times.push_back(duration * static_cast<double>(i) / static_cast<double>(n_samples));
    out.widths.push_back(st.rms_radius());
  }
  out.state = st.physical(state.dr);
  return out;
}

double sn_dynamical_time(double mass, double sigma0, double G_eff, const PhysicalConstants& k) {
  const double t_disp = 2.0 * mass * sigma0 * sigma0 / k.hbar;
  if (!(G_eff > 0.0)) return t_disp;
  return std::min(t_disp, std::sqrt(sigma0 * sigma0 * sigma0 / (G_eff * mass)));
}

double sn_final_quarter_slope(double mass, double sigma0, const SnBudget& budget,
                              const PhysicalConstants& k) {
  const double G = budget.G_eff.value_or(k.G);
  const RadialState s0 =
      make_radial_gaussian(mass, sigma0, budget.r_max_over_sigma * sigma0, budget.n_points);
  const double duration =
      budget.horizon.value_or(budget.horizon_dynamical_times * sn_dynamical_time(mass, sigma0, G, k));
  const SnSeries run = sn_evolve_for(s0, G, duration, budget.n_samples, k);
  const std::size_t last = run.widths.size() - 1;
  const std::size_t start = last - last / 4;
  return (run.widths[last] - run.widths[start]) / (run.times[last] - run.times[start]);
}

CriticalMassResult detect_critical_mass(double sigma0, double mass_lo, double mass_hi,
                                        const SnBudget& budget, const PhysicalConstants& k) {
  if (!(mass_lo > 0.0) || !(mass_hi > mass_lo)) {
    throw std::invalid_argument("detect_critical_mass: need 0 < mass_lo < mass_hi");
  }
  if (!(budget.bracket_ratio > 1.0)) {
    throw std::invalid_argument("detect_critical_mass: bracket ratio must exceed 1");
  }
  CriticalMassResult res;
  auto contracts = [&](double m) {
    ++res.evaluations;
    return sn_final_quarter_slope(m, sigma0, budget, k) < 0.0;
  };
  if (!contracts(mass_hi)) return res;
  if (contracts(mass_lo)) {
    throw std::invalid_argument("detect_critical_mass: mass_lo already contracts");
  }
  double lo = mass_lo;
  double hi = mass_hi;
  while (hi / lo > budget.bracket_ratio) {
    const double mid = std::sqrt(lo * hi);
    (contracts(mid) ? hi : lo) = mid;
  }
  res.found = true;
  res.mass_lo = lo;
  res.mass_hi = hi;
  return res;
}

}  // namespace gravcat
