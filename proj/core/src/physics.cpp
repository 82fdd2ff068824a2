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

#include "gravcat/physics.hpp"

namespace gravcat {
namespace {

void check(std::vector<std::string>& bad, const char* name, double v) {
  if (!(v > 0.0)) bad.emplace_back(name);
}

}  // namespace

std::vector<std::string> PhysicalConstants::invalid_fields() const {
  std::vector<std::string> bad;
  check(bad, "G", G);
  check(bad, "hbar", hbar);
  check(bad, "c", c);
  check(bad, "k_B", k_B);
  check(bad, "m_nucleon", m_nucleon);
  check(bad, "L_planck", L_planck);
  check(bad, "amu", amu);
  return bad;
}

std::vector<std::string> CollapseParams::invalid_fields() const {
  std::vector<std::string> bad;
  check(bad, "lambda_grw", lambda_grw);
  check(bad, "sigma_grw", sigma_grw);
  check(bad, "gamma_csl", gamma_csl);
  check(bad, "r_c", r_c);
  check(bad, "gamma_td_csl", gamma_td_csl);
  check(bad, "sigma_td_csl", sigma_td_csl);
  check(bad, "sigma_td_dp", sigma_td_dp);
  check(bad, "R0_dp", R0_dp);
  check(bad, "kappa_td", kappa_td);
  check(bad, "dp_noise_temperature", dp_noise_temperature);
  return bad;
}

}  // namespace gravcat
