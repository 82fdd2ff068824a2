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

#include "gravcat/theory.hpp"

#include <string>

#include "gravcat/error.hpp"

namespace gravcat {

std::string_view to_string(TheoryId id) {
  switch (id) {
    case TheoryId::CQT_Newton: return "CQT_Newton";
    case TheoryId::GRW_mN: return "GRW_mN";
    case TheoryId::GRW_fN: return "GRW_fN";
    case TheoryId::CSL_mN: return "CSL_mN";
    case TheoryId::DP_mN: return "DP_mN";
    case TheoryId::TD_CSL: return "TD_CSL";
    case TheoryId::TD_DP: return "TD_DP";
    case TheoryId::K_mN: return "K_mN";
    case TheoryId::GRW0: return "GRW0";
    case TheoryId::CSL0: return "CSL0";
    case TheoryId::DP0: return "DP0";
    case TheoryId::K0: return "K0";
    case TheoryId::NH: return "NH";
    case TheoryId::KafriEtAl: return "KafriEtAl";
    case TheoryId::BeraEtAl: return "BeraEtAl";
    case TheoryId::AdlerTD: return "AdlerTD";
  }
  return "?";
}

TheoryId parse_theory(std::string_view text) {
  for (TheoryId id : kAllTheories) {
    if (to_string(id) == text) return id;
  }
  std::string valid;
  for (TheoryId id : kAllTheories) {
    if (!valid.empty()) valid += ", ";
    valid += to_string(id);
  }
  throw ConfigError("unknown theory '" + std::string(text) + "' (valid: " + valid + ")");
}

CollapseFamily family_of(TheoryId id) {
  switch (equivalent_theory(id)) {
    case TheoryId::GRW_mN:
    case TheoryId::GRW_fN:
    case TheoryId::GRW0:
      return CollapseFamily::GRW;
    case TheoryId::CSL_mN:
    case TheoryId::TD_CSL:
    case TheoryId::CSL0:
      return CollapseFamily::CSL;
    case TheoryId::DP_mN:
    case TheoryId::TD_DP:
    case TheoryId::DP0:
      return CollapseFamily::DP;
    case TheoryId::K_mN:
    case TheoryId::K0:
      return CollapseFamily::K;
    default:
      return CollapseFamily::None;
  }
}

TheoryId equivalent_theory(TheoryId id) {
  switch (id) {
    case TheoryId::KafriEtAl: return TheoryId::DP_mN;
    case TheoryId::BeraEtAl: return TheoryId::K_mN;
    case TheoryId::AdlerTD: return TheoryId::CSL_mN;
    default: return id;
  }
}

bool is_quantized_gravity(TheoryId id) {
  switch (id) {
    case TheoryId::GRW0:
    case TheoryId::CSL0:
    case TheoryId::DP0:
    case TheoryId::K0:
      return true;
    default:
      return false;
  }
}

bool has_sn_self_interaction(TheoryId id) {
  switch (equivalent_theory(id)) {
    case TheoryId::GRW_mN:
    case TheoryId::CSL_mN:
    case TheoryId::DP_mN:
    case TheoryId::K_mN:
      return true;
    default:
      return false;
  }
}

}  // namespace gravcat
