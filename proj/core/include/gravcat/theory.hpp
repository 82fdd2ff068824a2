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

#ifndef GRAVCAT_THEORY_HPP_
#define GRAVCAT_THEORY_HPP_

#include <array>
#include <string_view>

namespace gravcat {

enum class TheoryId {
  CQT_Newton,
  GRW_mN,
  GRW_fN,
  CSL_mN,
  DP_mN,
  TD_CSL,
  TD_DP,
  K_mN,
  GRW0,
  CSL0,
  DP0,
  K0,
  NH,
  KafriEtAl,
  BeraEtAl,
  AdlerTD,
};

inline constexpr std::array kAllTheories = {
    TheoryId::CQT_Newton, TheoryId::GRW_mN, TheoryId::GRW_fN,    TheoryId::CSL_mN,
    TheoryId::DP_mN,      TheoryId::TD_CSL, TheoryId::TD_DP,     TheoryId::K_mN,
    TheoryId::GRW0,       TheoryId::CSL0,   TheoryId::DP0,       TheoryId::K0,
    TheoryId::NH,         TheoryId::KafriEtAl, TheoryId::BeraEtAl, TheoryId::AdlerTD,
};

std::string_view to_string(TheoryId id);
// Exact canonical names. Throws ConfigError listing the valid names.
TheoryId parse_theory(std::string_view text);

// Collapse mechanism shared by a theory and the ones it is equivalent to.
enum class CollapseFamily { None, GRW, CSL, DP, K };

CollapseFamily family_of(TheoryId id);

// Theories whose analysis is identical to another one (Kafri -> DP_mN,
// Bera -> K_mN, Adler trace dynamics -> CSL_mN). Identity otherwise.
TheoryId equivalent_theory(TheoryId id);

// Quantized-gravity variants with no matter-density ontology.
bool is_quantized_gravity(TheoryId id);
// Semiclassical variants with a Schrodinger-Newton self-interaction.
bool has_sn_self_interaction(TheoryId id);

}  // namespace gravcat

#endif  // GRAVCAT_THEORY_HPP_
