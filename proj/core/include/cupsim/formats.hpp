#pragma once

#include <array>
#include <string_view>

#include "cupsim/plan.hpp"

namespace cupsim {

enum class Format { double_elim_48, group_of_3, group_of_4 };

inline constexpr std::array<Format, 3> kAllFormats = {Format::double_elim_48, Format::group_of_3,
                                                     Format::group_of_4};

[[nodiscard]] std::string_view format_name(Format f);
// Accepts "double-elim-48", "group-of-3", "group-of-4"; throws
// std::invalid_argument otherwise.
[[nodiscard]] Format parse_format(std::string_view name);

// 96 fixtures. Rounds 1-5 run a main (unbeaten) bracket and a repechage for
// once-beaten teams; after round 3 two of the 18 one-loss teams return to the
// main bracket. Round 5 decides the two main-route semifinalists, a
// knockout of eight in the repechage the other two.
[[nodiscard]] FormatPlan build_double_elim_plan();

// 16 groups of 3 (48 fixtures) then a 32-team knockout with a third-place
// match: 80 fixtures.
[[nodiscard]] FormatPlan build_group3_plan();

// 12 groups of 4 (72 fixtures), the top two of each group plus the eight best
// thirds into a 32-team knockout with a third-place match: 104 fixtures.
[[nodiscard]] FormatPlan build_group4_plan();

[[nodiscard]] FormatPlan build_plan(Format f);

// Four-team double elimination (6 fixtures, no returnees), built from the
// same primitives as the 48-team bracket. Small enough to enumerate.
[[nodiscard]] FormatPlan build_mini_double_elim_plan();

}  // namespace cupsim
