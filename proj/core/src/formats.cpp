#include "cupsim/formats.hpp"

#include <stdexcept>
#include <string>

namespace cupsim {

using source::BestPlaced;
using source::DrawSlot;
using source::GroupRank;
using source::LoserOf;
using source::Remaining;
using source::Returnee;
using source::WinnerOf;

std::string_view format_name(Format f) {
  switch (f) {
    case Format::double_elim_48: return "double-elim-48";
    case Format::group_of_3: return "group-of-3";
    case Format::group_of_4: return "group-of-4";
  }
  return "?";
}

Format parse_format(std::string_view name) {
  for (Format f : kAllFormats) {
    if (format_name(f) == name) return f;
  }
  throw std::invalid_argument("unknown format '" + std::string(name) +
                              "' (expected double-elim-48, group-of-3 or group-of-4)");
}

FormatPlan build_double_elim_plan() {
  PlanBuilder b("double-elim-48", 48);
  std::vector<FixtureIndex> r1, r2m, r2r, r3m, r3r, r4m, r4r, r5m, r5r, ko1, ko2;

  for (std::size_t k = 0; k < 24; ++k) {
    r1.push_back(b.add("R1", Bracket::main, Stakes::classificatory, DrawSlot{2 * k},
                       DrawSlot{2 * k + 1}));
  }
  for (std::size_t j = 0; j < 12; ++j) {
    r2m.push_back(b.add("R2-main", Bracket::main, Stakes::classificatory,
                        WinnerOf{r1[2 * j]}, WinnerOf{r1[2 * j + 1]}));
  }
  for (std::size_t j = 0; j < 12; ++j) {
    r2r.push_back(b.add("R2-repechage", Bracket::repechage, Stakes::eliminatory,
                        LoserOf{r1[2 * j]}, LoserOf{r1[2 * j + 1]}));
  }
  for (std::size_t j = 0; j < 6; ++j) {
    r3m.push_back(b.add("R3-main", Bracket::main, Stakes::classificatory,
                        WinnerOf{r2m[2 * j]}, WinnerOf{r2m[2 * j + 1]}));
  }
  // Each repechage survivor meets a main-bracket loser from the neighbouring
  // block of the draw, so nobody replays a round-1 or round-2 opponent.
  for (std::size_t j = 0; j < 12; ++j) {
    r3r.push_back(b.add("R3-repechage", Bracket::repechage, Stakes::eliminatory,
                        WinnerOf{r2r[j]}, LoserOf{r2m[j ^ 1U]}));
  }

  ReturneePool pool;
  pool.promoted = 2;
  for (std::size_t blk = 0; blk < 6; ++blk) {
    pool.members.push_back(LoserOf{r3m[blk]});
    pool.members.push_back(WinnerOf{r3r[2 * blk]});
    pool.members.push_back(WinnerOf{r3r[2 * blk + 1]});
  }
  b.set_returnee_pool(std::move(pool));

  r4m.push_back(b.add("R4-main", Bracket::main, Stakes::classificatory, WinnerOf{r3m[0]},
                      WinnerOf{r3m[1]}));
  r4m.push_back(b.add("R4-main", Bracket::main, Stakes::classificatory, WinnerOf{r3m[2]},
                      Returnee{2}));
  r4m.push_back(b.add("R4-main", Bracket::main, Stakes::classificatory, WinnerOf{r3m[3]},
                      WinnerOf{r3m[4]}));
  r4m.push_back(b.add("R4-main", Bracket::main, Stakes::classificatory, WinnerOf{r3m[5]},
                      Returnee{1}));
  for (int k = 0; k < 8; ++k) {
    r4r.push_back(b.add("R4-repechage", Bracket::repechage, Stakes::eliminatory,
                        Remaining{2 * k + 1}, Remaining{2 * k + 2}));
  }

  r5m.push_back(b.add("R5-main", Bracket::main, Stakes::classificatory, WinnerOf{r4m[0]},
                      WinnerOf{r4m[1]}));
  r5m.push_back(b.add("R5-main", Bracket::main, Stakes::classificatory, WinnerOf{r4m[2]},
                      WinnerOf{r4m[3]}));

  const auto rep = [&](FixtureSource home, FixtureSource away) {
    return b.add("R5-repechage", Bracket::repechage, Stakes::eliminatory, home, away);
  };
  r5r.push_back(rep(WinnerOf{r4r[0]}, LoserOf{r4m[0]}));
  r5r.push_back(rep(WinnerOf{r4r[1]}, WinnerOf{r4r[2]}));
  r5r.push_back(rep(WinnerOf{r4r[3]}, LoserOf{r4m[1]}));
  r5r.push_back(rep(WinnerOf{r4r[4]}, LoserOf{r4m[2]}));
  r5r.push_back(rep(WinnerOf{r4r[5]}, WinnerOf{r4r[6]}));
  r5r.push_back(rep(WinnerOf{r4r[7]}, LoserOf{r4m[3]}));

  // Round-5 main losers cross to the opposite wing of the knockout of eight.
  const auto ko = [&](const char* tag, FixtureSource home, FixtureSource away) {
    return b.add(tag, Bracket::repechage, Stakes::eliminatory, home, away);
  };
  ko1.push_back(ko("KO8-R1", WinnerOf{r5r[0]}, LoserOf{r5m[1]}));
  ko1.push_back(ko("KO8-R1", WinnerOf{r5r[1]}, WinnerOf{r5r[2]}));
  ko1.push_back(ko("KO8-R1", WinnerOf{r5r[3]}, LoserOf{r5m[0]}));
  ko1.push_back(ko("KO8-R1", WinnerOf{r5r[4]}, WinnerOf{r5r[5]}));
  ko2.push_back(ko("KO8-R2", WinnerOf{ko1[0]}, WinnerOf{ko1[1]}));
  ko2.push_back(ko("KO8-R2", WinnerOf{ko1[2]}, WinnerOf{ko1[3]}));

  const FixtureIndex sf1 = b.add("SF", Bracket::final_stage, Stakes::placement,
                                 WinnerOf{r5m[0]}, WinnerOf{ko2[0]});
  const FixtureIndex sf2 = b.add("SF", Bracket::final_stage, Stakes::placement,
                                 WinnerOf{r5m[1]}, WinnerOf{ko2[1]});
  const FixtureIndex third =
      b.add("3rd", Bracket::final_stage, Stakes::placement, LoserOf{sf1}, LoserOf{sf2});
  const FixtureIndex fin =
      b.add("F", Bracket::final_stage, Stakes::placement, WinnerOf{sf1}, WinnerOf{sf2});

  auto& rule = b.classification();
  rule.name = "stage-tiers";
  rule.final_fixture = fin;
  rule.third_place_fixture = third;
  rule.tiers = {
      {"KO8-R2 losers", ko2, std::nullopt},
      {"KO8-R1 losers", ko1, std::nullopt},
      {"R5-repechage losers", r5r, std::nullopt},
      {"R4-repechage losers", r4r, std::nullopt},
      {"R3-repechage losers", r3r, std::nullopt},
      {"R2-repechage losers", r2r, std::nullopt},
  };
  return std::move(b).build();
}

namespace {

std::string group_label(std::size_t g) { return std::string("Group ") + static_cast<char>('A' + g); }

struct KnockoutRounds {
  std::vector<FixtureIndex> r16, qf, sf;
  FixtureIndex third = 0;
  FixtureIndex fin = 0;
};

// Single elimination over 16 round-of-32 fixtures listed in bracket order.
KnockoutRounds add_knockout(PlanBuilder& b, const std::vector<FixtureIndex>& r32) {
  KnockoutRounds k;
  for (std::size_t i = 0; i < 8; ++i) {
    k.r16.push_back(b.add("R16", Bracket::knockout, Stakes::eliminatory, WinnerOf{r32[2 * i]},
                          WinnerOf{r32[2 * i + 1]}));
  }
  for (std::size_t i = 0; i < 4; ++i) {
    k.qf.push_back(b.add("QF", Bracket::knockout, Stakes::eliminatory, WinnerOf{k.r16[2 * i]},
                         WinnerOf{k.r16[2 * i + 1]}));
  }
  for (std::size_t i = 0; i < 2; ++i) {
    k.sf.push_back(b.add("SF", Bracket::final_stage, Stakes::placement, WinnerOf{k.qf[2 * i]},
                         WinnerOf{k.qf[2 * i + 1]}));
  }
  k.third = b.add("3rd", Bracket::final_stage, Stakes::placement, LoserOf{k.sf[0]},
                  LoserOf{k.sf[1]});
  k.fin = b.add("F", Bracket::final_stage, Stakes::placement, WinnerOf{k.sf[0]},
                WinnerOf{k.sf[1]});
  return k;
}

}  // namespace

FormatPlan build_group3_plan() {
  PlanBuilder b("group-of-3", 48);
  constexpr std::size_t kGroups = 16;
  for (std::size_t g = 0; g < kGroups; ++g) {
    b.add_group(group_label(g), {3 * g, 3 * g + 1, 3 * g + 2});
  }
  // Matchday pairs (home, away) by position in the group; one team rests.
  constexpr std::size_t kRounds[3][2] = {{0, 1}, {2, 0}, {1, 2}};
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t g = 0; g < kGroups; ++g) {
      b.add_group_fixture(g, "G" + std::to_string(r + 1), 3 * g + kRounds[r][0],
                          3 * g + kRounds[r][1]);
    }
  }
  // Winners meet the runner-up of the paired group; the two fixtures of a
  // group pair sit in opposite halves of the bracket.
  std::vector<FixtureIndex> r32;
  for (std::size_t half = 0; half < 2; ++half) {
    for (std::size_t p = 0; p < kGroups / 2; ++p) {
      const GroupIndex first = 2 * p + half;
      const GroupIndex second = 2 * p + (1 - half);
      r32.push_back(b.add("R32", Bracket::knockout, Stakes::eliminatory, GroupRank{first, 1},
                          GroupRank{second, 2}));
    }
  }
  const auto k = add_knockout(b, r32);
  auto& rule = b.classification();
  rule.name = "stage-tiers";
  rule.final_fixture = k.fin;
  rule.third_place_fixture = k.third;
  rule.tiers = {
      {"QF losers", k.qf, std::nullopt},
      {"R16 losers", k.r16, std::nullopt},
      {"R32 losers", r32, std::nullopt},
      {"group thirds", {}, 3},
  };
  return std::move(b).build();
}

FormatPlan build_group4_plan() {
  PlanBuilder b("group-of-4", 48);
  constexpr std::size_t kGroups = 12;
  for (std::size_t g = 0; g < kGroups; ++g) {
    b.add_group(group_label(g), {4 * g, 4 * g + 1, 4 * g + 2, 4 * g + 3});
  }
  constexpr std::size_t kRounds[3][2][2] = {
      {{0, 1}, {2, 3}}, {{0, 2}, {3, 1}}, {{3, 0}, {1, 2}}};
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t g = 0; g < kGroups; ++g) {
      for (const auto& pair : kRounds[r]) {
        b.add_group_fixture(g, "G" + std::to_string(r + 1), 4 * g + pair[0], 4 * g + pair[1]);
      }
    }
  }
  // Eight winners face a best third, four face a runner-up, eight runners-up
  // meet each other. A group's winner and runner-up are always in opposite
  // halves.
  const auto w = [](GroupIndex g) { return FixtureSource{GroupRank{g, 1}}; };
  const auto ru = [](GroupIndex g) { return FixtureSource{GroupRank{g, 2}}; };
  const auto third = [](int ordinal) { return FixtureSource{BestPlaced{3, ordinal}}; };
  const std::vector<std::pair<FixtureSource, FixtureSource>> bracket = {
      // top half
      {w(0), third(1)}, {w(1), third(2)}, {ru(4), ru(5)},  {w(8), ru(9)},
      {w(2), third(3)}, {w(3), third(4)}, {ru(6), ru(7)},  {w(10), ru(11)},
      // bottom half
      {w(4), third(5)}, {w(5), third(6)}, {ru(0), ru(1)},  {w(9), ru(8)},
      {w(6), third(7)}, {w(7), third(8)}, {ru(2), ru(3)},  {w(11), ru(10)},
  };
  std::vector<FixtureIndex> r32;
  for (const auto& [home, away] : bracket) {
    r32.push_back(b.add("R32", Bracket::knockout, Stakes::eliminatory, home, away));
  }
  const auto k = add_knockout(b, r32);
  auto& rule = b.classification();
  rule.name = "stage-tiers";
  rule.final_fixture = k.fin;
  rule.third_place_fixture = k.third;
  rule.tiers = {
      {"QF losers", k.qf, std::nullopt},
      {"R16 losers", k.r16, std::nullopt},
      {"R32 losers", r32, std::nullopt},
      {"non-qualified thirds", {}, 3},
      {"group fourths", {}, 4},
  };
  return std::move(b).build();
}

FormatPlan build_plan(Format f) {
  switch (f) {
    case Format::double_elim_48: return build_double_elim_plan();
    case Format::group_of_3: return build_group3_plan();
    case Format::group_of_4: return build_group4_plan();
  }
  throw std::invalid_argument("build_plan: unknown format");
}

FormatPlan build_mini_double_elim_plan() {
  PlanBuilder b("double-elim-4", 4);
  const auto m1 = b.add("R1", Bracket::main, Stakes::classificatory, DrawSlot{0}, DrawSlot{1});
  const auto m2 = b.add("R1", Bracket::main, Stakes::classificatory, DrawSlot{2}, DrawSlot{3});
  const auto m3 = b.add("R2-main", Bracket::main, Stakes::classificatory, WinnerOf{m1},
                        WinnerOf{m2});
  const auto m4 = b.add("R2-repechage", Bracket::repechage, Stakes::eliminatory, LoserOf{m1},
                        LoserOf{m2});
  const auto m5 = b.add("R3-repechage", Bracket::repechage, Stakes::eliminatory, WinnerOf{m4},
                        LoserOf{m3});
  const auto fin =
      b.add("F", Bracket::final_stage, Stakes::placement, WinnerOf{m3}, WinnerOf{m5});
  auto& rule = b.classification();
  rule.name = "stage-tiers";
  rule.final_fixture = fin;
  rule.tiers = {{"R3-repechage losers", {m5}, std::nullopt},
                {"R2-repechage losers", {m4}, std::nullopt}};
  return std::move(b).build();
}

}  // namespace cupsim
