#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cupsim/match.hpp"

namespace cupsim {

using FixtureIndex = std::size_t;
using GroupIndex = std::size_t;

namespace source {

struct DrawSlot {
  std::size_t slot = 0;
  friend bool operator==(const DrawSlot&, const DrawSlot&) = default;
};
struct WinnerOf {
  FixtureIndex fixture = 0;
  friend bool operator==(const WinnerOf&, const WinnerOf&) = default;
};
struct LoserOf {
  FixtureIndex fixture = 0;
  friend bool operator==(const LoserOf&, const LoserOf&) = default;
};
// place is 1-based.
struct GroupRank {
  GroupIndex group = 0;
  int place = 1;
  friend bool operator==(const GroupRank&, const GroupRank&) = default;
};
// ordinal-th slot (1-based) reserved for the best teams finishing at `place`
// across all groups. Which qualifier lands in which slot is decided when the
// group stage ends.
struct BestPlaced {
  int place = 3;
  int ordinal = 1;
  friend bool operator==(const BestPlaced&, const BestPlaced&) = default;
};
// Promotion from the one-loss pool back into the main bracket (ordinal 1..n).
struct Returnee {
  int ordinal = 1;
  friend bool operator==(const Returnee&, const Returnee&) = default;
};
// The pool members that were not promoted, in pool order (ordinal 1..m).
struct Remaining {
  int ordinal = 1;
  friend bool operator==(const Remaining&, const Remaining&) = default;
};

}  // namespace source

using FixtureSource = std::variant<source::DrawSlot, source::WinnerOf, source::LoserOf,
                                   source::GroupRank, source::BestPlaced, source::Returnee,
                                   source::Remaining>;

enum class Bracket { main, repechage, group, knockout, final_stage };

// What losing a fixture means for the loser.
enum class Stakes {
  group,           // counts towards a group table only
  classificatory,  // loser drops to the repechage
  eliminatory,     // loser leaves the tournament
  placement,       // loser plays on for a final position (semifinals)
};

struct Fixture {
  std::string id;
  std::string round_tag;
  Bracket bracket = Bracket::knockout;
  Stakes stakes = Stakes::eliminatory;
  FixtureSource home;
  FixtureSource away;
  DecisionMode mode = DecisionMode::must_decide;
  std::optional<GroupIndex> group;
};

struct Group {
  std::string label;
  std::vector<std::size_t> slots;
  std::vector<FixtureIndex> fixtures;
};

// Teams leaving at the same stage share a band of final positions.
struct ClassificationTier {
  std::string label;
  // Losers of these fixtures are placed in this tier ...
  std::vector<FixtureIndex> losers_of;
  // ... or, for group stages, teams finishing at this place that did not
  // advance.
  std::optional<int> group_place;
};

struct ClassificationRule {
  std::string name;
  FixtureIndex final_fixture = 0;
  std::optional<FixtureIndex> third_place_fixture;
  std::vector<ClassificationTier> tiers;  // best band first
};

struct ReturneePool {
  std::vector<FixtureSource> members;  // in bracket order
  int promoted = 2;
};

struct FormatPlan {
  std::string name;
  std::size_t slot_count = 0;
  std::vector<Fixture> fixtures;
  std::vector<Group> groups;
  std::optional<ReturneePool> returnee_pool;
  ClassificationRule classification;

  [[nodiscard]] std::size_t fixture_count() const { return fixtures.size(); }
  [[nodiscard]] std::optional<FixtureIndex> find(std::string_view id) const;
};

// Throws std::logic_error describing the first inconsistency: forward or
// dangling references, group fixtures that must be decided, knockout
// fixtures that allow draws, slots drawn twice in a knockout round, tiers
// that do not account for every team.
void validate_plan(const FormatPlan& plan);

// Fixtures whose outcome must be known before `fixture` can be paired.
// Group fixtures also depend on the previous group fixture of each slot.
[[nodiscard]] std::vector<FixtureIndex> predecessors(const FormatPlan& plan, FixtureIndex fixture);

[[nodiscard]] std::string_view to_string(Bracket b);
[[nodiscard]] std::string_view to_string(Stakes s);
[[nodiscard]] std::string_view to_string(DecisionMode m);
[[nodiscard]] Bracket bracket_from_string(std::string_view s);
[[nodiscard]] Stakes stakes_from_string(std::string_view s);
[[nodiscard]] DecisionMode mode_from_string(std::string_view s);

// Human-readable source label, e.g. "W(M25)", "G03#2", "Returnee#1".
[[nodiscard]] std::string describe(const FormatPlan& plan, const FixtureSource& src);

// JSON document listing the plan (id, round_tag, bracket, sources, mode per
// fixture, plus groups, pool and classification tiers).
[[nodiscard]] std::string plan_to_json(const FormatPlan& plan, int indent = 2);
[[nodiscard]] FormatPlan plan_from_json(std::string_view text);

// Incremental construction helper shared by all format builders.
class PlanBuilder {
public:
  PlanBuilder(std::string name, std::size_t slot_count);

  FixtureIndex add(std::string round_tag, Bracket bracket, Stakes stakes, FixtureSource home,
                   FixtureSource away, DecisionMode mode = DecisionMode::must_decide);
  GroupIndex add_group(std::string label, std::vector<std::size_t> slots);
  FixtureIndex add_group_fixture(GroupIndex group, std::string round_tag, std::size_t home_slot,
                                 std::size_t away_slot);

  void set_returnee_pool(ReturneePool pool);
  ClassificationRule& classification() { return plan_.classification; }
  [[nodiscard]] const FormatPlan& peek() const { return plan_; }

  // Assigns ids M01.. in insertion order and validates.
  FormatPlan build() &&;

private:
  FormatPlan plan_;
};

}  // namespace cupsim
