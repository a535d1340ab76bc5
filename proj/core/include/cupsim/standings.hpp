#pragma once

#include <cstdint>
#include <vector>

#include "cupsim/match.hpp"
#include "cupsim/team.hpp"

namespace cupsim {

// Accumulated results. Points: 3 for a regulation win, 1 for any regulation
// draw (a shootout does not change the table), 0 for a regulation loss.
struct TeamRecord {
  int played = 0;
  int wins = 0;
  int draws = 0;
  int losses = 0;
  int shootout_wins = 0;
  int shootout_losses = 0;
  int goals_for = 0;
  int goals_against = 0;

  [[nodiscard]] int points() const { return 3 * wins + draws; }
  [[nodiscard]] int goal_difference() const { return goals_for - goals_against; }
  // Matches lost on the pitch or on penalties.
  [[nodiscard]] int decisive_losses() const { return losses + shootout_losses; }

  void add(int scored, int conceded, std::optional<bool> won_shootout = std::nullopt);

  friend bool operator==(const TeamRecord&, const TeamRecord&) = default;
};

// Credits both sides of a played match.
void credit(TeamRecord& home, TeamRecord& away, const MatchScore& score);

struct StandingEntry {
  TeamIndex team = 0;
  TeamRecord record;
  // Drawn once per tournament; lower wins a tie that survives points, goal
  // difference and goals scored.
  std::uint64_t lot = 0;
};

// Strict weak order: points, goal difference, goals scored (all descending),
// then lot ascending. Never consults FIFA rank.
[[nodiscard]] bool ranks_ahead(const StandingEntry& a, const StandingEntry& b);

// Entries best first.
[[nodiscard]] std::vector<StandingEntry> group_standings(std::vector<StandingEntry> entries);

// Top `promoted` of exactly `pool_size` one-loss candidates, best first.
// Throws std::invalid_argument on a wrong candidate count or a candidate
// without exactly one decisive loss.
[[nodiscard]] std::vector<StandingEntry> select_returnees(const std::vector<StandingEntry>& candidates,
                                                          std::size_t promoted = 2,
                                                          std::size_t pool_size = 18);

}  // namespace cupsim
