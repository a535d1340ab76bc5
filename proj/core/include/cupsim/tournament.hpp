#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <vector>

#include "cupsim/plan.hpp"
#include "cupsim/rng.hpp"
#include "cupsim/standings.hpp"
#include "cupsim/team.hpp"

namespace cupsim {

// slot -> team
using DrawAssignment = std::vector<TeamIndex>;

// Uniform random bijection of the roster onto the plan's draw slots
// (Fisher-Yates on the stream). Throws std::invalid_argument when the
// roster size differs from the plan's slot count.
[[nodiscard]] DrawAssignment draw_assignment(const Roster& roster, const FormatPlan& plan,
                                             RngStream& rng);

struct PlayedMatch {
  FixtureIndex fixture = 0;
  TeamIndex home = 0;
  TeamIndex away = 0;
  MatchScore score;

  [[nodiscard]] TeamIndex winner() const;
  [[nodiscard]] TeamIndex loser() const;
};

struct TournamentResult {
  std::string format;
  DrawAssignment draw;
  std::vector<std::uint64_t> lots;  // per team
  std::vector<PlayedMatch> match_log;  // plan order
  std::vector<TeamIndex> classification;  // [0] = champion
  std::vector<TeamRecord> records;  // per team, whole tournament
  // Losses in bracket fixtures since the team last (re)entered the main
  // bracket; a returnee starts again from zero.
  std::vector<int> bracket_losses;
  std::vector<std::optional<FixtureIndex>> eliminated_in;
  std::vector<TeamIndex> returnees;  // promotion order

  [[nodiscard]] std::size_t position_of(TeamIndex team) const;
  [[nodiscard]] bool is_returnee(TeamIndex team) const;
};

// Decides one fixture. The default plays the Poisson model with the
// fixture's decision mode; tests substitute scripted outcomes.
using MatchPlayer =
    std::function<MatchScore(const Fixture& fixture, const Team& home, const Team& away,
                             RngStream& rng)>;

// Resolves fixtures in plan order, then classifies. Randomness is consumed
// as: draw, one lot per team, then matches in plan order.
[[nodiscard]] TournamentResult run_tournament(const FormatPlan& plan, const Roster& roster,
                                              RngStream& rng, const MatchPlayer& player = {});

// Final positions from a complete match log: final and third-place fixtures
// fix the top four, remaining teams are banded by the plan's tiers and
// ordered inside a band by whole-tournament record, then lot. Throws
// std::logic_error if the log does not determine every position.
[[nodiscard]] std::vector<TeamIndex> classify_final(const FormatPlan& plan,
                                                    const std::vector<PlayedMatch>& log,
                                                    const std::vector<std::uint64_t>& lots,
                                                    std::size_t team_count);

// Per-group standings computed from the group fixtures in the log.
[[nodiscard]] std::vector<std::vector<StandingEntry>> group_tables(
    const FormatPlan& plan, const std::vector<PlayedMatch>& log,
    const std::vector<std::uint64_t>& lots);

// CSV with header fixture_id,home,away,home_goals,away_goals,shootout_winner.
void write_match_log_csv(std::ostream& out, const FormatPlan& plan, const Roster& roster,
                         const std::vector<PlayedMatch>& log);

}  // namespace cupsim
