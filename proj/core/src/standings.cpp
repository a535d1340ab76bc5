#include "cupsim/standings.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cupsim {

void TeamRecord::add(int scored, int conceded, std::optional<bool> won_shootout) {
  ++played;
  goals_for += scored;
  goals_against += conceded;
  if (scored > conceded) {
    ++wins;
  } else if (scored < conceded) {
    ++losses;
  } else {
    ++draws;
    if (won_shootout) {
      if (*won_shootout) {
        ++shootout_wins;
      } else {
        ++shootout_losses;
      }
    }
  }
}

void credit(TeamRecord& home, TeamRecord& away, const MatchScore& score) {
  std::optional<bool> home_shootout;
  std::optional<bool> away_shootout;
  if (score.shootout_winner) {
    home_shootout = *score.shootout_winner == Side::home;
    away_shootout = !*home_shootout;
  }
  home.add(score.home_goals, score.away_goals, home_shootout);
  away.add(score.away_goals, score.home_goals, away_shootout);
}

bool ranks_ahead(const StandingEntry& a, const StandingEntry& b) {
  const auto& ra = a.record;
  const auto& rb = b.record;
  if (ra.points() != rb.points()) return ra.points() > rb.points();
  if (ra.goal_difference() != rb.goal_difference()) {
    return ra.goal_difference() > rb.goal_difference();
  }
  if (ra.goals_for != rb.goals_for) return ra.goals_for > rb.goals_for;
  if (a.lot != b.lot) return a.lot < b.lot;
  return a.team < b.team;
}

std::vector<StandingEntry> group_standings(std::vector<StandingEntry> entries) {
  std::sort(entries.begin(), entries.end(), ranks_ahead);
  return entries;
}

std::vector<StandingEntry> select_returnees(const std::vector<StandingEntry>& candidates,
                                            std::size_t promoted, std::size_t pool_size) {
  if (candidates.size() != pool_size) {
    throw std::invalid_argument("select_returnees: expected " + std::to_string(pool_size) +
                                " candidates, got " + std::to_string(candidates.size()));
  }
  if (promoted == 0 || promoted >= pool_size) {
    throw std::invalid_argument("select_returnees: cannot promote " + std::to_string(promoted));
  }
  for (const auto& c : candidates) {
    if (c.record.decisive_losses() != 1) {
      throw std::invalid_argument("select_returnees: candidate without exactly one loss");
    }
  }
  auto ranked = group_standings(candidates);
  ranked.resize(promoted);
  return ranked;
}

}  // namespace cupsim
