#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "cupsim/rng.hpp"
#include "cupsim/team.hpp"

namespace cupsim {

enum class Side { home, away };
enum class DecisionMode { draw_allowed, must_decide };

[[nodiscard]] constexpr Side other(Side s) { return s == Side::home ? Side::away : Side::home; }

struct MatchScore {
  int home_goals = 0;
  int away_goals = 0;
  // Set only for a regulation draw in a must-decide fixture.
  std::optional<Side> shootout_winner;

  [[nodiscard]] bool regulation_draw() const { return home_goals == away_goals; }
  // Winning side, if the match was decided (regulation or shootout).
  [[nodiscard]] std::optional<Side> winner() const;

  friend bool operator==(const MatchScore&, const MatchScore&) = default;
};

// Expected goals per match: 1.5 + 0.7 * (1 - 2 * min(rank, 50) / 50).
// Ranges over [0.8, 2.172]; flat for rank >= 50.
[[nodiscard]] double goal_rate(int fifa_rank);

// Inverse-transform Poisson sampler (exact for the small rates used here).
[[nodiscard]] int sample_poisson(double lambda, RngStream& rng);

// Independent Poisson goal counts; no home advantage.
[[nodiscard]] MatchScore simulate_regulation(int home_rank, int away_rank, RngStream& rng);
[[nodiscard]] MatchScore simulate_regulation(const Team& home, const Team& away, RngStream& rng);

// Fair coin; ranks deliberately do not enter.
[[nodiscard]] Side simulate_shootout(RngStream& rng);

[[nodiscard]] MatchScore play_match(const Team& home, const Team& away, DecisionMode mode,
                                    RngStream& rng);
[[nodiscard]] MatchScore play_match(int home_rank, int away_rank, DecisionMode mode,
                                    RngStream& rng);

struct OutcomeProbabilities {
  double win = 0.0;   // for the first team
  double draw = 0.0;
  double loss = 0.0;
};

// Regulation W/D/L for `team` against `opponent` from the truncated Poisson
// double sum (goal counts 0..max_goals each).
[[nodiscard]] OutcomeProbabilities outcome_probabilities(int team_rank, int opponent_rank,
                                                         int max_goals = 30);

// Inclusive band of rank differences, where difference = opponent rank - team
// rank (positive: the team is better ranked).
struct RankDiffBin {
  int lo = 0;
  int hi = 0;
};

struct OutcomeCurveRow {
  RankDiffBin bin;
  std::size_t pairs = 0;  // ordered rank pairs averaged into this row
  OutcomeProbabilities p;
};

// Averages outcome_probabilities over every ordered pair of ranks in
// [1, max_rank] whose difference falls in each bin. Bins with no pair are
// omitted from the result rather than reported as zero.
[[nodiscard]] std::vector<OutcomeCurveRow> model_outcome_curve(const std::vector<RankDiffBin>& bins,
                                                               int max_rank = 48);

// Unit bins -(max_rank-1) .. (max_rank-1).
[[nodiscard]] std::vector<RankDiffBin> unit_rank_diff_bins(int max_rank = 48);

// CSV with header rank_diff,p_win,p_draw,p_loss. rank_diff is the bin's lo
// for unit bins, "lo..hi" otherwise.
void write_outcome_curve_csv(std::ostream& out, const std::vector<OutcomeCurveRow>& rows);

}  // namespace cupsim
