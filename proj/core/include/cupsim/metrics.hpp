#pragma once

#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

#include "cupsim/rng.hpp"
#include "cupsim/team.hpp"

namespace cupsim {

enum class Interest { high, special, regular };

[[nodiscard]] std::string_view to_string(Interest i);

// Position-weighted distance between a final classification and skill order:
//   sum over positions p of |p - s(p)| / n * (1 - s(p) / n)^gamma
// with s(p) the 0-based skill index of the team finishing at 0-based
// position p and n the number of teams. 0 means the table matches skill order.
// Throws std::invalid_argument if `classification` is not a permutation of
// 0..n-1 or gamma <= 0.
[[nodiscard]] double fairness_index(const std::vector<TeamIndex>& classification,
                                    const std::vector<std::size_t>& skill_index, double gamma);

// Normalised rank quality 1 - (min(rank, 50) - 1) / 50, in [0.02, 1].
[[nodiscard]] double normalized_rank(int fifa_rank);

// Geometric mean of the two normalised ranks on a 0..100 scale; 2 at worst.
[[nodiscard]] double rank_index(int home_rank, int away_rank);

// |home - away|, uncapped.
[[nodiscard]] int rank_distance(int home_rank, int away_rank);

[[nodiscard]] Interest interest_class(int home_rank, int away_rank, int threshold = 8);

struct MatchMetrics {
  double rank_index = 0.0;
  int rank_distance = 0;
  Interest interest = Interest::regular;
};

[[nodiscard]] MatchMetrics match_metrics(int home_rank, int away_rank, int threshold = 8);

// n independent pairs, each uniform over the unordered pairs of distinct
// roster teams. Pairs are drawn with replacement across matches.
[[nodiscard]] std::vector<std::pair<TeamIndex, TeamIndex>> random_baseline(const Roster& roster,
                                                                           std::size_t n_matches,
                                                                           RngStream& rng);

}  // namespace cupsim
