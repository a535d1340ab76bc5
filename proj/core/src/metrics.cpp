#include "cupsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace cupsim {

std::string_view to_string(Interest i) {
  switch (i) {
    case Interest::high: return "high";
    case Interest::special: return "special";
    case Interest::regular: return "regular";
  }
  return "?";
}

double fairness_index(const std::vector<TeamIndex>& classification,
                      const std::vector<std::size_t>& skill_index, double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("fairness_index: gamma must be > 0");
  const std::size_t n = classification.size();
  if (skill_index.size() != n || n == 0) {
    throw std::invalid_argument("fairness_index: classification and skill order sizes differ");
  }
  std::vector<bool> seen(n, false);
  for (TeamIndex t : classification) {
    if (t >= n || seen[t]) throw std::invalid_argument("fairness_index: not a permutation");
    seen[t] = true;
  }
  const double dn = static_cast<double>(n);
  double total = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    const auto s = static_cast<double>(skill_index[classification[p]]);
    const double distance = std::abs(static_cast<double>(p) - s) / dn;
    total += distance * std::pow(1.0 - s / dn, gamma);
  }
  return total;
}

double normalized_rank(int fifa_rank) {
  require_valid_rank(fifa_rank);
  return 1.0 - static_cast<double>(std::min(fifa_rank, 50) - 1) / 50.0;
}

double rank_index(int home_rank, int away_rank) {
  return 100.0 * std::sqrt(normalized_rank(home_rank) * normalized_rank(away_rank));
}

int rank_distance(int home_rank, int away_rank) {
  require_valid_rank(home_rank);
  require_valid_rank(away_rank);
  return std::abs(home_rank - away_rank);
}

Interest interest_class(int home_rank, int away_rank, int threshold) {
  require_valid_rank(home_rank);
  require_valid_rank(away_rank);
  const int top = (home_rank <= threshold ? 1 : 0) + (away_rank <= threshold ? 1 : 0);
  if (top == 2) return Interest::high;
  if (top == 1) return Interest::special;
  return Interest::regular;
}

MatchMetrics match_metrics(int home_rank, int away_rank, int threshold) {
  return {rank_index(home_rank, away_rank), rank_distance(home_rank, away_rank),
          interest_class(home_rank, away_rank, threshold)};
}

std::vector<std::pair<TeamIndex, TeamIndex>> random_baseline(const Roster& roster,
                                                             std::size_t n_matches,
                                                             RngStream& rng) {
  if (n_matches == 0) throw std::invalid_argument("random_baseline: n_matches must be >= 1");
  const std::size_t n = roster.size();
  std::vector<std::pair<TeamIndex, TeamIndex>> pairs;
  pairs.reserve(n_matches);
  for (std::size_t i = 0; i < n_matches; ++i) {
    const auto a = static_cast<TeamIndex>(rng.below(n));
    auto b = static_cast<TeamIndex>(rng.below(n - 1));
    if (b >= a) ++b;
    pairs.emplace_back(a, b);
  }
  return pairs;
}

}  // namespace cupsim
