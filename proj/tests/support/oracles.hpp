#pragma once

// Reference computations written from the model and metric definitions
// alone, without calling into the library.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <vector>

namespace oracle {

inline double goal_rate(int rank) {
  const double r = std::min(rank, 50);
  return 1.5 + 0.7 * (1.0 - 2.0 * r / 50.0);
}

inline double poisson_pmf(int k, double lambda) {
  return std::exp(k * std::log(lambda) - lambda - std::lgamma(k + 1.0));
}

struct Wdl {
  double win = 0, draw = 0, loss = 0;
};

// Regulation outcome of `a` against `b`, goal counts 0..max_goals.
inline Wdl outcome(int rank_a, int rank_b, int max_goals = 40) {
  const double la = goal_rate(rank_a);
  const double lb = goal_rate(rank_b);
  Wdl w;
  for (int i = 0; i <= max_goals; ++i) {
    for (int j = 0; j <= max_goals; ++j) {
      const double p = poisson_pmf(i, la) * poisson_pmf(j, lb);
      if (i > j) w.win += p;
      else if (i == j) w.draw += p;
      else w.loss += p;
    }
  }
  return w;
}

// classification[p] = FIFA rank of the team finishing at 0-based position p;
// ranks are distinct, skill is their ascending order.
inline double fairness_bruteforce(const std::vector<int>& classification_ranks, double gamma) {
  std::vector<int> sorted = classification_ranks;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(classification_ranks.size());
  double total = 0;
  for (std::size_t p = 0; p < classification_ranks.size(); ++p) {
    std::size_t s = 0;
    while (sorted[s] != classification_ranks[p]) ++s;
    const double dist = std::fabs(static_cast<double>(p) - static_cast<double>(s)) / n;
    total += dist * std::pow(1.0 - static_cast<double>(s) / n, gamma);
  }
  return total;
}

inline double rank_index(int a, int b) {
  const auto n = [](int r) { return 1.0 - (std::min(r, 50) - 1) / 50.0; };
  return 100.0 * std::sqrt(n(a) * n(b));
}

inline int rank_distance(int a, int b) { return a > b ? a - b : b - a; }

// Mean |a - b| over unordered distinct pairs of 1..n.
inline double mean_pair_distance(int n) {
  double sum = 0, count = 0;
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      sum += b - a;
      count += 1;
    }
  }
  return sum / count;
}

// Probability of each 5-wide rank-index bin for a uniform pair of distinct
// ranks 1..n.
inline std::array<double, 20> baseline_rank_index_bins(int n) {
  std::array<double, 20> bins{};
  double count = 0;
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      const double ri = rank_index(a, b);
      bins[std::min<std::size_t>(static_cast<std::size_t>(ri / 5.0), 19)] += 1;
      count += 1;
    }
  }
  for (double& v : bins) v /= count;
  return bins;
}

// Four-team double elimination, fixtures in order:
//   1: s0-s1  2: s2-s3  3: W1-W2  4: L1-L2 (loser out)  5: W4-L3 (loser out)
//   6: W3-W5 final.
// home_wins[i] says whether the first-listed team of fixture i+1 wins.
// Returns the 0-based slots in finishing order.
inline std::array<int, 4> mini_double_elim(const std::array<bool, 6>& home_wins) {
  const auto play = [&](int fixture, int home, int away, int& winner, int& loser) {
    winner = home_wins[fixture - 1] ? home : away;
    loser = home_wins[fixture - 1] ? away : home;
  };
  int w1, l1, w2, l2, w3, l3, w4, l4, w5, l5, w6, l6;
  play(1, 0, 1, w1, l1);
  play(2, 2, 3, w2, l2);
  play(3, w1, w2, w3, l3);
  play(4, l1, l2, w4, l4);
  play(5, w4, l3, w5, l5);
  play(6, w3, w5, w6, l6);
  return {w6, l6, l5, l4};
}

// Upper critical value of the chi-square distribution, from the
// Wilson-Hilferty cube approximation with the normal quantile z.
inline double chi_square_critical(double dof, double z) {
  const double t = 2.0 / (9.0 * dof);
  const double c = 1.0 - t + z * std::sqrt(t);
  return dof * c * c * c;
}

// Standard normal upper quantile for alpha = 0.001.
inline constexpr double kZ999 = 3.090232306167813;

}  // namespace oracle
