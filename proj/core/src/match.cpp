#include "cupsim/match.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cupsim/csv.hpp"

namespace cupsim {

std::optional<Side> MatchScore::winner() const {
  if (home_goals > away_goals) return Side::home;
  if (away_goals > home_goals) return Side::away;
  return shootout_winner;
}

double goal_rate(int fifa_rank) {
  require_valid_rank(fifa_rank);
  const double capped = static_cast<double>(std::min(fifa_rank, 50));
  return 1.5 + 0.7 * (1.0 - 2.0 * (capped / 50.0));
}

int sample_poisson(double lambda, RngStream& rng) {
  if (!(lambda > 0.0) || lambda > 30.0) {
    throw std::invalid_argument("sample_poisson: lambda out of supported range");
  }
  const double u = rng.uniform01();
  int k = 0;
  double pmf = std::exp(-lambda);
  double cdf = pmf;
  // The cap only matters when u lands within rounding noise of 1.
  while (u >= cdf && k < 200) {
    ++k;
    pmf *= lambda / k;
    cdf += pmf;
  }
  return k;
}

MatchScore simulate_regulation(int home_rank, int away_rank, RngStream& rng) {
  const double home_rate = goal_rate(home_rank);
  const double away_rate = goal_rate(away_rank);
  MatchScore score;
  score.home_goals = sample_poisson(home_rate, rng);
  score.away_goals = sample_poisson(away_rate, rng);
  return score;
}

MatchScore simulate_regulation(const Team& home, const Team& away, RngStream& rng) {
  return simulate_regulation(home.fifa_rank, away.fifa_rank, rng);
}

Side simulate_shootout(RngStream& rng) { return rng.coin() ? Side::home : Side::away; }

MatchScore play_match(int home_rank, int away_rank, DecisionMode mode, RngStream& rng) {
  MatchScore score = simulate_regulation(home_rank, away_rank, rng);
  if (mode == DecisionMode::must_decide && score.regulation_draw()) {
    score.shootout_winner = simulate_shootout(rng);
  }
  return score;
}

MatchScore play_match(const Team& home, const Team& away, DecisionMode mode, RngStream& rng) {
  return play_match(home.fifa_rank, away.fifa_rank, mode, rng);
}

namespace {

std::vector<double> poisson_pmf(double lambda, int max_k) {
  std::vector<double> pmf(static_cast<std::size_t>(max_k) + 1);
  pmf[0] = std::exp(-lambda);
  for (int k = 1; k <= max_k; ++k) {
    pmf[static_cast<std::size_t>(k)] = pmf[static_cast<std::size_t>(k) - 1] * lambda / k;
  }
  return pmf;
}

}  // namespace

OutcomeProbabilities outcome_probabilities(int team_rank, int opponent_rank, int max_goals) {
  if (max_goals < 0) throw std::invalid_argument("outcome_probabilities: max_goals < 0");
  const auto a = poisson_pmf(goal_rate(team_rank), max_goals);
  const auto b = poisson_pmf(goal_rate(opponent_rank), max_goals);
  OutcomeProbabilities p;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double joint = a[i] * b[j];
      if (i > j) {
        p.win += joint;
      } else if (i == j) {
        p.draw += joint;
      } else {
        p.loss += joint;
      }
    }
  }
  return p;
}

std::vector<OutcomeCurveRow> model_outcome_curve(const std::vector<RankDiffBin>& bins,
                                                 int max_rank) {
  require_valid_rank(max_rank);
  std::vector<OutcomeCurveRow> rows;
  for (const RankDiffBin& bin : bins) {
    if (bin.lo > bin.hi) throw std::invalid_argument("model_outcome_curve: bin lo > hi");
    OutcomeCurveRow row{bin, 0, {}};
    for (int team = 1; team <= max_rank; ++team) {
      for (int opp = 1; opp <= max_rank; ++opp) {
        const int diff = opp - team;
        if (diff < bin.lo || diff > bin.hi) continue;
        const auto p = outcome_probabilities(team, opp);
        row.p.win += p.win;
        row.p.draw += p.draw;
        row.p.loss += p.loss;
        ++row.pairs;
      }
    }
    if (row.pairs == 0) continue;
    const double n = static_cast<double>(row.pairs);
    row.p.win /= n;
    row.p.draw /= n;
    row.p.loss /= n;
    rows.push_back(row);
  }
  return rows;
}

std::vector<RankDiffBin> unit_rank_diff_bins(int max_rank) {
  std::vector<RankDiffBin> bins;
  for (int d = -(max_rank - 1); d <= max_rank - 1; ++d) bins.push_back({d, d});
  return bins;
}

void write_outcome_curve_csv(std::ostream& out, const std::vector<OutcomeCurveRow>& rows) {
  out << "rank_diff,p_win,p_draw,p_loss\n";
  for (const auto& row : rows) {
    std::string label = std::to_string(row.bin.lo);
    if (row.bin.hi != row.bin.lo) label += ".." + std::to_string(row.bin.hi);
    csv::write_row(out, {label, csv::format_double(row.p.win), csv::format_double(row.p.draw),
                         csv::format_double(row.p.loss)});
  }
}

}  // namespace cupsim
