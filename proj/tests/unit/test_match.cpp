#include <gtest/gtest.h>

#include <sstream>
#include <vector>

#include "cupsim/match.hpp"
#include "oracles.hpp"

using namespace cupsim;

TEST(GoalRate, MatchesFormula) {
  for (int r = 1; r <= 80; ++r) EXPECT_DOUBLE_EQ(goal_rate(r), oracle::goal_rate(r)) << r;
  EXPECT_NEAR(goal_rate(1), 2.172, 1e-12);
  EXPECT_NEAR(goal_rate(50), 0.8, 1e-12);
  EXPECT_DOUBLE_EQ(goal_rate(50), goal_rate(120));
  EXPECT_THROW((void)goal_rate(0), InvalidRankError);
}

TEST(Poisson, MeanAndVariance) {
  RngStream rng(3);
  for (double lambda : {0.8, 1.5, 2.172}) {
    const int n = 100000;
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
      const int k = sample_poisson(lambda, rng);
      ASSERT_GE(k, 0);
      s += k;
      s2 += static_cast<double>(k) * k;
    }
    const double mean = s / n;
    EXPECT_NEAR(mean, lambda, 5 * std::sqrt(lambda / n));
    EXPECT_NEAR(s2 / n - mean * mean, lambda, 0.05);
  }
}

TEST(Poisson, ChiSquareGoodnessOfFit) {
  RngStream rng(21);
  const double lambda = goal_rate(25);
  const int n = 100000;
  const int top = 7;  // bins 0..6 and >= 7
  std::vector<double> observed(top + 1, 0);
  for (int i = 0; i < n; ++i) ++observed[std::min(sample_poisson(lambda, rng), top)];
  double chi2 = 0, tail = 1;
  for (int k = 0; k <= top; ++k) {
    const double p = k < top ? oracle::poisson_pmf(k, lambda) : tail;
    if (k < top) tail -= p;
    chi2 += (observed[k] - n * p) * (observed[k] - n * p) / (n * p);
  }
  EXPECT_LT(chi2, oracle::chi_square_critical(top, oracle::kZ999));
}

TEST(Model, OutcomeProbabilitiesMatchOracle) {
  for (int a : {1, 8, 25, 48, 60}) {
    for (int b : {1, 13, 25, 50}) {
      const auto p = outcome_probabilities(a, b);
      const auto o = oracle::outcome(a, b);
      EXPECT_NEAR(p.win, o.win, 1e-12);
      EXPECT_NEAR(p.draw, o.draw, 1e-12);
      EXPECT_NEAR(p.loss, o.loss, 1e-12);
      EXPECT_NEAR(p.win + p.draw + p.loss, 1.0, 1e-12);
    }
  }
}

TEST(Model, EqualRanksDrawProbability) {
  const auto o = oracle::outcome(25, 25);
  EXPECT_NEAR(o.draw, 0.2430, 5e-5);
  RngStream rng(77);
  const int n = 100000;
  int draws = 0;
  for (int i = 0; i < n; ++i) {
    draws += simulate_regulation(25, 25, rng).regulation_draw();
  }
  EXPECT_NEAR(draws / static_cast<double>(n), o.draw, 0.005);
}

TEST(Model, StrongTeamFavoured) {
  EXPECT_GT(outcome_probabilities(1, 50).win, 0.6);
  for (int r = 1; r < 50; ++r) {
    EXPECT_GT(outcome_probabilities(r, 30).win, outcome_probabilities(r + 1, 30).win);
  }
  const auto sym = outcome_probabilities(10, 40);
  const auto rev = outcome_probabilities(40, 10);
  EXPECT_NEAR(sym.win, rev.loss, 1e-15);
}

TEST(Match, MustDecideAlwaysHasWinner) {
  RngStream rng(5);
  int shootouts = 0;
  for (int i = 0; i < 20000; ++i) {
    const auto s = play_match(20, 20, DecisionMode::must_decide, rng);
    ASSERT_TRUE(s.winner().has_value());
    if (s.regulation_draw()) {
      ASSERT_TRUE(s.shootout_winner.has_value());
      ++shootouts;
    } else {
      ASSERT_FALSE(s.shootout_winner.has_value());
    }
  }
  EXPECT_GT(shootouts, 0);
}

TEST(Match, DrawAllowedNeverShootout) {
  RngStream rng(6);
  for (int i = 0; i < 5000; ++i) {
    const auto s = play_match(20, 20, DecisionMode::draw_allowed, rng);
    ASSERT_FALSE(s.shootout_winner.has_value());
    EXPECT_EQ(s.winner().has_value(), !s.regulation_draw());
  }
}

TEST(Match, ShootoutIgnoresRank) {
  RngStream rng(8);
  int home = 0, total = 0;
  for (int i = 0; i < 200000 && total < 40000; ++i) {
    const auto s = play_match(1, 48, DecisionMode::must_decide, rng);
    if (s.shootout_winner) {
      ++total;
      home += *s.shootout_winner == Side::home;
    }
  }
  ASSERT_GT(total, 10000);
  EXPECT_NEAR(home / static_cast<double>(total), 0.5, 0.015);
}

TEST(Match, SameSeedSameScore) {
  RngStream a(99), b(99);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(play_match(3, 30, DecisionMode::must_decide, a),
              play_match(3, 30, DecisionMode::must_decide, b));
  }
}

TEST(ModelCurve, UnitBinsAverageOrderedPairs) {
  const auto rows = model_outcome_curve(unit_rank_diff_bins(4), 4);
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows.front().bin.lo, -3);
  EXPECT_EQ(rows.front().pairs, 1u);  // (4, 1)
  EXPECT_EQ(rows[3].pairs, 4u);       // diff 0
  const auto o = oracle::outcome(4, 1);
  EXPECT_NEAR(rows.front().p.win, o.win, 1e-12);
  for (const auto& row : rows) EXPECT_NEAR(row.p.win + row.p.draw + row.p.loss, 1.0, 1e-12);
}

TEST(ModelCurve, EmptyBinsOmitted) {
  const auto rows = model_outcome_curve({{-100, -60}, {0, 0}, {60, 100}}, 48);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].bin.lo, 0);
}

TEST(ModelCurve, CsvHeader) {
  std::ostringstream out;
  write_outcome_curve_csv(out, model_outcome_curve({{-5, 5}}, 48));
  EXPECT_EQ(out.str().substr(0, 29), "rank_diff,p_win,p_draw,p_loss");
  EXPECT_NE(out.str().find("-5..5,"), std::string::npos);
}
