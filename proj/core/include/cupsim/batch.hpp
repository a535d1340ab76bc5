#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cupsim/formats.hpp"
#include "cupsim/metrics.hpp"
#include "cupsim/team.hpp"

namespace cupsim {

struct BatchConfig {
  Format format = Format::double_elim_48;
  std::size_t n_runs = 1;
  std::uint64_t base_seed = 0;
  double gamma = 2.0;
  int interest_threshold = 8;
  // 0 = hardware concurrency. Output does not depend on this.
  unsigned threads = 1;
  // Keep per-match metrics for every run (needed for the per-match export).
  bool keep_match_metrics = false;
};

// Substream index reserved for the random-pairing baseline. Run i uses
// substream i of RngStream(base_seed).
inline constexpr std::uint64_t kBaselineStream = ~std::uint64_t{0};

struct RunSample {
  double fairness = 0.0;
  std::array<std::size_t, 3> interest_counts{};  // indexed by Interest
  std::size_t matches = 0;
  std::vector<MatchMetrics> match_metrics;  // only with keep_match_metrics
};

// Fixed-width histogram with a random-pairing baseline on the same bins.
struct Histogram {
  double lo = 0.0;
  double width = 1.0;
  std::vector<std::uint64_t> counts;
  std::vector<std::uint64_t> baseline_counts;

  [[nodiscard]] std::size_t bins() const { return counts.size(); }
  [[nodiscard]] std::uint64_t total() const;
  [[nodiscard]] std::uint64_t baseline_total() const;
  [[nodiscard]] double frequency(std::size_t bin) const;
  [[nodiscard]] double baseline_frequency(std::size_t bin) const;
  // frequency / baseline_frequency; empty when the baseline bin is empty.
  [[nodiscard]] std::optional<double> relative(std::size_t bin) const;
  [[nodiscard]] std::size_t bin_of(double value) const;
};

struct BatchSummary {
  std::string format;
  std::size_t n_runs = 0;
  std::uint64_t base_seed = 0;
  double gamma = 0.0;
  int interest_threshold = 8;
  std::size_t fixture_count = 0;
  std::vector<int> roster_ranks;  // sorted, identifies the roster for comparisons

  std::vector<double> fairness_sorted;
  Histogram rank_index;     // 20 bins of width 5 on [0, 100]
  Histogram rank_distance;  // unit bins from 0
  // interest_distribution[c][k] = runs with exactly k matches of class c.
  std::array<std::vector<std::uint64_t>, 3> interest_distribution;
  std::array<double, 3> interest_mean{};
  std::array<double, 3> interest_stderr{};
  double matches_mean = 0.0;
  double matches_variance = 0.0;

  // Empirical CDF of the fairness index at x.
  [[nodiscard]] double fairness_cdf(double x) const;
  // Lower empirical quantile (order statistic ceil(q n)).
  [[nodiscard]] double fairness_quantile(double q) const;
};

struct BatchResult {
  BatchSummary summary;
  std::vector<RunSample> runs;
};

[[nodiscard]] BatchResult run_batch(const BatchConfig& config, const Roster& roster);

// Format-level comparison of three summaries built on the same roster, run
// count and gamma.
struct FormatFigures {
  std::string format;
  std::size_t fixture_count = 0;
  std::array<double, 3> interest_mean{};
  double fairness_q25 = 0.0;
  double fairness_median = 0.0;
  double competitive_relative = 0.0;  // P(rd <= 10) / baseline P(rd <= 10)
  double elite_relative = 0.0;        // P(ri >= 75) / baseline P(ri >= 75)
};

struct ComparisonReport {
  FormatFigures double_elim;
  FormatFigures group3;
  FormatFigures group4;
  // double-elim mean count divided by the other format's, per Interest.
  std::array<double, 3> ratio_vs_group3{};
  std::array<double, 3> ratio_vs_group4{};
  bool fairer_than_group3 = false;  // lower FI at the lower quartile and median
  bool fairer_than_group4 = false;
  bool more_competitive = false;    // competitive_relative above both others
};

// Throws std::invalid_argument if the summaries are not one per format or
// were computed with different rosters, run counts or gamma.
[[nodiscard]] ComparisonReport compare_formats(const std::vector<BatchSummary>& summaries);

[[nodiscard]] double competitive_share(const Histogram& rank_distance, int max_distance,
                                       bool baseline);

// Plot-ready exports. Every file carries a leading `format` column so the
// three formats can be concatenated.
void write_fairness_cdf_csv(std::ostream& out, const std::vector<BatchSummary>& summaries);
void write_rank_index_csv(std::ostream& out, const std::vector<BatchSummary>& summaries);
void write_rank_distance_csv(std::ostream& out, const std::vector<BatchSummary>& summaries);
void write_interest_counts_csv(std::ostream& out, const std::vector<BatchSummary>& summaries);
// run_id,fairness_index
void write_run_fairness_csv(std::ostream& out, const BatchResult& result);
// run_id,fixture_id,rank_index,rank_distance,interest
void write_match_metrics_csv(std::ostream& out, const BatchResult& result,
                             const FormatPlan& plan);

[[nodiscard]] std::string summary_to_json(const BatchSummary& summary, int indent = 2);
[[nodiscard]] std::string comparison_to_json(const ComparisonReport& report, int indent = 2);

}  // namespace cupsim
