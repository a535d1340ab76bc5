#include "cupsim/batch.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "cupsim/csv.hpp"
#include "cupsim/tournament.hpp"

namespace cupsim {

std::uint64_t Histogram::total() const {
  std::uint64_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

std::uint64_t Histogram::baseline_total() const {
  std::uint64_t t = 0;
  for (auto c : baseline_counts) t += c;
  return t;
}

double Histogram::frequency(std::size_t bin) const {
  const auto t = total();
  return t == 0 ? 0.0 : static_cast<double>(counts.at(bin)) / static_cast<double>(t);
}

double Histogram::baseline_frequency(std::size_t bin) const {
  const auto t = baseline_total();
  return t == 0 ? 0.0 : static_cast<double>(baseline_counts.at(bin)) / static_cast<double>(t);
}

std::optional<double> Histogram::relative(std::size_t bin) const {
  const double base = baseline_frequency(bin);
  if (base == 0.0) return std::nullopt;
  return frequency(bin) / base;
}

std::size_t Histogram::bin_of(double value) const {
  const double pos = std::floor((value - lo) / width);
  if (pos < 0.0) return 0;
  return std::min(static_cast<std::size_t>(pos), counts.size() - 1);
}

double BatchSummary::fairness_cdf(double x) const {
  if (fairness_sorted.empty()) return 0.0;
  const auto it = std::upper_bound(fairness_sorted.begin(), fairness_sorted.end(), x);
  return static_cast<double>(it - fairness_sorted.begin()) /
         static_cast<double>(fairness_sorted.size());
}

double BatchSummary::fairness_quantile(double q) const {
  if (fairness_sorted.empty()) throw std::logic_error("fairness_quantile: no samples");
  const double n = static_cast<double>(fairness_sorted.size());
  auto k = static_cast<std::size_t>(std::ceil(q * n));
  k = std::clamp<std::size_t>(k, 1, fairness_sorted.size());
  return fairness_sorted[k - 1];
}

namespace {

RunSample simulate_run(const FormatPlan& plan, const Roster& roster,
                       const std::vector<std::size_t>& skill, const BatchConfig& config,
                       std::uint64_t index) {
  RngStream rng = RngStream(config.base_seed).substream(index);
  const TournamentResult result = run_tournament(plan, roster, rng);
  RunSample sample;
  sample.fairness = fairness_index(result.classification, skill, config.gamma);
  sample.matches = result.match_log.size();
  sample.match_metrics.reserve(result.match_log.size());
  for (const auto& m : result.match_log) {
    const auto mm =
        match_metrics(roster.rank(m.home), roster.rank(m.away), config.interest_threshold);
    ++sample.interest_counts[static_cast<std::size_t>(mm.interest)];
    sample.match_metrics.push_back(mm);
  }
  return sample;
}

std::vector<RunSample> simulate_all(const FormatPlan& plan, const Roster& roster,
                                    const BatchConfig& config) {
  const auto skill = roster.skill_index();
  std::vector<RunSample> runs(config.n_runs);
  unsigned threads = config.threads == 0 ? std::thread::hardware_concurrency() : config.threads;
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(config.n_runs)));

  if (threads == 1) {
    for (std::size_t i = 0; i < config.n_runs; ++i) {
      runs[i] = simulate_run(plan, roster, skill, config, i);
    }
    return runs;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      try {
        for (std::size_t i = next++; i < config.n_runs; i = next++) {
          runs[i] = simulate_run(plan, roster, skill, config, i);
        }
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return runs;
}

}  // namespace

BatchResult run_batch(const BatchConfig& config, const Roster& roster) {
  if (config.n_runs == 0) throw std::invalid_argument("run_batch: n_runs must be >= 1");
  if (!(config.gamma > 0.0)) throw std::invalid_argument("run_batch: gamma must be > 0");
  const FormatPlan plan = build_plan(config.format);

  BatchResult out;
  out.runs = simulate_all(plan, roster, config);

  BatchSummary& s = out.summary;
  s.format = plan.name;
  s.n_runs = config.n_runs;
  s.base_seed = config.base_seed;
  s.gamma = config.gamma;
  s.interest_threshold = config.interest_threshold;
  s.fixture_count = plan.fixture_count();
  for (const auto& t : roster.teams()) s.roster_ranks.push_back(t.fifa_rank);
  std::sort(s.roster_ranks.begin(), s.roster_ranks.end());

  s.rank_index.lo = 0.0;
  s.rank_index.width = 5.0;
  s.rank_index.counts.assign(20, 0);
  s.rank_index.baseline_counts.assign(20, 0);
  const auto span = static_cast<std::size_t>(s.roster_ranks.back() - s.roster_ranks.front());
  s.rank_distance.lo = 0.0;
  s.rank_distance.width = 1.0;
  s.rank_distance.counts.assign(span + 1, 0);
  s.rank_distance.baseline_counts.assign(span + 1, 0);

  std::size_t total_matches = 0;
  std::array<double, 3> sum{};
  std::array<double, 3> sum_sq{};
  double m_sum = 0.0;
  double m_sq = 0.0;
  for (std::size_t i = 0; i < out.runs.size(); ++i) {
    const RunSample& run = out.runs[i];
    s.fairness_sorted.push_back(run.fairness);
    total_matches += run.matches;
    m_sum += static_cast<double>(run.matches);
    m_sq += static_cast<double>(run.matches) * static_cast<double>(run.matches);
    for (std::size_t c = 0; c < 3; ++c) {
      const std::size_t k = run.interest_counts[c];
      auto& dist = s.interest_distribution[c];
      if (dist.size() <= k) dist.resize(k + 1, 0);
      ++dist[k];
      sum[c] += static_cast<double>(k);
      sum_sq[c] += static_cast<double>(k) * static_cast<double>(k);
    }
    for (const auto& mm : run.match_metrics) {
      ++s.rank_index.counts[s.rank_index.bin_of(mm.rank_index)];
      ++s.rank_distance.counts[s.rank_distance.bin_of(mm.rank_distance)];
    }
  }
  if (!config.keep_match_metrics) {
    for (auto& run : out.runs) std::vector<MatchMetrics>().swap(run.match_metrics);
  }
  std::sort(s.fairness_sorted.begin(), s.fairness_sorted.end());

  const double n = static_cast<double>(config.n_runs);
  for (std::size_t c = 0; c < 3; ++c) {
    s.interest_mean[c] = sum[c] / n;
    const double var = config.n_runs > 1 ? (sum_sq[c] - sum[c] * sum[c] / n) / (n - 1.0) : 0.0;
    s.interest_stderr[c] = std::sqrt(std::max(var, 0.0) / n);
  }
  s.matches_mean = m_sum / n;
  s.matches_variance = config.n_runs > 1 ? std::max(0.0, (m_sq - m_sum * m_sum / n) / (n - 1.0)) : 0.0;

  RngStream baseline_rng = RngStream(config.base_seed).substream(kBaselineStream);
  for (const auto& [a, b] : random_baseline(roster, total_matches, baseline_rng)) {
    const auto mm = match_metrics(roster.rank(a), roster.rank(b), config.interest_threshold);
    ++s.rank_index.baseline_counts[s.rank_index.bin_of(mm.rank_index)];
    ++s.rank_distance.baseline_counts[s.rank_distance.bin_of(mm.rank_distance)];
  }
  return out;
}

double competitive_share(const Histogram& rank_distance, int max_distance, bool baseline) {
  double share = 0.0;
  for (std::size_t b = 0; b < rank_distance.bins(); ++b) {
    if (rank_distance.lo + static_cast<double>(b) * rank_distance.width >
        static_cast<double>(max_distance)) {
      break;
    }
    share += baseline ? rank_distance.baseline_frequency(b) : rank_distance.frequency(b);
  }
  return share;
}

namespace {

double elite_share(const Histogram& rank_index, double threshold, bool baseline) {
  double share = 0.0;
  for (std::size_t b = 0; b < rank_index.bins(); ++b) {
    if (rank_index.lo + static_cast<double>(b) * rank_index.width < threshold) continue;
    share += baseline ? rank_index.baseline_frequency(b) : rank_index.frequency(b);
  }
  return share;
}

FormatFigures figures_of(const BatchSummary& s) {
  FormatFigures f;
  f.format = s.format;
  f.fixture_count = s.fixture_count;
  f.interest_mean = s.interest_mean;
  f.fairness_q25 = s.fairness_quantile(0.25);
  f.fairness_median = s.fairness_quantile(0.5);
  const double base_rd = competitive_share(s.rank_distance, 10, true);
  f.competitive_relative = base_rd > 0 ? competitive_share(s.rank_distance, 10, false) / base_rd : 0;
  const double base_ri = elite_share(s.rank_index, 75.0, true);
  f.elite_relative = base_ri > 0 ? elite_share(s.rank_index, 75.0, false) / base_ri : 0;
  return f;
}

}  // namespace

ComparisonReport compare_formats(const std::vector<BatchSummary>& summaries) {
  const BatchSummary* de = nullptr;
  const BatchSummary* g3 = nullptr;
  const BatchSummary* g4 = nullptr;
  for (const auto& s : summaries) {
    const BatchSummary** slot = nullptr;
    if (s.format == format_name(Format::double_elim_48)) slot = &de;
    if (s.format == format_name(Format::group_of_3)) slot = &g3;
    if (s.format == format_name(Format::group_of_4)) slot = &g4;
    if (slot == nullptr || *slot != nullptr) {
      throw std::invalid_argument("compare_formats: need exactly one summary per format");
    }
    *slot = &s;
  }
  if (!de || !g3 || !g4) throw std::invalid_argument("compare_formats: missing a format");
  for (const BatchSummary* s : {g3, g4}) {
    if (s->n_runs != de->n_runs || s->gamma != de->gamma || s->roster_ranks != de->roster_ranks ||
        s->interest_threshold != de->interest_threshold) {
      throw std::invalid_argument("compare_formats: summaries use different configurations");
    }
  }
  ComparisonReport r;
  r.double_elim = figures_of(*de);
  r.group3 = figures_of(*g3);
  r.group4 = figures_of(*g4);
  for (std::size_t c = 0; c < 3; ++c) {
    r.ratio_vs_group3[c] = de->interest_mean[c] / g3->interest_mean[c];
    r.ratio_vs_group4[c] = de->interest_mean[c] / g4->interest_mean[c];
  }
  const auto fairer = [](const FormatFigures& a, const FormatFigures& b) {
    return a.fairness_q25 <= b.fairness_q25 && a.fairness_median <= b.fairness_median;
  };
  r.fairer_than_group3 = fairer(r.double_elim, r.group3);
  r.fairer_than_group4 = fairer(r.double_elim, r.group4);
  r.more_competitive = r.double_elim.competitive_relative > r.group3.competitive_relative &&
                       r.double_elim.competitive_relative > r.group4.competitive_relative;
  return r;
}

void write_fairness_cdf_csv(std::ostream& out, const std::vector<BatchSummary>& summaries) {
  out << "format,fairness_index,cumulative_probability\n";
  for (const auto& s : summaries) {
    const double n = static_cast<double>(s.fairness_sorted.size());
    for (std::size_t i = 0; i < s.fairness_sorted.size(); ++i) {
      csv::write_row(out, {s.format, csv::format_double(s.fairness_sorted[i]),
                           csv::format_double(static_cast<double>(i + 1) / n)});
    }
  }
}

namespace {

std::string optional_double(const std::optional<double>& v) {
  return v ? csv::format_double(*v) : std::string();
}

}  // namespace

void write_rank_index_csv(std::ostream& out, const std::vector<BatchSummary>& summaries) {
  out << "format,bin_lo,bin_hi,frequency,baseline_frequency,relative_frequency\n";
  for (const auto& s : summaries) {
    const auto& h = s.rank_index;
    for (std::size_t b = 0; b < h.bins(); ++b) {
      const double lo = h.lo + static_cast<double>(b) * h.width;
      csv::write_row(out, {s.format, csv::format_double(lo), csv::format_double(lo + h.width),
                           csv::format_double(h.frequency(b)),
                           csv::format_double(h.baseline_frequency(b)),
                           optional_double(h.relative(b))});
    }
  }
}

void write_rank_distance_csv(std::ostream& out, const std::vector<BatchSummary>& summaries) {
  out << "format,rank_distance,frequency,baseline_frequency,relative_frequency\n";
  for (const auto& s : summaries) {
    const auto& h = s.rank_distance;
    for (std::size_t b = 0; b < h.bins(); ++b) {
      csv::write_row(out, {s.format, std::to_string(b), csv::format_double(h.frequency(b)),
                           csv::format_double(h.baseline_frequency(b)),
                           optional_double(h.relative(b))});
    }
  }
}

void write_interest_counts_csv(std::ostream& out, const std::vector<BatchSummary>& summaries) {
  out << "format,interest,count,probability\n";
  for (const auto& s : summaries) {
    for (std::size_t c = 0; c < 3; ++c) {
      const auto& dist = s.interest_distribution[c];
      for (std::size_t k = 0; k < dist.size(); ++k) {
        csv::write_row(out, {s.format, std::string(to_string(static_cast<Interest>(c))),
                             std::to_string(k),
                             csv::format_double(static_cast<double>(dist[k]) /
                                                static_cast<double>(s.n_runs))});
      }
    }
  }
}

void write_run_fairness_csv(std::ostream& out, const BatchResult& result) {
  out << "run_id,fairness_index\n";
  for (std::size_t i = 0; i < result.runs.size(); ++i) {
    csv::write_row(out, {std::to_string(i), csv::format_double(result.runs[i].fairness)});
  }
}

void write_match_metrics_csv(std::ostream& out, const BatchResult& result,
                             const FormatPlan& plan) {
  out << "run_id,fixture_id,rank_index,rank_distance,interest\n";
  for (std::size_t i = 0; i < result.runs.size(); ++i) {
    const auto& mm = result.runs[i].match_metrics;
    if (mm.size() != plan.fixture_count() && !mm.empty()) {
      throw std::logic_error("write_match_metrics_csv: plan does not match batch");
    }
    for (std::size_t f = 0; f < mm.size(); ++f) {
      csv::write_row(out, {std::to_string(i), plan.fixtures[f].id,
                           csv::format_double(mm[f].rank_index),
                           std::to_string(mm[f].rank_distance),
                           std::string(to_string(mm[f].interest))});
    }
  }
}

std::string summary_to_json(const BatchSummary& s, int indent) {
  using nlohmann::json;
  json doc;
  doc["format"] = s.format;
  doc["n_runs"] = s.n_runs;
  doc["base_seed"] = s.base_seed;
  doc["gamma"] = s.gamma;
  doc["interest_threshold"] = s.interest_threshold;
  doc["fixture_count"] = s.fixture_count;
  doc["matches"] = {{"mean", s.matches_mean}, {"variance", s.matches_variance}};
  doc["fairness"] = {{"q25", s.fairness_quantile(0.25)},
                     {"median", s.fairness_quantile(0.5)},
                     {"q75", s.fairness_quantile(0.75)},
                     {"min", s.fairness_sorted.front()},
                     {"max", s.fairness_sorted.back()}};
  json interest;
  for (std::size_t c = 0; c < 3; ++c) {
    interest[std::string(to_string(static_cast<Interest>(c)))] = {
        {"mean", s.interest_mean[c]},
        {"stderr", s.interest_stderr[c]},
        {"distribution", s.interest_distribution[c]}};
  }
  doc["interest"] = interest;
  const auto hist = [](const Histogram& h) {
    return json{{"lo", h.lo}, {"width", h.width}, {"counts", h.counts},
                {"baseline_counts", h.baseline_counts}};
  };
  doc["rank_index"] = hist(s.rank_index);
  doc["rank_distance"] = hist(s.rank_distance);
  return doc.dump(indent);
}

std::string comparison_to_json(const ComparisonReport& r, int indent) {
  using nlohmann::json;
  const auto fig = [](const FormatFigures& f) {
    json interest;
    for (std::size_t c = 0; c < 3; ++c) {
      interest[std::string(to_string(static_cast<Interest>(c)))] = f.interest_mean[c];
    }
    return json{{"format", f.format},
                {"fixture_count", f.fixture_count},
                {"interest_mean", interest},
                {"fairness_q25", f.fairness_q25},
                {"fairness_median", f.fairness_median},
                {"competitive_relative_rd_le_10", f.competitive_relative},
                {"elite_relative_ri_ge_75", f.elite_relative}};
  };
  const auto ratios = [](const std::array<double, 3>& a) {
    json j;
    for (std::size_t c = 0; c < 3; ++c) j[std::string(to_string(static_cast<Interest>(c)))] = a[c];
    return j;
  };
  json doc;
  doc["formats"] = {fig(r.double_elim), fig(r.group3), fig(r.group4)};
  doc["interest_ratio_vs_group_of_3"] = ratios(r.ratio_vs_group3);
  doc["interest_ratio_vs_group_of_4"] = ratios(r.ratio_vs_group4);
  doc["fairer_than_group_of_3"] = r.fairer_than_group3;
  doc["fairer_than_group_of_4"] = r.fairer_than_group4;
  doc["more_competitive"] = r.more_competitive;
  return doc.dump(indent);
}

}  // namespace cupsim
