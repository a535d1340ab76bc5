#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cupsim/plan.hpp"
#include "cupsim/tournament.hpp"

namespace cupsim {

struct ScheduleParams {
  // Capacities of the first days, in order (e.g. six matches per day while
  // round 1 is played).
  std::vector<int> per_day_capacities;
  // Capacity of every day after the sequence. Without it the calendar ends
  // with the sequence.
  std::optional<int> max_per_day = 4;
  // Minimum day-index difference between a fixture and each predecessor.
  int rest_days = 4;
  int repechage_rest_days = 4;

  [[nodiscard]] int capacity(int day) const;  // 0 past the horizon
  [[nodiscard]] int gap_for(const Fixture& fixture) const;
  void validate() const;
};

class InfeasibleSchedule : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ScheduleAssignment {
  std::vector<int> day;  // per fixture, plan order; day 0 = first matchday

  [[nodiscard]] bool empty() const { return day.empty(); }
  [[nodiscard]] int first_day() const;
  [[nodiscard]] int last_day() const;
  // Calendar days from first to last matchday, inclusive.
  [[nodiscard]] int duration() const;
  [[nodiscard]] std::vector<int> load() const;  // matches per day
};

// Greedy pass in plan order: each fixture goes to the earliest day that is
// at least its rest gap after every predecessor and still has capacity.
[[nodiscard]] ScheduleAssignment schedule(const FormatPlan& plan, const ScheduleParams& params);

struct DurationPoint {
  int max_per_day = 0;
  int duration = 0;
};

// One schedule per capacity in [lo, hi]; the same capacity applies to every
// day and the per-day sequence of `base` is ignored.
[[nodiscard]] std::vector<DurationPoint> duration_curve(const FormatPlan& plan,
                                                        const ScheduleParams& base, int lo,
                                                        int hi);

// "YYYY-MM-DD"; throws std::invalid_argument for malformed or impossible dates.
[[nodiscard]] std::chrono::year_month_day parse_date(std::string_view text);
[[nodiscard]] std::string format_date(std::chrono::year_month_day date);
[[nodiscard]] std::chrono::year_month_day add_days(std::chrono::year_month_day date, int days);

// CSV date,fixture_id,round_tag,bracket ordered by day then plan order. Day 0
// maps to start_date.
void export_calendar(std::ostream& out, const FormatPlan& plan,
                     const ScheduleAssignment& assignment, std::chrono::year_month_day start);

// Pairs of consecutive matches of one team, in a played tournament overlaid
// on the calendar, that are closer than the rest gap of the later fixture.
struct RestViolation {
  TeamIndex team = 0;
  FixtureIndex earlier = 0;
  FixtureIndex later = 0;
  int gap = 0;
};
[[nodiscard]] std::vector<RestViolation> rest_violations(const FormatPlan& plan,
                                                         const ScheduleAssignment& assignment,
                                                         const ScheduleParams& params,
                                                         const std::vector<PlayedMatch>& log);

struct ScheduleConfig {
  ScheduleParams params;
  std::optional<std::chrono::year_month_day> start_date;
};

// JSON object or `key = value` lines with keys max_per_day,
// per_day_capacities, rest_days, repechage_rest_days, start_date.
[[nodiscard]] ScheduleConfig parse_schedule_config(std::string_view text);
[[nodiscard]] ScheduleConfig load_schedule_config(const std::filesystem::path& path);

}  // namespace cupsim
