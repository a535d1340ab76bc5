#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "cupsim/formats.hpp"
#include "cupsim/schedule.hpp"
#include "cupsim/tournament.hpp"

using namespace cupsim;

namespace {

ScheduleParams flat(int per_day, int rest = 4, int repechage_rest = 4) {
  ScheduleParams p;
  p.max_per_day = per_day;
  p.rest_days = rest;
  p.repechage_rest_days = repechage_rest;
  return p;
}

ScheduleParams opening_days() {
  ScheduleParams p = flat(4, 4, 3);
  p.per_day_capacities.assign(8, 6);
  return p;
}

void expect_valid(const FormatPlan& plan, const ScheduleParams& p, const ScheduleAssignment& a) {
  ASSERT_EQ(a.day.size(), plan.fixtures.size());
  const auto load = a.load();
  for (std::size_t d = 0; d < load.size(); ++d) {
    EXPECT_LE(load[d], p.capacity(static_cast<int>(d))) << "day " << d;
  }
  for (FixtureIndex f = 0; f < plan.fixtures.size(); ++f) {
    for (FixtureIndex q : predecessors(plan, f)) {
      EXPECT_GE(a.day[f] - a.day[q], p.gap_for(plan.fixtures[f])) << plan.fixtures[f].id;
    }
  }
  const auto fin = plan.classification.final_fixture;
  EXPECT_EQ(a.day[fin], a.last_day());
  for (const auto& fx : plan.fixtures) {
    if (fx.round_tag == "SF") {
      EXPECT_GE(a.day[fin] - a.day[*plan.find(fx.id)], p.rest_days);
    }
  }
}

}  // namespace

TEST(Schedule, GroupOf3FourPerDay) {
  const auto plan = build_group3_plan();
  const auto p = flat(4);
  const auto a = schedule(plan, p);
  EXPECT_EQ(a.duration(), 32);
  expect_valid(plan, p, a);
}

TEST(Schedule, DoubleElimFivePerDay) {
  const auto plan = build_double_elim_plan();
  const auto p = flat(5, 4, 3);
  const auto a = schedule(plan, p);
  EXPECT_GE(a.duration(), 36);
  EXPECT_LE(a.duration(), 40);
  expect_valid(plan, p, a);
}

TEST(Schedule, DoubleElimOpeningDays) {
  const auto plan = build_double_elim_plan();
  const auto p = opening_days();
  const auto a = schedule(plan, p);
  EXPECT_EQ(a.duration(), 35);
  expect_valid(plan, p, a);
  std::ostringstream out;
  export_calendar(out, plan, a, parse_date("2026-06-15"));
  std::istringstream in(out.str());
  std::string line, last;
  std::getline(in, line);
  EXPECT_EQ(line, "date,fixture_id,round_tag,bracket");
  std::map<std::string, int> per_date;
  std::string first;
  while (std::getline(in, line)) {
    const auto date = line.substr(0, 10);
    if (first.empty()) first = date;
    ++per_date[date];
    last = line;
  }
  EXPECT_EQ(first, "2026-06-15");
  EXPECT_EQ(last.substr(0, 10), "2026-07-19");
  EXPECT_NE(last.find(",F,"), std::string::npos);
  int day = 0;
  for (const auto& [date, n] : per_date) {
    (void)date;
    EXPECT_LE(n, 6);
    ++day;
  }
  EXPECT_LE(day, 35);
}

TEST(Schedule, FourPerDayWithShortRepechageRest) {
  const auto de = build_double_elim_plan();
  const auto p = flat(4, 4, 3);
  EXPECT_LE(schedule(de, p).duration(), 39);
  expect_valid(de, p, schedule(de, p));
  const auto g4 = build_group4_plan();
  expect_valid(g4, p, schedule(g4, p));
}

TEST(Schedule, GroupOf4FourPerDayLowerBound) {
  // 72 group games need 18 days at 4/day; the 8 best-third games and at least
  // one more round-of-32 game must then wait 4 days, so the round of 32 spans
  // three days and each later round adds 4.
  const auto a = schedule(build_group4_plan(), flat(4));
  EXPECT_EQ(a.duration(), 40);
}

TEST(Schedule, EveryFormatValidAcrossCapacities) {
  for (Format f : kAllFormats) {
    const auto plan = build_plan(f);
    for (int c = 1; c <= 12; ++c) {
      const auto p = flat(c, 4, 3);
      expect_valid(plan, p, schedule(plan, p));
    }
  }
}

TEST(Schedule, Deterministic) {
  const auto plan = build_double_elim_plan();
  EXPECT_EQ(schedule(plan, flat(5)).day, schedule(plan, flat(5)).day);
}

TEST(DurationCurve, Endpoints) {
  for (Format f : kAllFormats) {
    const auto plan = build_plan(f);
    const auto curve = duration_curve(plan, flat(4), 1, 96);
    ASSERT_EQ(curve.size(), 96u);
    EXPECT_GE(curve.front().duration, static_cast<int>(plan.fixture_count()));
    // Unlimited capacity: the longest dependency chain alone.
    std::vector<int> earliest(plan.fixtures.size(), 0);
    int longest = 0;
    for (FixtureIndex i = 0; i < plan.fixtures.size(); ++i) {
      for (FixtureIndex q : predecessors(plan, i)) earliest[i] = std::max(earliest[i], earliest[q] + 4);
      longest = std::max(longest, earliest[i]);
    }
    EXPECT_EQ(curve.back().duration, longest + 1) << format_name(f);
  }
}

TEST(DurationCurve, NonIncreasing) {
  for (Format f : kAllFormats) {
    for (int rr : {3, 4}) {
      const auto curve = duration_curve(build_plan(f), flat(4, 4, rr), 1, 24);
      for (std::size_t i = 1; i < curve.size(); ++i) {
        EXPECT_LE(curve[i].duration, curve[i - 1].duration)
            << format_name(f) << " at " << curve[i].max_per_day;
      }
    }
  }
}

TEST(DurationCurve, RejectsEmptyRange) {
  EXPECT_THROW((void)duration_curve(build_group3_plan(), flat(4), 5, 4), std::invalid_argument);
}

TEST(Schedule, ExhaustedSequenceThrows) {
  ScheduleParams p;
  p.max_per_day.reset();
  p.per_day_capacities.assign(10, 4);
  EXPECT_THROW((void)schedule(build_group3_plan(), p), InfeasibleSchedule);
  p.per_day_capacities.assign(40, 4);
  EXPECT_EQ(schedule(build_group3_plan(), p).duration(), 32);
}

TEST(Schedule, ParamValidation) {
  EXPECT_THROW((void)schedule(build_group3_plan(), flat(4, 3, 4)), std::invalid_argument);
  EXPECT_THROW((void)schedule(build_group3_plan(), flat(0)), std::invalid_argument);
  EXPECT_THROW((void)schedule(build_group3_plan(), flat(4, 0, 0)), std::invalid_argument);
}

TEST(Calendar, EmptyAssignmentIsHeaderOnly) {
  std::ostringstream out;
  export_calendar(out, build_group3_plan(), ScheduleAssignment{}, parse_date("2026-06-15"));
  EXPECT_EQ(out.str(), "date,fixture_id,round_tag,bracket\n");
}

TEST(Calendar, Dates) {
  EXPECT_EQ(format_date(parse_date("2026-06-15")), "2026-06-15");
  EXPECT_EQ(format_date(add_days(parse_date("2026-06-15"), 34)), "2026-07-19");
  EXPECT_EQ(format_date(add_days(parse_date("2028-02-28"), 1)), "2028-02-29");
  for (const char* bad : {"2026-02-30", "2026-13-01", "2026/06/15", "26-06-15", "2026-06-1x", ""}) {
    EXPECT_THROW((void)parse_date(bad), std::invalid_argument) << bad;
  }
}

TEST(Config, Json) {
  const auto cfg = parse_schedule_config(
      R"({"per_day_capacities":[6,6],"max_per_day":5,"rest_days":4,"repechage_rest_days":3,"start_date":"2026-06-15"})");
  EXPECT_EQ(cfg.params.per_day_capacities, (std::vector<int>{6, 6}));
  EXPECT_EQ(cfg.params.max_per_day, 5);
  EXPECT_EQ(cfg.params.repechage_rest_days, 3);
  ASSERT_TRUE(cfg.start_date.has_value());
  EXPECT_EQ(format_date(*cfg.start_date), "2026-06-15");
}

TEST(Config, KeyValue) {
  const auto cfg = parse_schedule_config(
      "# opening days\nper_day_capacities = [6, 6, 6]\nmax_per_day = 4\nrepechage_rest_days = 3\n"
      "start_date = \"2026-06-15\"\n");
  EXPECT_EQ(cfg.params.per_day_capacities.size(), 3u);
  EXPECT_EQ(cfg.params.max_per_day, 4);
  EXPECT_EQ(cfg.params.rest_days, 4);
  const auto closed = parse_schedule_config("per_day_capacities = 5,5");
  EXPECT_FALSE(closed.params.max_per_day.has_value());
}

TEST(Config, Errors) {
  EXPECT_THROW((void)parse_schedule_config("{\"bogus\":1}"), std::invalid_argument);
  EXPECT_THROW((void)parse_schedule_config("rest_days = four"), std::invalid_argument);
  EXPECT_THROW((void)parse_schedule_config("{\"rest_days\":3,\"repechage_rest_days\":4}"),
               std::invalid_argument);
  EXPECT_THROW((void)parse_schedule_config("{broken"), std::invalid_argument);
  EXPECT_THROW((void)load_schedule_config("/nonexistent/sched.json"), std::runtime_error);
}

TEST(Schedule, SimulatedRunsRespectRest) {
  const Roster roster = Roster::by_rank(48);
  for (Format f : kAllFormats) {
    const auto plan = build_plan(f);
    for (const auto& p : {flat(4, 4, 3), flat(6), opening_days()}) {
      const auto a = schedule(plan, p);
      for (std::uint64_t seed = 0; seed < 30; ++seed) {
        RngStream rng(seed);
        const auto r = run_tournament(plan, roster, rng);
        const auto v = rest_violations(plan, a, p, r.match_log);
        EXPECT_TRUE(v.empty()) << format_name(f) << " seed " << seed;
      }
    }
  }
}

TEST(Schedule, RestViolationsDetected) {
  const auto plan = build_double_elim_plan();
  const auto p = flat(5);
  auto a = schedule(plan, p);
  RngStream rng(1);
  const auto r = run_tournament(plan, Roster::by_rank(48), rng);
  a.day[24] = a.day[0] + 1;  // R2 game one day after its R1 feeder
  EXPECT_FALSE(rest_violations(plan, a, p, r.match_log).empty());
}
