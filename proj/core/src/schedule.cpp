#include "cupsim/schedule.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "cupsim/csv.hpp"

namespace cupsim {

int ScheduleParams::capacity(int day) const {
  if (day < 0) return 0;
  if (static_cast<std::size_t>(day) < per_day_capacities.size()) {
    return per_day_capacities[static_cast<std::size_t>(day)];
  }
  return max_per_day.value_or(0);
}

int ScheduleParams::gap_for(const Fixture& fixture) const {
  return fixture.bracket == Bracket::repechage ? repechage_rest_days : rest_days;
}

void ScheduleParams::validate() const {
  if (rest_days < 1) throw std::invalid_argument("schedule: rest_days must be >= 1");
  if (repechage_rest_days < 1) {
    throw std::invalid_argument("schedule: repechage_rest_days must be >= 1");
  }
  if (repechage_rest_days > rest_days) {
    throw std::invalid_argument("schedule: repechage_rest_days cannot exceed rest_days");
  }
  if (max_per_day && *max_per_day < 1) {
    throw std::invalid_argument("schedule: max_per_day must be >= 1");
  }
  for (int c : per_day_capacities) {
    if (c < 0) throw std::invalid_argument("schedule: negative day capacity");
  }
  if (!max_per_day && per_day_capacities.empty()) {
    throw std::invalid_argument("schedule: no day capacity given");
  }
}

int ScheduleAssignment::first_day() const {
  if (day.empty()) return 0;
  return *std::min_element(day.begin(), day.end());
}

int ScheduleAssignment::last_day() const {
  if (day.empty()) return -1;
  return *std::max_element(day.begin(), day.end());
}

int ScheduleAssignment::duration() const {
  if (day.empty()) return 0;
  return last_day() - first_day() + 1;
}

std::vector<int> ScheduleAssignment::load() const {
  std::vector<int> out(static_cast<std::size_t>(std::max(last_day() + 1, 0)), 0);
  for (int d : day) ++out[static_cast<std::size_t>(d)];
  return out;
}

ScheduleAssignment schedule(const FormatPlan& plan, const ScheduleParams& params) {
  params.validate();
  ScheduleAssignment out;
  out.day.assign(plan.fixtures.size(), -1);
  std::vector<int> load;
  const int horizon = params.max_per_day ? -1 : static_cast<int>(params.per_day_capacities.size());
  for (FixtureIndex f = 0; f < plan.fixtures.size(); ++f) {
    const int gap = params.gap_for(plan.fixtures[f]);
    int earliest = 0;
    for (FixtureIndex p : predecessors(plan, f)) {
      if (out.day[p] < 0) throw std::logic_error("schedule: plan is not in dependency order");
      earliest = std::max(earliest, out.day[p] + gap);
    }
    int d = earliest;
    for (;; ++d) {
      if (horizon >= 0 && d >= horizon) {
        throw InfeasibleSchedule("schedule: capacity sequence exhausted at " +
                                 plan.fixtures[f].id);
      }
      if (static_cast<std::size_t>(d) >= load.size()) load.resize(static_cast<std::size_t>(d) + 1, 0);
      if (load[static_cast<std::size_t>(d)] < params.capacity(d)) break;
    }
    ++load[static_cast<std::size_t>(d)];
    out.day[f] = d;
  }
  return out;
}

std::vector<DurationPoint> duration_curve(const FormatPlan& plan, const ScheduleParams& base,
                                          int lo, int hi) {
  if (lo < 1 || hi < lo) throw std::invalid_argument("duration_curve: empty capacity range");
  std::vector<DurationPoint> curve;
  for (int c = lo; c <= hi; ++c) {
    ScheduleParams p = base;
    p.per_day_capacities.clear();
    p.max_per_day = c;
    curve.push_back({c, schedule(plan, p).duration()});
  }
  return curve;
}

std::chrono::year_month_day parse_date(std::string_view text) {
  const auto bad = [&]() {
    return std::invalid_argument("invalid date '" + std::string(text) + "' (want YYYY-MM-DD)");
  };
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') throw bad();
  const auto field = [&](std::size_t pos, std::size_t len) {
    int v = 0;
    const auto* first = text.data() + pos;
    const auto [ptr, ec] = std::from_chars(first, first + len, v);
    if (ec != std::errc{} || ptr != first + len) throw bad();
    return v;
  };
  const std::chrono::year_month_day date{std::chrono::year{field(0, 4)},
                                         std::chrono::month{static_cast<unsigned>(field(5, 2))},
                                         std::chrono::day{static_cast<unsigned>(field(8, 2))}};
  if (!date.ok()) throw bad();
  return date;
}

std::string format_date(std::chrono::year_month_day date) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

std::chrono::year_month_day add_days(std::chrono::year_month_day date, int days) {
  return std::chrono::year_month_day{std::chrono::sys_days{date} + std::chrono::days{days}};
}

void export_calendar(std::ostream& out, const FormatPlan& plan,
                     const ScheduleAssignment& assignment, std::chrono::year_month_day start) {
  if (!start.ok()) throw std::invalid_argument("export_calendar: invalid start date");
  out << "date,fixture_id,round_tag,bracket\n";
  if (assignment.empty()) return;
  if (assignment.day.size() != plan.fixtures.size()) {
    throw std::invalid_argument("export_calendar: assignment does not match plan");
  }
  std::vector<FixtureIndex> order(plan.fixtures.size());
  for (FixtureIndex f = 0; f < order.size(); ++f) order[f] = f;
  std::stable_sort(order.begin(), order.end(), [&](FixtureIndex a, FixtureIndex b) {
    return assignment.day[a] < assignment.day[b];
  });
  const int first = assignment.first_day();
  for (FixtureIndex f : order) {
    const auto& fx = plan.fixtures[f];
    csv::write_row(out, {format_date(add_days(start, assignment.day[f] - first)), fx.id,
                         fx.round_tag, std::string(to_string(fx.bracket))});
  }
}

std::vector<RestViolation> rest_violations(const FormatPlan& plan,
                                           const ScheduleAssignment& assignment,
                                           const ScheduleParams& params,
                                           const std::vector<PlayedMatch>& log) {
  std::map<TeamIndex, std::vector<FixtureIndex>> by_team;
  for (const auto& m : log) {
    by_team[m.home].push_back(m.fixture);
    by_team[m.away].push_back(m.fixture);
  }
  std::vector<RestViolation> out;
  for (auto& [team, fixtures] : by_team) {
    std::stable_sort(fixtures.begin(), fixtures.end(), [&](FixtureIndex a, FixtureIndex b) {
      return assignment.day.at(a) < assignment.day.at(b);
    });
    for (std::size_t i = 1; i < fixtures.size(); ++i) {
      const int gap = assignment.day[fixtures[i]] - assignment.day[fixtures[i - 1]];
      if (gap < params.gap_for(plan.fixtures[fixtures[i]])) {
        out.push_back({team, fixtures[i - 1], fixtures[i], gap});
      }
    }
  }
  return out;
}

namespace {

int to_int(const std::string& key, const std::string& value) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw std::invalid_argument("schedule config: " + key + " must be an integer");
  }
  return v;
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

}  // namespace

ScheduleConfig parse_schedule_config(std::string_view text) {
  ScheduleConfig cfg;
  const std::string body = trim(std::string(text));
  bool saw_capacity = false;
  bool saw_max = false;
  if (!body.empty() && body.front() == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
      throw std::invalid_argument(std::string("schedule config: ") + e.what());
    }
    try {
      for (const auto& [key, value] : doc.items()) {
        if (key == "max_per_day") {
          cfg.params.max_per_day = value.get<int>();
          saw_max = true;
        } else if (key == "per_day_capacities") {
          cfg.params.per_day_capacities = value.get<std::vector<int>>();
          saw_capacity = true;
        } else if (key == "rest_days") {
          cfg.params.rest_days = value.get<int>();
        } else if (key == "repechage_rest_days") {
          cfg.params.repechage_rest_days = value.get<int>();
        } else if (key == "start_date") {
          cfg.start_date = parse_date(value.get<std::string>());
        } else {
          throw std::invalid_argument("schedule config: unknown key " + key);
        }
      }
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(std::string("schedule config: ") + e.what());
    }
  } else {
    std::istringstream in(body);
    std::string line;
    while (std::getline(in, line)) {
      line = trim(line.substr(0, line.find('#')));
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("schedule config: bad line " + line);
      const std::string key = trim(line.substr(0, eq));
      std::string value = trim(line.substr(eq + 1));
      if (key == "max_per_day") {
        cfg.params.max_per_day = to_int(key, value);
        saw_max = true;
      } else if (key == "per_day_capacities") {
        if (!value.empty() && value.front() == '[') value = value.substr(1);
        if (!value.empty() && value.back() == ']') value.pop_back();
        cfg.params.per_day_capacities.clear();
        for (const auto& item : csv::split_record(value)) {
          const std::string v = trim(item);
          if (!v.empty()) cfg.params.per_day_capacities.push_back(to_int(key, v));
        }
        saw_capacity = true;
      } else if (key == "rest_days") {
        cfg.params.rest_days = to_int(key, value);
      } else if (key == "repechage_rest_days") {
        cfg.params.repechage_rest_days = to_int(key, value);
      } else if (key == "start_date") {
        cfg.start_date = parse_date(value);
      } else {
        throw std::invalid_argument("schedule config: unknown key " + key);
      }
    }
  }
  // A bare capacity sequence is a closed horizon.
  if (saw_capacity && !saw_max) cfg.params.max_per_day.reset();
  cfg.params.validate();
  return cfg;
}

ScheduleConfig load_schedule_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open schedule config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_schedule_config(buf.str());
}

}  // namespace cupsim
