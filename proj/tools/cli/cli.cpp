#include "cli/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "cupsim/batch.hpp"
#include "cupsim/csv.hpp"
#include "cupsim/formats.hpp"
#include "cupsim/match.hpp"
#include "cupsim/metrics.hpp"
#include "cupsim/schedule.hpp"
#include "cupsim/tournament.hpp"

namespace cupsim::cli {
namespace {

namespace fs = std::filesystem;

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Collects named outputs and writes them under --out, or to stdout when no
// directory is given. With --dry-run only the intended paths are listed.
class Outputs {
public:
  Outputs(std::optional<fs::path> dir, bool dry_run, std::ostream& out)
      : dir_(std::move(dir)), dry_run_(dry_run), out_(out) {}

  [[nodiscard]] bool to_directory() const { return dir_.has_value(); }

  void emit(const std::string& name, const std::string& content) {
    if (!dir_) {
      if (dry_run_) {
        out_ << "would print " << name << " (" << content.size() << " bytes)\n";
      } else {
        out_ << content;
      }
      return;
    }
    const fs::path path = *dir_ / name;
    if (dry_run_) {
      out_ << "would write " << path.string() << " (" << content.size() << " bytes)\n";
      return;
    }
    std::error_code ec;
    fs::create_directories(*dir_, ec);
    if (ec) throw IoError("cannot create output directory " + dir_->string() + ": " + ec.message());
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot write " + path.string());
    file << content;
    file.close();
    if (!file) throw IoError("failed writing " + path.string());
    out_ << "wrote " << path.string() << "\n";
  }

private:
  std::optional<fs::path> dir_;
  bool dry_run_;
  std::ostream& out_;
};

struct CommonOptions {
  std::string format;
  std::string roster_path;
  std::string out_dir;
  bool dry_run = false;
};

struct SimOptions {
  std::optional<std::uint64_t> seed;
  std::size_t runs = 1000;
  double gamma = 2.0;
  int interest_threshold = 8;
  unsigned threads = 1;
  bool match_metrics = false;
};

struct ScheduleOptions {
  std::optional<int> max_per_day;
  std::string per_day_capacities;
  std::optional<int> rest;
  std::optional<int> repechage_rest;
  std::string start_date;
  std::string config_path;
  std::optional<int> curve_max;
};

Roster load_roster(const CommonOptions& opt) {
  if (opt.roster_path.empty()) return Roster::by_rank(kCupTeams);
  if (!fs::exists(opt.roster_path)) throw IoError("roster file not found: " + opt.roster_path);
  return Roster::load(opt.roster_path);
}

Outputs make_outputs(const CommonOptions& opt, std::ostream& out) {
  std::optional<fs::path> dir;
  if (!opt.out_dir.empty()) dir = fs::path(opt.out_dir);
  return Outputs(dir, opt.dry_run, out);
}

template <typename Fn>
std::string render(Fn&& fn) {
  std::ostringstream s;
  fn(s);
  return s.str();
}

std::string with_newline(std::string s) {
  s.push_back('\n');
  return s;
}

void cmd_plan(const CommonOptions& opt, std::ostream& out) {
  const FormatPlan plan = build_plan(parse_format(opt.format));
  Outputs outputs = make_outputs(opt, out);
  outputs.emit("plan_" + opt.format + ".json", with_newline(plan_to_json(plan)));
}

void cmd_simulate(const CommonOptions& opt, const SimOptions& sim, std::ostream& out) {
  const FormatPlan plan = build_plan(parse_format(opt.format));
  const Roster roster = load_roster(opt);
  RngStream rng = RngStream(*sim.seed).substream(0);
  const TournamentResult result = run_tournament(plan, roster, rng);
  const auto skill = roster.skill_index();

  Outputs outputs = make_outputs(opt, out);
  outputs.emit("match_log.csv",
               render([&](std::ostream& s) { write_match_log_csv(s, plan, roster, result.match_log); }));
  if (!outputs.to_directory()) return;
  outputs.emit("classification.csv", render([&](std::ostream& s) {
                 s << "position,team_id,fifa_rank\n";
                 for (std::size_t p = 0; p < result.classification.size(); ++p) {
                   const Team& t = roster[result.classification[p]];
                   csv::write_row(s, {std::to_string(p + 1), t.id, std::to_string(t.fifa_rank)});
                 }
               }));
  nlohmann::ordered_json summary;
  summary["format"] = opt.format;
  summary["seed"] = *sim.seed;
  summary["matches"] = result.match_log.size();
  summary["champion"] = roster[result.classification.front()].id;
  summary["fairness_index"] = fairness_index(result.classification, skill, sim.gamma);
  nlohmann::ordered_json returnees = nlohmann::ordered_json::array();
  for (TeamIndex t : result.returnees) returnees.push_back(roster[t].id);
  summary["returnees"] = returnees;
  outputs.emit("summary.json", with_newline(summary.dump(2)));
}

BatchConfig batch_config(Format format, const SimOptions& sim) {
  BatchConfig cfg;
  cfg.format = format;
  cfg.n_runs = sim.runs;
  cfg.base_seed = *sim.seed;
  cfg.gamma = sim.gamma;
  cfg.interest_threshold = sim.interest_threshold;
  cfg.threads = sim.threads;
  cfg.keep_match_metrics = sim.match_metrics;
  return cfg;
}

void emit_figures(Outputs& outputs, const std::vector<BatchSummary>& summaries) {
  outputs.emit("fig2_fairness_cdf.csv",
               render([&](std::ostream& s) { write_fairness_cdf_csv(s, summaries); }));
  outputs.emit("fig3_rank_index.csv",
               render([&](std::ostream& s) { write_rank_index_csv(s, summaries); }));
  outputs.emit("fig4_rank_distance.csv",
               render([&](std::ostream& s) { write_rank_distance_csv(s, summaries); }));
  outputs.emit("fig5_interest_counts.csv",
               render([&](std::ostream& s) { write_interest_counts_csv(s, summaries); }));
}

void cmd_batch(const CommonOptions& opt, const SimOptions& sim, std::ostream& out) {
  const Format format = parse_format(opt.format);
  const Roster roster = load_roster(opt);
  const BatchResult result = run_batch(batch_config(format, sim), roster);

  Outputs outputs = make_outputs(opt, out);
  outputs.emit("summary.json", with_newline(summary_to_json(result.summary)));
  if (!outputs.to_directory()) return;
  emit_figures(outputs, {result.summary});
  outputs.emit("run_fairness.csv",
               render([&](std::ostream& s) { write_run_fairness_csv(s, result); }));
  if (sim.match_metrics) {
    const FormatPlan plan = build_plan(format);
    outputs.emit("match_metrics.csv",
                 render([&](std::ostream& s) { write_match_metrics_csv(s, result, plan); }));
  }
}

std::string comparison_table(const ComparisonReport& r) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(3);
  s << "format          fixtures  high    special  regular  FI_q25  FI_med  rd<=10x\n";
  for (const FormatFigures* f : {&r.double_elim, &r.group3, &r.group4}) {
    s << std::left << std::setw(16) << f->format << std::right << std::setw(8)
      << f->fixture_count << std::setw(8) << f->interest_mean[0] << std::setw(9)
      << f->interest_mean[1] << std::setw(9) << f->interest_mean[2] << std::setw(8)
      << f->fairness_q25 << std::setw(8) << f->fairness_median << std::setw(9)
      << f->competitive_relative << "\n";
  }
  s << "double-elim / group-of-3 (high, special, regular): " << r.ratio_vs_group3[0] << " "
    << r.ratio_vs_group3[1] << " " << r.ratio_vs_group3[2] << "\n";
  s << "double-elim / group-of-4 (high, special, regular): " << r.ratio_vs_group4[0] << " "
    << r.ratio_vs_group4[1] << " " << r.ratio_vs_group4[2] << "\n";
  return s.str();
}

void cmd_compare(const CommonOptions& opt, const SimOptions& sim, std::ostream& out) {
  const Roster roster = load_roster(opt);
  std::vector<BatchSummary> summaries;
  for (Format f : kAllFormats) summaries.push_back(run_batch(batch_config(f, sim), roster).summary);
  const ComparisonReport report = compare_formats(summaries);

  Outputs outputs = make_outputs(opt, out);
  if (!outputs.to_directory()) {
    out << comparison_table(report);
    return;
  }
  outputs.emit("comparison.json", with_newline(comparison_to_json(report)));
  emit_figures(outputs, summaries);
  out << comparison_table(report);
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  for (const auto& item : csv::split_record(text)) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != item.size()) throw std::invalid_argument("not an integer list: " + text);
    values.push_back(v);
  }
  return values;
}

void cmd_schedule(const CommonOptions& opt, const ScheduleOptions& so, std::ostream& out) {
  const FormatPlan plan = build_plan(parse_format(opt.format));
  ScheduleConfig cfg;
  if (!so.config_path.empty()) {
    if (!fs::exists(so.config_path)) throw IoError("config file not found: " + so.config_path);
    cfg = load_schedule_config(so.config_path);
  }
  ScheduleParams& p = cfg.params;
  if (!so.per_day_capacities.empty()) {
    p.per_day_capacities = parse_int_list(so.per_day_capacities);
    if (!so.max_per_day && so.config_path.empty()) p.max_per_day.reset();
  }
  if (so.max_per_day) p.max_per_day = *so.max_per_day;
  if (so.rest) {
    p.rest_days = *so.rest;
    if (!so.repechage_rest) p.repechage_rest_days = std::min(p.repechage_rest_days, p.rest_days);
  }
  if (so.repechage_rest) p.repechage_rest_days = *so.repechage_rest;
  if (!so.start_date.empty()) cfg.start_date = parse_date(so.start_date);
  p.validate();

  const ScheduleAssignment assignment = schedule(plan, p);
  const auto start = cfg.start_date.value_or(parse_date("2026-06-15"));
  const auto last = add_days(start, assignment.duration() - 1);
  out << "format " << opt.format << "\n";
  out << "duration " << assignment.duration() << "\n";
  out << "window " << format_date(start) << " " << format_date(last) << "\n";

  Outputs outputs = make_outputs(opt, out);
  if (outputs.to_directory()) {
    outputs.emit("calendar.csv",
                 render([&](std::ostream& s) { export_calendar(s, plan, assignment, start); }));
  }
  if (so.curve_max) {
    const auto curve = duration_curve(plan, p, 1, *so.curve_max);
    const std::string table = render([&](std::ostream& s) {
      s << "max_per_day,duration\n";
      for (const auto& pt : curve) s << pt.max_per_day << "," << pt.duration << "\n";
    });
    if (outputs.to_directory()) {
      outputs.emit("duration_curve.csv", table);
    } else {
      out << table;
    }
  }
}

void cmd_model_curve(const CommonOptions& opt, int max_rank, std::ostream& out) {
  const auto rows = model_outcome_curve(unit_rank_diff_bins(max_rank), max_rank);
  Outputs outputs = make_outputs(opt, out);
  outputs.emit("model_curve.csv",
               render([&](std::ostream& s) { write_outcome_curve_csv(s, rows); }));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"World Cup format simulator and scheduler", "cupsim"};
  app.require_subcommand(1);

  CommonOptions common;
  SimOptions sim;
  ScheduleOptions so;
  int max_rank = kCupTeams;
  std::uint64_t seed = 0;

  const std::vector<std::string> formats = {"double-elim-48", "group-of-3", "group-of-4"};
  const auto add_format = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--format", common.format, "Tournament format")
                  ->check(CLI::IsMember(formats));
    if (required) o->required();
  };
  const auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", common.out_dir, "Output directory");
    sub->add_flag("--dry-run", common.dry_run, "List outputs without writing them");
  };
  const auto add_sim = [&](CLI::App* sub, bool runs) {
    sub->add_option("--seed", seed, "Base seed")->required();
    sub->add_option("--roster", common.roster_path, "Roster CSV or JSON");
    sub->add_option("--gamma", sim.gamma, "Fairness exponent")->check(CLI::PositiveNumber);
    if (runs) {
      sub->add_option("--runs", sim.runs, "Number of runs")->check(CLI::Range(1, 100000000));
      sub->add_option("--threads", sim.threads, "Worker threads (0 = all cores)");
      sub->add_option("--interest-threshold", sim.interest_threshold, "TOP-k cut for interest")
          ->check(CLI::PositiveNumber);
    }
  };

  auto* plan = app.add_subcommand("plan", "Export a format's fixture graph as JSON");
  add_format(plan, true);
  add_out(plan);

  auto* simulate = app.add_subcommand("simulate", "Play one tournament and print the match log");
  add_format(simulate, true);
  add_sim(simulate, false);
  add_out(simulate);

  auto* batch = app.add_subcommand("batch", "Monte Carlo summaries for one format");
  add_format(batch, true);
  add_sim(batch, true);
  add_out(batch);
  batch->add_flag("--match-metrics", sim.match_metrics, "Also export per-match metrics");

  auto* compare = app.add_subcommand("compare", "Compare the three formats");
  add_sim(compare, true);
  add_out(compare);

  auto* sched = app.add_subcommand("schedule", "Greedy calendar and cup duration");
  add_format(sched, true);
  add_out(sched);
  sched->add_option("--max-per-day", so.max_per_day, "Matches per day")->check(CLI::PositiveNumber);
  sched->add_option("--per-day-capacities", so.per_day_capacities,
                    "Comma-separated capacities of the first days");
  sched->add_option("--rest", so.rest, "Minimum days between a team's matches")
      ->check(CLI::PositiveNumber);
  sched->add_option("--repechage-rest", so.repechage_rest, "Rest before repechage fixtures")
      ->check(CLI::PositiveNumber);
  sched->add_option("--start-date", so.start_date, "First matchday, YYYY-MM-DD");
  sched->add_option("--config", so.config_path, "Schedule parameter file");
  sched->add_option("--curve-max", so.curve_max, "Also print durations for 1..N matches/day")
      ->check(CLI::PositiveNumber);

  auto* curve = app.add_subcommand("model-curve", "Win/draw/loss probability by rank difference");
  add_out(curve);
  curve->add_option("--max-rank", max_rank, "Largest rank in the table")->check(CLI::Range(2, 1000));

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "cupsim: " << e.what() << "\n";
    const CLI::App* failed = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << "run '" << failed->get_name() << " --help' for usage\n";
    return kExitUsage;
  }
  if (*simulate || *batch || *compare) sim.seed = seed;

  try {
    if (*plan) cmd_plan(common, out);
    if (*simulate) cmd_simulate(common, sim, out);
    if (*batch) cmd_batch(common, sim, out);
    if (*compare) cmd_compare(common, sim, out);
    if (*sched) cmd_schedule(common, so, out);
    if (*curve) cmd_model_curve(common, max_rank, out);
  } catch (const IoError& e) {
    err << "cupsim: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "cupsim: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    err << "cupsim: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "cupsim: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace cupsim::cli
