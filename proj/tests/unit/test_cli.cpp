#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "cupsim");
  std::ostringstream out, err;
  const int code = cupsim::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class TempDir {
public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("cupsim_cli_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::remove_all(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  [[nodiscard]] const fs::path& path() const { return path_; }
  [[nodiscard]] std::string str(const std::string& sub = "") const { return (path_ / sub).string(); }

private:
  fs::path path_;
};

}  // namespace

TEST(Cli, PlanJson) {
  const auto r = cli({"plan", "--format", "double-elim-48"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["fixtures"].size(), 96u);
  EXPECT_EQ(doc["fixtures"][0]["id"], "M01");
  EXPECT_TRUE(doc["fixtures"][0].contains("round_tag"));
  EXPECT_TRUE(doc["fixtures"][0].contains("mode"));
}

TEST(Cli, ScheduleDuration) {
  const auto r = cli({"schedule", "--format", "double-elim-48", "--max-per-day", "5",
                      "--repechage-rest", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto pos = r.out.find("duration ");
  ASSERT_NE(pos, std::string::npos);
  const int days = std::stoi(r.out.substr(pos + 9));
  EXPECT_GE(days, 36);
  EXPECT_LE(days, 40);
  const auto g3 = cli({"schedule", "--format", "group-of-3"});
  EXPECT_NE(g3.out.find("duration 32\n"), std::string::npos);
}

TEST(Cli, ScheduleCalendarAndConfig) {
  TempDir dir;
  fs::create_directories(dir.path());
  std::ofstream(dir.path() / "sched.json")
      << R"({"per_day_capacities":[6,6,6,6,6,6,6,6],"max_per_day":4,"repechage_rest_days":3,"start_date":"2026-06-15"})";
  const auto r = cli({"schedule", "--format", "double-elim-48", "--config", dir.str("sched.json"),
                      "--out", dir.str("cal"), "--curve-max", "6"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("duration 35\n"), std::string::npos);
  EXPECT_NE(r.out.find("window 2026-06-15 2026-07-19"), std::string::npos);
  const auto cal = slurp(dir.path() / "cal" / "calendar.csv");
  EXPECT_EQ(cal.rfind("date,fixture_id,round_tag,bracket\n", 0), 0u);
  EXPECT_NE(cal.find("2026-07-19,M96,F,final-stage"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir.path() / "cal" / "duration_curve.csv"));
}

TEST(Cli, BatchDeterministic) {
  TempDir dir;
  const std::vector<std::string> base = {"batch", "--format", "group-of-3", "--runs", "100",
                                         "--seed", "7", "--match-metrics"};
  auto a = base;
  a.insert(a.end(), {"--out", dir.str("a")});
  auto b = base;
  b.insert(b.end(), {"--out", dir.str("b"), "--threads", "3"});
  ASSERT_EQ(cli(a).code, 0);
  ASSERT_EQ(cli(b).code, 0);
  int files = 0;
  for (const auto& entry : fs::directory_iterator(dir.path() / "a")) {
    const auto name = entry.path().filename();
    EXPECT_EQ(slurp(entry.path()), slurp(dir.path() / "b" / name)) << name;
    ++files;
  }
  EXPECT_EQ(files, 7);
  // stdout mode as well
  EXPECT_EQ(cli(base).out, cli(base).out);
}

TEST(Cli, SimulateDeterministic) {
  const auto a = cli({"simulate", "--format", "group-of-4", "--seed", "11"});
  const auto b = cli({"simulate", "--format", "group-of-4", "--seed", "11"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 105);
  EXPECT_NE(a.out, cli({"simulate", "--format", "group-of-4", "--seed", "12"}).out);
}

TEST(Cli, SimulateWritesFiles) {
  TempDir dir;
  const auto r = cli({"simulate", "--format", "double-elim-48", "--seed", "2", "--out", dir.str()});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* f : {"match_log.csv", "classification.csv", "summary.json"}) {
    EXPECT_TRUE(fs::exists(dir.path() / f)) << f;
  }
  const auto summary = nlohmann::json::parse(slurp(dir.path() / "summary.json"));
  EXPECT_EQ(summary["matches"], 96);
  EXPECT_EQ(summary["returnees"].size(), 2u);
}

TEST(Cli, CustomRoster) {
  TempDir dir;
  fs::create_directories(dir.path());
  {
    std::ofstream roster(dir.path() / "roster.csv");
    roster << "id,fifa_rank\n";
    for (int i = 1; i <= 48; ++i) roster << "C" << i << "," << 2 * i << "\n";
  }
  const auto r = cli({"simulate", "--format", "group-of-3", "--seed", "1", "--roster",
                      dir.str("roster.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find(",C"), std::string::npos);
}

TEST(Cli, DryRunWritesNothing) {
  TempDir dir;
  const auto r = cli({"batch", "--format", "double-elim-48", "--runs", "5", "--seed", "1",
                      "--out", dir.str(), "--dry-run"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("would write"), std::string::npos);
  EXPECT_NE(r.out.find("summary.json"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir.path()));
}

TEST(Cli, Compare) {
  TempDir dir;
  const auto r = cli({"compare", "--runs", "50", "--seed", "3", "--out", dir.str()});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* f : {"comparison.json", "fig2_fairness_cdf.csv", "fig3_rank_index.csv",
                        "fig4_rank_distance.csv", "fig5_interest_counts.csv"}) {
    EXPECT_TRUE(fs::exists(dir.path() / f)) << f;
  }
  const auto fig2 = slurp(dir.path() / "fig2_fairness_cdf.csv");
  EXPECT_NE(fig2.find("group-of-4,"), std::string::npos);
}

TEST(Cli, ModelCurve) {
  const auto r = cli({"model-curve", "--max-rank", "10"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("rank_diff,p_win,p_draw,p_loss\n", 0), 0u);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 20);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"explode"}).code, 2);
  EXPECT_EQ(cli({"plan"}).code, 2);
  EXPECT_EQ(cli({"plan", "--format", "group-of-5"}).code, 2);
  EXPECT_EQ(cli({"batch", "--format", "group-of-3"}).code, 2);  // no seed
  EXPECT_EQ(cli({"simulate", "--format", "group-of-3"}).code, 2);
  EXPECT_EQ(cli({"batch", "--format", "group-of-3", "--seed", "1", "--runs", "0"}).code, 2);
  EXPECT_EQ(cli({"schedule", "--format", "group-of-3", "--start-date", "2026-02-30"}).code, 2);
  EXPECT_EQ(cli({"schedule", "--format", "group-of-3", "--rest", "3", "--repechage-rest", "4"}).code, 2);
  EXPECT_EQ(cli({"schedule", "--format", "group-of-3", "--per-day-capacities", "6,x"}).code, 2);
  const auto r = cli({"plan", "--format", "group-of-5"});
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, IoErrors) {
  EXPECT_EQ(cli({"simulate", "--format", "group-of-3", "--seed", "1", "--roster", "/nonexistent/r.csv"}).code, 3);
  EXPECT_EQ(cli({"schedule", "--format", "group-of-3", "--config", "/nonexistent/c.json"}).code, 3);
  EXPECT_EQ(cli({"plan", "--format", "group-of-3", "--out", "/proc/cupsim-cannot-write"}).code, 3);
}

TEST(Cli, Help) {
  const auto r = cli({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("schedule"), std::string::npos);
}
