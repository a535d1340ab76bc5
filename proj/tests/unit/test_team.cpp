#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "cupsim/team.hpp"

using namespace cupsim;

TEST(Team, RequireValidRank) {
  EXPECT_NO_THROW(require_valid_rank(1));
  EXPECT_THROW(require_valid_rank(0), InvalidRankError);
  EXPECT_THROW(require_valid_rank(-3), InvalidRankError);
}

TEST(Roster, ByRankBuildsSyntheticIds) {
  const Roster r = Roster::by_rank(48);
  ASSERT_EQ(r.size(), 48u);
  EXPECT_EQ(r[0].id, "T01");
  EXPECT_EQ(r[47].id, "T48");
  for (TeamIndex i = 0; i < 48; ++i) EXPECT_EQ(r.rank(i), static_cast<int>(i) + 1);
}

TEST(Roster, RejectsDuplicatesAndBadRanks) {
  EXPECT_THROW(Roster({{"A", "a", 1}, {"A", "b", 2}}), std::invalid_argument);
  EXPECT_THROW(Roster({{"A", "a", 1}, {"B", "b", 1}}), std::invalid_argument);
  EXPECT_THROW(Roster({{"A", "a", 0}, {"B", "b", 1}}), InvalidRankError);
  EXPECT_THROW(Roster({{"A", "a", 1}}), std::invalid_argument);
}

TEST(Roster, SkillOrderFollowsRank) {
  const Roster r({{"X", "", 30}, {"Y", "", 2}, {"Z", "", 11}});
  EXPECT_EQ(r.skill_order(), (std::vector<TeamIndex>{1, 2, 0}));
  EXPECT_EQ(r.skill_index(), (std::vector<std::size_t>{2, 0, 1}));
}

TEST(Roster, ParsesCsv) {
  const Roster r = Roster::parse_csv("id,name,fifa_rank\nARG,\"Argentina\",1\nFRA,France,2\n");
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].id, "ARG");
  EXPECT_EQ(r[0].name, "Argentina");
  EXPECT_EQ(r[1].fifa_rank, 2);
}

TEST(Roster, CsvErrors) {
  EXPECT_THROW(Roster::parse_csv(""), std::invalid_argument);
  EXPECT_THROW(Roster::parse_csv("name,rank\nA,1\n"), std::invalid_argument);
  EXPECT_THROW(Roster::parse_csv("id,fifa_rank\nA,x\nB,2\n"), std::invalid_argument);
}

TEST(Roster, ParsesJson) {
  const Roster r = Roster::parse_json(R"([{"id":"A","fifa_rank":5},{"id":"B","fifa_rank":9,"name":"Bee"}])");
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[1].name, "Bee");
  EXPECT_THROW(Roster::parse_json("{}"), std::invalid_argument);
  EXPECT_THROW(Roster::parse_json("[{\"id\":\"A\"}]"), std::invalid_argument);
}

TEST(Roster, LoadPicksFormatFromExtension) {
  const auto dir = std::filesystem::temp_directory_path() / "cupsim_roster_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "r.csv") << "id,fifa_rank\nA,3\nB,4\n";
    std::ofstream(dir / "r.json") << R"([{"id":"A","fifa_rank":3},{"id":"B","fifa_rank":4}])";
  }
  EXPECT_EQ(Roster::load(dir / "r.csv").size(), 2u);
  EXPECT_EQ(Roster::load(dir / "r.json").size(), 2u);
  EXPECT_THROW(Roster::load(dir / "missing.csv"), std::runtime_error);
  std::filesystem::remove_all(dir);
}
