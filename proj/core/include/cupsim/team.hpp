#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cupsim {

inline constexpr std::size_t kCupTeams = 48;

class InvalidRankError : public std::invalid_argument {
public:
  explicit InvalidRankError(int rank);
};

// Throws InvalidRankError unless rank >= 1.
void require_valid_rank(int rank);

struct Team {
  std::string id;
  std::string name;
  int fifa_rank = 0;  // 1 = best
};

// Index of a team inside its roster. Engines work on indices; ids are only
// used at the I/O boundary.
using TeamIndex = std::size_t;

// Ordered set of teams with unique ids and unique FIFA ranks, so skill order
// is a total order.
class Roster {
public:
  explicit Roster(std::vector<Team> teams);

  // Ranks 1..n with synthetic ids T01..Tn.
  static Roster by_rank(std::size_t n = kCupTeams);

  // CSV (header with `id`, `fifa_rank`, optional `name`) or JSON (array of
  // objects with the same keys). Format is picked from the extension.
  static Roster load(const std::filesystem::path& path);
  static Roster parse_csv(std::string_view text);
  static Roster parse_json(std::string_view text);

  [[nodiscard]] std::size_t size() const { return teams_.size(); }
  [[nodiscard]] const Team& operator[](TeamIndex i) const { return teams_.at(i); }
  [[nodiscard]] const std::vector<Team>& teams() const { return teams_; }
  [[nodiscard]] int rank(TeamIndex i) const { return teams_.at(i).fifa_rank; }

  // Team indices sorted by ascending FIFA rank (skill order, best first).
  [[nodiscard]] std::vector<TeamIndex> skill_order() const;
  // skill_index()[team] = position of team in skill_order(), 0 = most skilled.
  [[nodiscard]] std::vector<std::size_t> skill_index() const;

private:
  std::vector<Team> teams_;
};

}  // namespace cupsim
