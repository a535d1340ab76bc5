#include "cupsim/team.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cupsim/csv.hpp"

namespace cupsim {

InvalidRankError::InvalidRankError(int rank)
    : std::invalid_argument("invalid FIFA rank " + std::to_string(rank) +
                            " (must be >= 1)") {}

void require_valid_rank(int rank) {
  if (rank < 1) throw InvalidRankError(rank);
}

Roster::Roster(std::vector<Team> teams) : teams_(std::move(teams)) {
  if (teams_.size() < 2) {
    throw std::invalid_argument("roster needs at least two teams");
  }
  std::set<std::string> ids;
  std::set<int> ranks;
  for (const Team& t : teams_) {
    require_valid_rank(t.fifa_rank);
    if (t.id.empty()) throw std::invalid_argument("roster: empty team id");
    if (!ids.insert(t.id).second) {
      throw std::invalid_argument("roster: duplicate team id '" + t.id + "'");
    }
    if (!ranks.insert(t.fifa_rank).second) {
      throw std::invalid_argument("roster: duplicate FIFA rank " +
                                  std::to_string(t.fifa_rank));
    }
  }
}

Roster Roster::by_rank(std::size_t n) {
  std::vector<Team> teams;
  teams.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    std::string id = (i < 10 ? "T0" : "T") + std::to_string(i);
    teams.push_back(Team{id, "", static_cast<int>(i)});
  }
  return Roster(std::move(teams));
}

namespace {

int parse_rank(const std::string& text) {
  int value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  while (first != last && *first == ' ') ++first;
  while (last != first && *(last - 1) == ' ') --last;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw std::invalid_argument("roster: fifa_rank '" + text + "' is not an integer");
  }
  return value;
}

}  // namespace

Roster Roster::parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("roster CSV: empty input");
  const auto header = csv::split_record(line);
  auto column = [&](std::string_view name) -> std::ptrdiff_t {
    const auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : it - header.begin();
  };
  const auto id_col = column("id");
  const auto rank_col = column("fifa_rank");
  const auto name_col = column("name");
  if (id_col < 0 || rank_col < 0) {
    throw std::invalid_argument("roster CSV: header must contain id and fifa_rank");
  }
  std::vector<Team> teams;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto fields = csv::split_record(line);
    const auto need = static_cast<std::size_t>(std::max({id_col, rank_col, name_col})) + 1;
    if (fields.size() < need) {
      throw std::invalid_argument("roster CSV: short row '" + line + "'");
    }
    Team t;
    t.id = fields[static_cast<std::size_t>(id_col)];
    t.fifa_rank = parse_rank(fields[static_cast<std::size_t>(rank_col)]);
    if (name_col >= 0) t.name = fields[static_cast<std::size_t>(name_col)];
    teams.push_back(std::move(t));
  }
  return Roster(std::move(teams));
}

Roster Roster::parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("roster JSON: ") + e.what());
  }
  if (doc.is_object() && doc.contains("teams")) doc = doc["teams"];
  if (!doc.is_array()) throw std::invalid_argument("roster JSON: expected an array of teams");
  std::vector<Team> teams;
  for (const auto& entry : doc) {
    if (!entry.contains("id") || !entry.contains("fifa_rank")) {
      throw std::invalid_argument("roster JSON: each team needs id and fifa_rank");
    }
    Team t;
    t.id = entry["id"].is_string() ? entry["id"].get<std::string>() : entry["id"].dump();
    if (!entry["fifa_rank"].is_number_integer()) {
      throw std::invalid_argument("roster JSON: fifa_rank must be an integer");
    }
    t.fifa_rank = entry["fifa_rank"].get<int>();
    if (entry.contains("name") && entry["name"].is_string()) {
      t.name = entry["name"].get<std::string>();
    }
    teams.push_back(std::move(t));
  }
  return Roster(std::move(teams));
}

Roster Roster::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open roster file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (path.extension() == ".json") return parse_json(buf.str());
  return parse_csv(buf.str());
}

std::vector<TeamIndex> Roster::skill_order() const {
  std::vector<TeamIndex> order(teams_.size());
  std::iota(order.begin(), order.end(), TeamIndex{0});
  std::sort(order.begin(), order.end(), [&](TeamIndex a, TeamIndex b) {
    return teams_[a].fifa_rank < teams_[b].fifa_rank;
  });
  return order;
}

std::vector<std::size_t> Roster::skill_index() const {
  const auto order = skill_order();
  std::vector<std::size_t> index(teams_.size());
  for (std::size_t s = 0; s < order.size(); ++s) index[order[s]] = s;
  return index;
}

}  // namespace cupsim
