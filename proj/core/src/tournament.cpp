#include "cupsim/tournament.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "cupsim/csv.hpp"

namespace cupsim {

DrawAssignment draw_assignment(const Roster& roster, const FormatPlan& plan, RngStream& rng) {
  if (roster.size() != plan.slot_count) {
    throw std::invalid_argument("draw: roster has " + std::to_string(roster.size()) +
                                " teams but " + plan.name + " needs " +
                                std::to_string(plan.slot_count));
  }
  DrawAssignment slots(plan.slot_count);
  std::iota(slots.begin(), slots.end(), TeamIndex{0});
  for (std::size_t i = slots.size() - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i + 1));
    std::swap(slots[i], slots[j]);
  }
  return slots;
}

TeamIndex PlayedMatch::winner() const {
  const auto side = score.winner();
  if (!side) throw std::logic_error("PlayedMatch::winner: undecided match");
  return *side == Side::home ? home : away;
}

TeamIndex PlayedMatch::loser() const { return winner() == home ? away : home; }

std::size_t TournamentResult::position_of(TeamIndex team) const {
  const auto it = std::find(classification.begin(), classification.end(), team);
  if (it == classification.end()) throw std::out_of_range("team not classified");
  return static_cast<std::size_t>(it - classification.begin());
}

bool TournamentResult::is_returnee(TeamIndex team) const {
  return std::find(returnees.begin(), returnees.end(), team) != returnees.end();
}

std::vector<std::vector<StandingEntry>> group_tables(const FormatPlan& plan,
                                                     const std::vector<PlayedMatch>& log,
                                                     const std::vector<std::uint64_t>& lots) {
  std::vector<std::map<TeamIndex, TeamRecord>> per_group(plan.groups.size());
  for (const auto& m : log) {
    const auto& fx = plan.fixtures.at(m.fixture);
    if (!fx.group) continue;
    auto& recs = per_group[*fx.group];
    credit(recs[m.home], recs[m.away], m.score);
  }
  std::vector<std::vector<StandingEntry>> tables;
  tables.reserve(plan.groups.size());
  for (const auto& recs : per_group) {
    std::vector<StandingEntry> entries;
    for (const auto& [team, rec] : recs) entries.push_back({team, rec, lots.at(team)});
    tables.push_back(group_standings(std::move(entries)));
  }
  return tables;
}

namespace {

class Engine {
public:
  Engine(const FormatPlan& plan, const Roster& roster, RngStream& rng, const MatchPlayer& player)
      : plan_(plan), roster_(roster), rng_(rng), player_(player) {}

  TournamentResult run() {
    validate_plan(plan_);
    const std::size_t n = roster_.size();
    result_.format = plan_.name;
    result_.draw = draw_assignment(roster_, plan_, rng_);
    result_.lots.resize(n);
    for (auto& lot : result_.lots) lot = rng_.next_u64();
    result_.records.assign(n, TeamRecord{});
    result_.bracket_losses.assign(n, 0);
    result_.eliminated_in.assign(n, std::nullopt);
    played_.assign(plan_.fixtures.size(), std::nullopt);
    met_.assign(n, std::set<TeamIndex>{});

    for (FixtureIndex f = 0; f < plan_.fixtures.size(); ++f) play(f);

    result_.classification = classify_final(plan_, result_.match_log, result_.lots, n);
    return std::move(result_);
  }

private:
  void play(FixtureIndex f) {
    const Fixture& fx = plan_.fixtures[f];
    const TeamIndex home = resolve(f, Side::home);
    const TeamIndex away = resolve(f, Side::away);
    for (TeamIndex t : {home, away}) {
      if (result_.eliminated_in[t]) {
        throw std::logic_error(fx.id + ": " + roster_[t].id + " was already eliminated");
      }
    }
    if (home == away) throw std::logic_error(fx.id + ": team paired with itself");

    MatchScore score = player_ ? player_(fx, roster_[home], roster_[away], rng_)
                               : play_match(roster_[home], roster_[away], fx.mode, rng_);
    if (fx.mode == DecisionMode::must_decide && !score.winner()) {
      throw std::logic_error(fx.id + ": must-decide fixture left undecided");
    }
    if (fx.mode == DecisionMode::draw_allowed) score.shootout_winner.reset();

    const PlayedMatch match{f, home, away, score};
    credit(result_.records[home], result_.records[away], score);
    met_[home].insert(away);
    met_[away].insert(home);
    if (fx.stakes == Stakes::classificatory || fx.stakes == Stakes::eliminatory) {
      const TeamIndex loser = match.loser();
      ++result_.bracket_losses[loser];
      if (fx.stakes == Stakes::eliminatory) result_.eliminated_in[loser] = f;
    }
    played_[f] = match;
    result_.match_log.push_back(match);
  }

  TeamIndex resolve(FixtureIndex f, Side side) {
    const Fixture& fx = plan_.fixtures[f];
    const FixtureSource& src = side == Side::home ? fx.home : fx.away;
    return std::visit(
        [&](const auto& s) -> TeamIndex {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, source::DrawSlot>) {
            return result_.draw.at(s.slot);
          } else if constexpr (std::is_same_v<T, source::WinnerOf>) {
            return finished(s.fixture).winner();
          } else if constexpr (std::is_same_v<T, source::LoserOf>) {
            return finished(s.fixture).loser();
          } else if constexpr (std::is_same_v<T, source::GroupRank>) {
            return table(s.group).at(static_cast<std::size_t>(s.place) - 1).team;
          } else if constexpr (std::is_same_v<T, source::BestPlaced>) {
            return best_placed(s.place).at({f, side});
          } else {
            settle_pool();
            return pool_slots_.at({f, side});
          }
        },
        src);
  }

  const PlayedMatch& finished(FixtureIndex f) const {
    if (!played_.at(f)) throw std::logic_error("fixture referenced before it was played");
    return *played_[f];
  }

  const std::vector<StandingEntry>& table(GroupIndex g) {
    if (tables_.empty()) {
      for (const auto& grp : plan_.groups) {
        for (FixtureIndex f : grp.fixtures) finished(f);
      }
      tables_ = group_tables(plan_, result_.match_log, result_.lots);
    }
    return tables_.at(g);
  }

  // Fixture slot -> team for every BestPlaced source with this place.
  const std::map<std::pair<FixtureIndex, Side>, TeamIndex>& best_placed(int place) {
    auto it = best_slots_.find(place);
    if (it != best_slots_.end()) return it->second;

    struct Slot {
      int ordinal;
      FixtureIndex fixture;
      Side side;
    };
    std::vector<Slot> slots;
    for (FixtureIndex f = 0; f < plan_.fixtures.size(); ++f) {
      for (Side side : {Side::home, Side::away}) {
        const auto& src = side == Side::home ? plan_.fixtures[f].home : plan_.fixtures[f].away;
        if (const auto* b = std::get_if<source::BestPlaced>(&src); b && b->place == place) {
          slots.push_back({b->ordinal, f, side});
        }
      }
    }
    std::sort(slots.begin(), slots.end(),
              [](const Slot& a, const Slot& b) { return a.ordinal < b.ordinal; });

    std::vector<StandingEntry> candidates;
    for (GroupIndex g = 0; g < plan_.groups.size(); ++g) {
      const auto& t = table(g);
      if (t.size() >= static_cast<std::size_t>(place)) {
        const auto& e = t[static_cast<std::size_t>(place) - 1];
        candidates.push_back({e.team, e.record, e.lot});
      }
    }
    candidates = group_standings(std::move(candidates));
    candidates.resize(std::min(candidates.size(), slots.size()));
    if (candidates.size() != slots.size()) {
      throw std::logic_error("not enough teams for best-placed slots");
    }

    std::vector<TeamIndex> opponents;
    for (const auto& s : slots) opponents.push_back(resolve(s.fixture, other(s.side)));
    std::vector<TeamIndex> ranked;
    for (const auto& c : candidates) ranked.push_back(c.team);
    const auto order = assign_avoiding_rematches(ranked, opponents);

    auto& out = best_slots_[place];
    for (std::size_t i = 0; i < slots.size(); ++i) {
      out[{slots[i].fixture, slots[i].side}] = order[i];
    }
    return out;
  }

  // Assigns teams (preference order) to slots with fixed opponents, taking
  // the first assignment in lexicographic preference with no rematch. Falls
  // back to preference order when every assignment repeats a pairing.
  std::vector<TeamIndex> assign_avoiding_rematches(const std::vector<TeamIndex>& teams,
                                                   const std::vector<TeamIndex>& opponents) {
    std::vector<TeamIndex> chosen;
    std::vector<bool> used(teams.size(), false);
    const std::function<bool(std::size_t)> place = [&](std::size_t slot) -> bool {
      if (slot == opponents.size()) return true;
      for (std::size_t i = 0; i < teams.size(); ++i) {
        if (used[i] || teams[i] == opponents[slot] || met_[teams[i]].count(opponents[slot])) {
          continue;
        }
        used[i] = true;
        chosen.push_back(teams[i]);
        if (place(slot + 1)) return true;
        chosen.pop_back();
        used[i] = false;
      }
      return false;
    };
    if (place(0)) return chosen;
    return {teams.begin(), teams.begin() + static_cast<std::ptrdiff_t>(opponents.size())};
  }

  void settle_pool() {
    if (pool_settled_) return;
    pool_settled_ = true;
    const auto& pool = *plan_.returnee_pool;

    std::vector<TeamIndex> members;
    for (const auto& m : pool.members) {
      if (const auto* w = std::get_if<source::WinnerOf>(&m)) {
        members.push_back(finished(w->fixture).winner());
      } else if (const auto* l = std::get_if<source::LoserOf>(&m)) {
        members.push_back(finished(l->fixture).loser());
      } else {
        throw std::logic_error("returnee pool member is not a fixture outcome");
      }
    }
    std::vector<StandingEntry> candidates;
    for (TeamIndex t : members) {
      if (result_.bracket_losses[t] != 1) {
        throw std::logic_error("returnee pool member " + roster_[t].id +
                               " does not have exactly one loss");
      }
      candidates.push_back({t, result_.records[t], result_.lots[t]});
    }
    const auto promoted = select_returnees(candidates, static_cast<std::size_t>(pool.promoted),
                                           members.size());

    struct Slot {
      int ordinal;
      FixtureIndex fixture;
      Side side;
    };
    std::vector<Slot> returnee_slots;
    std::vector<Slot> remaining_slots;
    for (FixtureIndex f = 0; f < plan_.fixtures.size(); ++f) {
      for (Side side : {Side::home, Side::away}) {
        const auto& src = side == Side::home ? plan_.fixtures[f].home : plan_.fixtures[f].away;
        if (const auto* r = std::get_if<source::Returnee>(&src)) {
          returnee_slots.push_back({r->ordinal, f, side});
        } else if (const auto* r = std::get_if<source::Remaining>(&src)) {
          remaining_slots.push_back({r->ordinal, f, side});
        }
      }
    }
    const auto by_ordinal = [](const Slot& a, const Slot& b) { return a.ordinal < b.ordinal; };
    std::sort(returnee_slots.begin(), returnee_slots.end(), by_ordinal);
    std::sort(remaining_slots.begin(), remaining_slots.end(), by_ordinal);

    std::vector<TeamIndex> promoted_teams;
    for (const auto& e : promoted) promoted_teams.push_back(e.team);
    std::vector<TeamIndex> opponents;
    for (const auto& s : returnee_slots) opponents.push_back(resolve(s.fixture, other(s.side)));
    const auto placed = assign_avoiding_rematches(promoted_teams, opponents);
    for (std::size_t i = 0; i < returnee_slots.size(); ++i) {
      pool_slots_[{returnee_slots[i].fixture, returnee_slots[i].side}] = placed[i];
    }
    for (TeamIndex t : promoted_teams) {
      result_.bracket_losses[t] = 0;
      result_.returnees.push_back(t);
    }

    // The rest keep pool order; each slot takes the first waiting team that
    // has not met the slot's opponent (if the opponent is already known).
    std::vector<TeamIndex> waiting;
    for (TeamIndex t : members) {
      if (std::find(promoted_teams.begin(), promoted_teams.end(), t) == promoted_teams.end()) {
        waiting.push_back(t);
      }
    }
    for (const auto& s : remaining_slots) {
      std::optional<TeamIndex> opponent;
      const auto key_other = std::make_pair(s.fixture, other(s.side));
      if (const auto it = pool_slots_.find(key_other); it != pool_slots_.end()) {
        opponent = it->second;
      } else {
        const auto& src = other(s.side) == Side::home ? plan_.fixtures[s.fixture].home
                                                     : plan_.fixtures[s.fixture].away;
        if (!std::holds_alternative<source::Remaining>(src) &&
            !std::holds_alternative<source::Returnee>(src)) {
          opponent = resolve(s.fixture, other(s.side));
        }
      }
      auto pick = waiting.begin();
      if (opponent) {
        const auto fresh = std::find_if(waiting.begin(), waiting.end(), [&](TeamIndex t) {
          return !met_[t].count(*opponent);
        });
        if (fresh != waiting.end()) pick = fresh;
      }
      if (pick == waiting.end()) throw std::logic_error("returnee pool exhausted");
      pool_slots_[{s.fixture, s.side}] = *pick;
      waiting.erase(pick);
    }
  }

  const FormatPlan& plan_;
  const Roster& roster_;
  RngStream& rng_;
  const MatchPlayer& player_;

  TournamentResult result_;
  std::vector<std::optional<PlayedMatch>> played_;
  std::vector<std::set<TeamIndex>> met_;
  std::vector<std::vector<StandingEntry>> tables_;
  std::map<int, std::map<std::pair<FixtureIndex, Side>, TeamIndex>> best_slots_;
  bool pool_settled_ = false;
  std::map<std::pair<FixtureIndex, Side>, TeamIndex> pool_slots_;
};

}  // namespace

TournamentResult run_tournament(const FormatPlan& plan, const Roster& roster, RngStream& rng,
                                const MatchPlayer& player) {
  return Engine(plan, roster, rng, player).run();
}

std::vector<TeamIndex> classify_final(const FormatPlan& plan, const std::vector<PlayedMatch>& log,
                                      const std::vector<std::uint64_t>& lots,
                                      std::size_t team_count) {
  if (lots.size() != team_count) throw std::invalid_argument("classify_final: lots size");
  std::vector<const PlayedMatch*> by_fixture(plan.fixtures.size(), nullptr);
  std::vector<TeamRecord> records(team_count);
  std::vector<bool> left_group(team_count, false);
  for (const auto& m : log) {
    if (m.fixture >= plan.fixtures.size() || m.home >= team_count || m.away >= team_count) {
      throw std::logic_error("classify_final: log entry out of range");
    }
    by_fixture[m.fixture] = &m;
    credit(records[m.home], records[m.away], m.score);
    if (!plan.fixtures[m.fixture].group) {
      left_group[m.home] = true;
      left_group[m.away] = true;
    }
  }
  const auto need = [&](FixtureIndex f) -> const PlayedMatch& {
    if (by_fixture.at(f) == nullptr) {
      throw std::logic_error("incomplete tournament: " + plan.fixtures.at(f).id + " not played");
    }
    return *by_fixture[f];
  };

  std::vector<TeamIndex> order;
  std::vector<bool> placed(team_count, false);
  const auto push = [&](TeamIndex t) {
    if (placed[t]) throw std::logic_error("classify_final: team placed twice");
    placed[t] = true;
    order.push_back(t);
  };
  const auto& rule = plan.classification;
  push(need(rule.final_fixture).winner());
  push(need(rule.final_fixture).loser());
  if (rule.third_place_fixture) {
    push(need(*rule.third_place_fixture).winner());
    push(need(*rule.third_place_fixture).loser());
  }

  std::vector<std::vector<StandingEntry>> tables;
  for (const auto& tier : rule.tiers) {
    std::vector<StandingEntry> band;
    for (FixtureIndex f : tier.losers_of) {
      const TeamIndex t = need(f).loser();
      band.push_back({t, records[t], lots[t]});
    }
    if (tier.group_place) {
      if (tables.empty()) tables = group_tables(plan, log, lots);
      const auto p = static_cast<std::size_t>(*tier.group_place);
      for (const auto& table : tables) {
        if (table.size() < p) continue;
        const TeamIndex t = table[p - 1].team;
        if (!left_group[t]) band.push_back({t, records[t], lots[t]});
      }
    }
    for (const auto& e : group_standings(std::move(band))) push(e.team);
  }
  if (order.size() != team_count) {
    throw std::logic_error("incomplete tournament: classified " + std::to_string(order.size()) +
                           " of " + std::to_string(team_count) + " teams");
  }
  return order;
}

void write_match_log_csv(std::ostream& out, const FormatPlan& plan, const Roster& roster,
                         const std::vector<PlayedMatch>& log) {
  out << "fixture_id,home,away,home_goals,away_goals,shootout_winner\n";
  for (const auto& m : log) {
    std::string shootout;
    if (m.score.shootout_winner) {
      shootout = *m.score.shootout_winner == Side::home ? "home" : "away";
    }
    csv::write_row(out, {plan.fixtures.at(m.fixture).id, roster[m.home].id, roster[m.away].id,
                         std::to_string(m.score.home_goals), std::to_string(m.score.away_goals),
                         shootout});
  }
}

}  // namespace cupsim
