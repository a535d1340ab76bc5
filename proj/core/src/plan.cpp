#include "cupsim/plan.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>
#include <type_traits>

#include <json.hpp>

namespace cupsim {

using nlohmann::json;

std::optional<FixtureIndex> FormatPlan::find(std::string_view id) const {
  for (FixtureIndex i = 0; i < fixtures.size(); ++i) {
    if (fixtures[i].id == id) return i;
  }
  return std::nullopt;
}

std::string_view to_string(Bracket b) {
  switch (b) {
    case Bracket::main: return "main";
    case Bracket::repechage: return "repechage";
    case Bracket::group: return "group";
    case Bracket::knockout: return "knockout";
    case Bracket::final_stage: return "final-stage";
  }
  return "?";
}

std::string_view to_string(Stakes s) {
  switch (s) {
    case Stakes::group: return "group";
    case Stakes::classificatory: return "classificatory";
    case Stakes::eliminatory: return "eliminatory";
    case Stakes::placement: return "placement";
  }
  return "?";
}

std::string_view to_string(DecisionMode m) {
  return m == DecisionMode::draw_allowed ? "draw-allowed" : "must-decide";
}

Bracket bracket_from_string(std::string_view s) {
  for (Bracket b : {Bracket::main, Bracket::repechage, Bracket::group, Bracket::knockout,
                    Bracket::final_stage}) {
    if (to_string(b) == s) return b;
  }
  throw std::invalid_argument("unknown bracket '" + std::string(s) + "'");
}

Stakes stakes_from_string(std::string_view s) {
  for (Stakes k :
       {Stakes::group, Stakes::classificatory, Stakes::eliminatory, Stakes::placement}) {
    if (to_string(k) == s) return k;
  }
  throw std::invalid_argument("unknown stakes '" + std::string(s) + "'");
}

DecisionMode mode_from_string(std::string_view s) {
  if (s == "draw-allowed") return DecisionMode::draw_allowed;
  if (s == "must-decide") return DecisionMode::must_decide;
  throw std::invalid_argument("unknown decision mode '" + std::string(s) + "'");
}

namespace {

struct SourceRefs {
  std::vector<FixtureIndex> fixtures;
  std::vector<GroupIndex> groups;
  bool all_groups = false;
  bool pool = false;
};

SourceRefs refs_of(const FixtureSource& src) {
  SourceRefs r;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, source::WinnerOf> ||
                      std::is_same_v<T, source::LoserOf>) {
          r.fixtures.push_back(s.fixture);
        } else if constexpr (std::is_same_v<T, source::GroupRank>) {
          r.groups.push_back(s.group);
        } else if constexpr (std::is_same_v<T, source::BestPlaced>) {
          r.all_groups = true;
        } else if constexpr (std::is_same_v<T, source::Returnee> ||
                             std::is_same_v<T, source::Remaining>) {
          r.pool = true;
        }
      },
      src);
  return r;
}

[[noreturn]] void fail(const FormatPlan& plan, const std::string& what) {
  throw std::logic_error("plan " + plan.name + ": " + what);
}

}  // namespace

void validate_plan(const FormatPlan& plan) {
  if (plan.fixtures.empty()) fail(plan, "no fixtures");
  std::set<std::string> ids;
  std::vector<int> knockout_slot_use(plan.slot_count, 0);
  std::vector<int> slot_seen(plan.slot_count, 0);
  std::map<int, int> returnee_use;
  std::map<int, int> remaining_use;
  std::map<int, int> best_use;  // place -> count
  std::map<int, int> rank_use;  // place -> count

  std::vector<FixtureIndex> pool_fixtures;
  if (plan.returnee_pool) {
    for (const auto& m : plan.returnee_pool->members) {
      const auto r = refs_of(m);
      if (!r.groups.empty() || r.all_groups || r.pool) {
        fail(plan, "returnee pool members must come from fixtures");
      }
      pool_fixtures.insert(pool_fixtures.end(), r.fixtures.begin(), r.fixtures.end());
    }
    if (plan.returnee_pool->promoted < 1 ||
        static_cast<std::size_t>(plan.returnee_pool->promoted) >=
            plan.returnee_pool->members.size()) {
      fail(plan, "returnee pool promotes an invalid number of teams");
    }
  }

  for (GroupIndex g = 0; g < plan.groups.size(); ++g) {
    for (FixtureIndex f : plan.groups[g].fixtures) {
      if (f >= plan.fixtures.size() || plan.fixtures[f].group != g) {
        fail(plan, "group " + plan.groups[g].label + " lists a foreign fixture");
      }
    }
  }

  for (FixtureIndex i = 0; i < plan.fixtures.size(); ++i) {
    const Fixture& fx = plan.fixtures[i];
    if (!ids.insert(fx.id).second) fail(plan, "duplicate fixture id " + fx.id);
    const bool in_group = fx.group.has_value();
    if (in_group != (fx.bracket == Bracket::group)) {
      fail(plan, fx.id + ": group membership and bracket disagree");
    }
    if (in_group && fx.mode != DecisionMode::draw_allowed) {
      fail(plan, fx.id + ": group fixtures allow draws");
    }
    if (!in_group && fx.mode != DecisionMode::must_decide) {
      fail(plan, fx.id + ": bracket fixtures must be decided");
    }
    if (in_group && *fx.group >= plan.groups.size()) fail(plan, fx.id + ": unknown group");

    std::vector<FixtureIndex> group_fixture_refs;
    for (const FixtureSource* src : {&fx.home, &fx.away}) {
      const auto r = refs_of(*src);
      for (FixtureIndex f : r.fixtures) {
        if (f >= i) fail(plan, fx.id + ": references a later or unknown fixture");
      }
      for (GroupIndex g : r.groups) {
        if (g >= plan.groups.size()) fail(plan, fx.id + ": unknown group reference");
        for (FixtureIndex f : plan.groups[g].fixtures) {
          if (f >= i) fail(plan, fx.id + ": group " + plan.groups[g].label + " not finished");
        }
      }
      if (r.all_groups) {
        for (const auto& g : plan.groups) {
          for (FixtureIndex f : g.fixtures) {
            if (f >= i) fail(plan, fx.id + ": group stage not finished");
          }
        }
      }
      if (r.pool) {
        if (!plan.returnee_pool) fail(plan, fx.id + ": no returnee pool defined");
        for (FixtureIndex f : pool_fixtures) {
          if (f >= i) fail(plan, fx.id + ": returnee pool not settled");
        }
      }
      if (const auto* s = std::get_if<source::DrawSlot>(src)) {
        if (s->slot >= plan.slot_count) fail(plan, fx.id + ": draw slot out of range");
        slot_seen[s->slot] = 1;
        if (in_group) {
          const auto& slots = plan.groups[*fx.group].slots;
          if (std::find(slots.begin(), slots.end(), s->slot) == slots.end()) {
            fail(plan, fx.id + ": slot outside its group");
          }
        } else if (++knockout_slot_use[s->slot] > 1) {
          fail(plan, fx.id + ": draw slot used twice");
        }
      } else if (in_group) {
        fail(plan, fx.id + ": group fixtures take draw slots only");
      }
      if (const auto* s = std::get_if<source::Returnee>(src)) ++returnee_use[s->ordinal];
      if (const auto* s = std::get_if<source::Remaining>(src)) ++remaining_use[s->ordinal];
      if (const auto* s = std::get_if<source::BestPlaced>(src)) ++best_use[s->place];
      if (const auto* s = std::get_if<source::GroupRank>(src)) {
        if (s->place < 1 ||
            static_cast<std::size_t>(s->place) > plan.groups[s->group].slots.size()) {
          fail(plan, fx.id + ": group place out of range");
        }
        ++rank_use[s->place];
      }
    }
    if (fx.home.index() == fx.away.index()) {
      if (fx.home == fx.away) fail(plan, fx.id + ": both sides share one source");
    }
  }

  for (std::size_t s = 0; s < plan.slot_count; ++s) {
    if (!slot_seen[s]) fail(plan, "draw slot " + std::to_string(s) + " never used");
  }
  if (plan.returnee_pool) {
    const int promoted = plan.returnee_pool->promoted;
    const int kept = static_cast<int>(plan.returnee_pool->members.size()) - promoted;
    for (int k = 1; k <= promoted; ++k) {
      if (returnee_use[k] != 1) fail(plan, "returnee ordinal used other than once");
    }
    for (int k = 1; k <= kept; ++k) {
      if (remaining_use[k] != 1) fail(plan, "remaining ordinal used other than once");
    }
    if (static_cast<int>(returnee_use.size()) != promoted ||
        static_cast<int>(remaining_use.size()) != kept) {
      fail(plan, "pool ordinal out of range");
    }
  }

  // Every team must land in exactly one classification band.
  const auto& rule = plan.classification;
  if (rule.final_fixture >= plan.fixtures.size()) fail(plan, "final fixture out of range");
  std::size_t placed = 2;
  if (rule.third_place_fixture) {
    if (*rule.third_place_fixture >= plan.fixtures.size()) fail(plan, "third place out of range");
    placed += 2;
  }
  std::set<FixtureIndex> tier_fixtures;
  for (const auto& tier : rule.tiers) {
    for (FixtureIndex f : tier.losers_of) {
      if (f >= plan.fixtures.size()) fail(plan, "tier " + tier.label + ": bad fixture");
      if (plan.fixtures[f].stakes != Stakes::eliminatory) {
        fail(plan, "tier " + tier.label + ": " + plan.fixtures[f].id + " is not eliminatory");
      }
      if (!tier_fixtures.insert(f).second) fail(plan, "fixture in two tiers");
      ++placed;
    }
    if (tier.group_place) {
      const int p = *tier.group_place;
      std::size_t at_place = 0;
      for (const auto& g : plan.groups) {
        if (g.slots.size() >= static_cast<std::size_t>(p)) ++at_place;
      }
      const std::size_t advancing =
          static_cast<std::size_t>(rank_use[p]) + static_cast<std::size_t>(best_use[p]);
      if (advancing > at_place) fail(plan, "tier " + tier.label + ": too many advance");
      placed += at_place - advancing;
    }
  }
  for (FixtureIndex f = 0; f < plan.fixtures.size(); ++f) {
    if (plan.fixtures[f].stakes == Stakes::eliminatory && !tier_fixtures.count(f)) {
      fail(plan, plan.fixtures[f].id + ": eliminatory fixture without a tier");
    }
  }
  if (placed != plan.slot_count) {
    fail(plan, "classification covers " + std::to_string(placed) + " of " +
                   std::to_string(plan.slot_count) + " teams");
  }
}

std::vector<FixtureIndex> predecessors(const FormatPlan& plan, FixtureIndex fixture) {
  const Fixture& fx = plan.fixtures.at(fixture);
  std::set<FixtureIndex> out;
  for (const FixtureSource* src : {&fx.home, &fx.away}) {
    const auto r = refs_of(*src);
    out.insert(r.fixtures.begin(), r.fixtures.end());
    for (GroupIndex g : r.groups) {
      out.insert(plan.groups[g].fixtures.begin(), plan.groups[g].fixtures.end());
    }
    if (r.all_groups) {
      for (const auto& g : plan.groups) out.insert(g.fixtures.begin(), g.fixtures.end());
    }
    if (r.pool && plan.returnee_pool) {
      for (const auto& m : plan.returnee_pool->members) {
        const auto mr = refs_of(m);
        out.insert(mr.fixtures.begin(), mr.fixtures.end());
      }
    }
    if (const auto* s = std::get_if<source::DrawSlot>(src)) {
      // Latest earlier fixture drawing the same slot.
      for (FixtureIndex j = fixture; j-- > 0;) {
        const Fixture& prev = plan.fixtures[j];
        const auto uses = [&](const FixtureSource& other) {
          const auto* o = std::get_if<source::DrawSlot>(&other);
          return o != nullptr && o->slot == s->slot;
        };
        if (uses(prev.home) || uses(prev.away)) {
          out.insert(j);
          break;
        }
      }
    }
  }
  return {out.begin(), out.end()};
}

std::string describe(const FormatPlan& plan, const FixtureSource& src) {
  return std::visit(
      [&](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, source::DrawSlot>) {
          return "Slot" + std::to_string(s.slot + 1);
        } else if constexpr (std::is_same_v<T, source::WinnerOf>) {
          return "W(" + plan.fixtures.at(s.fixture).id + ")";
        } else if constexpr (std::is_same_v<T, source::LoserOf>) {
          return "L(" + plan.fixtures.at(s.fixture).id + ")";
        } else if constexpr (std::is_same_v<T, source::GroupRank>) {
          return plan.groups.at(s.group).label + "#" + std::to_string(s.place);
        } else if constexpr (std::is_same_v<T, source::BestPlaced>) {
          return "Best" + std::to_string(s.place) + "rd#" + std::to_string(s.ordinal);
        } else if constexpr (std::is_same_v<T, source::Returnee>) {
          return "Returnee#" + std::to_string(s.ordinal);
        } else {
          return "Remaining#" + std::to_string(s.ordinal);
        }
      },
      src);
}

namespace {

json source_to_json(const FormatPlan& plan, const FixtureSource& src) {
  return std::visit(
      [&](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, source::DrawSlot>) {
          return {{"kind", "draw-slot"}, {"slot", s.slot}};
        } else if constexpr (std::is_same_v<T, source::WinnerOf>) {
          return {{"kind", "winner-of"}, {"fixture", plan.fixtures.at(s.fixture).id}};
        } else if constexpr (std::is_same_v<T, source::LoserOf>) {
          return {{"kind", "loser-of"}, {"fixture", plan.fixtures.at(s.fixture).id}};
        } else if constexpr (std::is_same_v<T, source::GroupRank>) {
          return {{"kind", "group-rank"}, {"group", plan.groups.at(s.group).label},
                  {"place", s.place}};
        } else if constexpr (std::is_same_v<T, source::BestPlaced>) {
          return {{"kind", "best-placed"}, {"place", s.place}, {"ordinal", s.ordinal}};
        } else if constexpr (std::is_same_v<T, source::Returnee>) {
          return {{"kind", "returnee"}, {"ordinal", s.ordinal}};
        } else {
          return {{"kind", "remaining"}, {"ordinal", s.ordinal}};
        }
      },
      src);
}

struct JsonIndex {
  std::map<std::string, FixtureIndex> fixtures;
  std::map<std::string, GroupIndex> groups;
};

FixtureSource source_from_json(const json& j, const JsonIndex& index) {
  const std::string kind = j.at("kind").get<std::string>();
  auto fixture_ref = [&]() {
    const auto id = j.at("fixture").get<std::string>();
    const auto it = index.fixtures.find(id);
    if (it == index.fixtures.end()) {
      throw std::invalid_argument("plan JSON: unknown or later fixture " + id);
    }
    return it->second;
  };
  if (kind == "draw-slot") return source::DrawSlot{j.at("slot").get<std::size_t>()};
  if (kind == "winner-of") return source::WinnerOf{fixture_ref()};
  if (kind == "loser-of") return source::LoserOf{fixture_ref()};
  if (kind == "group-rank") {
    const auto label = j.at("group").get<std::string>();
    const auto it = index.groups.find(label);
    if (it == index.groups.end()) throw std::invalid_argument("plan JSON: unknown group " + label);
    return source::GroupRank{it->second, j.at("place").get<int>()};
  }
  if (kind == "best-placed") {
    return source::BestPlaced{j.at("place").get<int>(), j.at("ordinal").get<int>()};
  }
  if (kind == "returnee") return source::Returnee{j.at("ordinal").get<int>()};
  if (kind == "remaining") return source::Remaining{j.at("ordinal").get<int>()};
  throw std::invalid_argument("plan JSON: unknown source kind " + kind);
}

}  // namespace

std::string plan_to_json(const FormatPlan& plan, int indent) {
  json doc;
  doc["name"] = plan.name;
  doc["slot_count"] = plan.slot_count;
  doc["fixture_count"] = plan.fixtures.size();
  json groups = json::array();
  for (const auto& g : plan.groups) {
    json fx = json::array();
    for (FixtureIndex f : g.fixtures) fx.push_back(plan.fixtures[f].id);
    groups.push_back({{"label", g.label}, {"slots", g.slots}, {"fixtures", fx}});
  }
  doc["groups"] = groups;
  json fixtures = json::array();
  for (const auto& fx : plan.fixtures) {
    json f = {{"id", fx.id},
              {"round_tag", fx.round_tag},
              {"bracket", to_string(fx.bracket)},
              {"stakes", to_string(fx.stakes)},
              {"home", source_to_json(plan, fx.home)},
              {"away", source_to_json(plan, fx.away)},
              {"mode", to_string(fx.mode)}};
    if (fx.group) f["group"] = plan.groups[*fx.group].label;
    fixtures.push_back(std::move(f));
  }
  doc["fixtures"] = fixtures;
  if (plan.returnee_pool) {
    json members = json::array();
    for (const auto& m : plan.returnee_pool->members) members.push_back(source_to_json(plan, m));
    doc["returnee_pool"] = {{"promoted", plan.returnee_pool->promoted}, {"members", members}};
  }
  const auto& rule = plan.classification;
  json cls = {{"rule", rule.name}, {"final", plan.fixtures.at(rule.final_fixture).id}};
  if (rule.third_place_fixture) {
    cls["third_place"] = plan.fixtures.at(*rule.third_place_fixture).id;
  }
  json tiers = json::array();
  for (const auto& t : rule.tiers) {
    json tier = {{"label", t.label}};
    json losers = json::array();
    for (FixtureIndex f : t.losers_of) losers.push_back(plan.fixtures[f].id);
    tier["losers_of"] = losers;
    if (t.group_place) tier["group_place"] = *t.group_place;
    tiers.push_back(std::move(tier));
  }
  cls["tiers"] = tiers;
  doc["classification"] = cls;
  return doc.dump(indent);
}

FormatPlan plan_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("plan JSON: ") + e.what());
  }
  try {
    FormatPlan plan;
    plan.name = doc.at("name").get<std::string>();
    plan.slot_count = doc.at("slot_count").get<std::size_t>();
    JsonIndex index;
    for (const auto& g : doc.at("groups")) {
      Group group;
      group.label = g.at("label").get<std::string>();
      group.slots = g.at("slots").get<std::vector<std::size_t>>();
      index.groups[group.label] = plan.groups.size();
      plan.groups.push_back(std::move(group));
    }
    // Pool sources may only name fixtures that exist by the time they are
    // read, so the pool is parsed after the fixture list.
    for (const auto& f : doc.at("fixtures")) {
      Fixture fx;
      fx.id = f.at("id").get<std::string>();
      fx.round_tag = f.at("round_tag").get<std::string>();
      fx.bracket = bracket_from_string(f.at("bracket").get<std::string>());
      fx.stakes = stakes_from_string(f.at("stakes").get<std::string>());
      fx.mode = mode_from_string(f.at("mode").get<std::string>());
      fx.home = source_from_json(f.at("home"), index);
      fx.away = source_from_json(f.at("away"), index);
      if (f.contains("group")) {
        const auto label = f.at("group").get<std::string>();
        const auto it = index.groups.find(label);
        if (it == index.groups.end()) throw std::invalid_argument("plan JSON: unknown group");
        fx.group = it->second;
        plan.groups[it->second].fixtures.push_back(plan.fixtures.size());
      }
      index.fixtures[fx.id] = plan.fixtures.size();
      plan.fixtures.push_back(std::move(fx));
    }
    if (doc.contains("returnee_pool")) {
      ReturneePool pool;
      pool.promoted = doc["returnee_pool"].at("promoted").get<int>();
      for (const auto& m : doc["returnee_pool"].at("members")) {
        pool.members.push_back(source_from_json(m, index));
      }
      plan.returnee_pool = std::move(pool);
    }
    const auto& cls = doc.at("classification");
    auto lookup = [&](const json& id) {
      const auto it = index.fixtures.find(id.get<std::string>());
      if (it == index.fixtures.end()) throw std::invalid_argument("plan JSON: unknown fixture");
      return it->second;
    };
    plan.classification.name = cls.at("rule").get<std::string>();
    plan.classification.final_fixture = lookup(cls.at("final"));
    if (cls.contains("third_place")) {
      plan.classification.third_place_fixture = lookup(cls.at("third_place"));
    }
    for (const auto& t : cls.at("tiers")) {
      ClassificationTier tier;
      tier.label = t.at("label").get<std::string>();
      for (const auto& id : t.at("losers_of")) tier.losers_of.push_back(lookup(id));
      if (t.contains("group_place")) tier.group_place = t.at("group_place").get<int>();
      plan.classification.tiers.push_back(std::move(tier));
    }
    validate_plan(plan);
    return plan;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("plan JSON: ") + e.what());
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const std::invalid_argument*>(&e) != nullptr) throw;
    throw std::invalid_argument(e.what());
  }
}

PlanBuilder::PlanBuilder(std::string name, std::size_t slot_count) {
  plan_.name = std::move(name);
  plan_.slot_count = slot_count;
}

FixtureIndex PlanBuilder::add(std::string round_tag, Bracket bracket, Stakes stakes,
                              FixtureSource home, FixtureSource away, DecisionMode mode) {
  Fixture fx;
  fx.round_tag = std::move(round_tag);
  fx.bracket = bracket;
  fx.stakes = stakes;
  fx.home = home;
  fx.away = away;
  fx.mode = mode;
  plan_.fixtures.push_back(std::move(fx));
  return plan_.fixtures.size() - 1;
}

GroupIndex PlanBuilder::add_group(std::string label, std::vector<std::size_t> slots) {
  plan_.groups.push_back(Group{std::move(label), std::move(slots), {}});
  return plan_.groups.size() - 1;
}

FixtureIndex PlanBuilder::add_group_fixture(GroupIndex group, std::string round_tag,
                                            std::size_t home_slot, std::size_t away_slot) {
  const FixtureIndex f = add(std::move(round_tag), Bracket::group, Stakes::group,
                             source::DrawSlot{home_slot}, source::DrawSlot{away_slot},
                             DecisionMode::draw_allowed);
  plan_.fixtures[f].group = group;
  plan_.groups.at(group).fixtures.push_back(f);
  return f;
}

void PlanBuilder::set_returnee_pool(ReturneePool pool) { plan_.returnee_pool = std::move(pool); }

FormatPlan PlanBuilder::build() && {
  const int width = plan_.fixtures.size() >= 100 ? 3 : 2;
  for (std::size_t i = 0; i < plan_.fixtures.size(); ++i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "M%0*zu", width, i + 1);
    plan_.fixtures[i].id = buf;
  }
  validate_plan(plan_);
  return std::move(plan_);
}

}  // namespace cupsim
