#include "cpm/update_models.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "cpm/error.hpp"
#include "cpm/semantics.hpp"

namespace cpm {

namespace {

template <class Items>
std::optional<std::size_t> find_id(const Items& items, std::string_view id) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].id == id) return i;
  }
  return std::nullopt;
}

template <class Items>
void check_ids(const Items& items, const char* what) {
  if (items.empty()) fail(Errc::invalid_argument, std::string("no ") + what + "s given");
  std::set<std::string_view> seen;
  for (const auto& item : items) {
    if (item.id.empty() || item.id.find('|') != std::string::npos) {
      fail(Errc::invalid_argument, std::string("invalid ") + what + " id '" + item.id + "'");
    }
    if (!seen.insert(item.id).second) {
      fail(Errc::invalid_argument, std::string("duplicate ") + what + " id '" + item.id + "'");
    }
  }
}

}  // namespace

// ---------------------------------------------------------------- ActionModel

ActionModel::ActionModel(Roster agents, std::vector<Event> events, std::vector<Relation> relations)
    : agents_(std::move(agents)), events_(std::move(events)), relations_(std::move(relations)) {
  check_ids(events_, "event");
  if (relations_.size() != agents_.size()) {
    fail(Errc::invalid_argument, "one event relation per agent is required");
  }
  for (const auto& rel : relations_) {
    for (auto [x, y] : rel) {
      if (x >= events_.size() || y >= events_.size()) {
        fail(Errc::invalid_argument, "event relation refers to an unknown event");
      }
    }
  }
}

ActionModel ActionModel::from_pairs(
    Roster agents, std::vector<Event> events,
    const std::map<Agent, std::vector<std::pair<std::string, std::string>>>& relations) {
  std::vector<Relation> rels(agents.size());
  for (const auto& [agent, pairs] : relations) {
    auto a = agents.index_of(agent);
    for (const auto& [x, y] : pairs) {
      auto ex = find_id(events, x);
      auto ey = find_id(events, y);
      if (!ex || !ey) {
        fail(Errc::invalid_argument, "relation of '" + agent + "' mentions unknown event '" +
                                         (ex ? y : x) + "'");
      }
      rels[a].emplace(*ex, *ey);
    }
  }
  return ActionModel(std::move(agents), std::move(events), std::move(rels));
}

std::optional<std::size_t> ActionModel::find(std::string_view id) const {
  return find_id(events_, id);
}

bool ActionModel::is_equivalence(std::size_t agent) const {
  const auto& rel = relations_.at(agent);
  const std::size_t n = events_.size();
  for (std::size_t x = 0; x < n; ++x) {
    if (!rel.contains({x, x})) return false;
  }
  for (auto [x, y] : rel) {
    if (!rel.contains({y, x})) return false;
    for (std::size_t z = 0; z < n; ++z) {
      if (rel.contains({y, z}) && !rel.contains({x, z})) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- CommPatternModel

CommPatternModel::CommPatternModel(Roster agents, std::vector<Pattern> patterns,
                                   std::vector<Partition> relations)
    : agents_(std::move(agents)), patterns_(std::move(patterns)), relations_(std::move(relations)) {
  check_ids(patterns_, "pattern");
  if (relations_.size() != agents_.size()) {
    fail(Errc::invalid_argument, "one pattern relation per agent is required");
  }
  for (const auto& rel : relations_) {
    if (rel.size() != patterns_.size()) {
      fail(Errc::invalid_argument, "pattern relation is not over exactly the pattern set");
    }
  }
  for (auto& cp : patterns_) {
    if (cp.inneigh.size() != agents_.size()) {
      fail(Errc::invalid_argument, "in-neighborhood map of '" + cp.id + "' is not total");
    }
    for (std::size_t a = 0; a < agents_.size(); ++a) {
      auto& in = cp.inneigh[a];
      std::sort(in.begin(), in.end());
      in.erase(std::unique(in.begin(), in.end()), in.end());
      for (auto s : in) {
        if (s >= agents_.size()) {
          fail(Errc::invalid_argument, "in-neighborhood of '" + cp.id + "' names an unknown agent");
        }
        if (s == a) {
          fail(Errc::invalid_argument, "agent '" + agents_[a] + "' hears itself under '" +
                                           cp.id + "'");
        }
      }
    }
  }
}

std::optional<std::size_t> CommPatternModel::find(std::string_view id) const {
  return find_id(patterns_, id);
}

// ---------------------------------------------------------------- products

namespace {

struct Survivor {
  WorldIndex world;
  std::size_t step;
};

template <class Steps>
std::vector<Survivor> surviving_pairs(const EpistemicModel& model, const Steps& steps) {
  std::vector<Survivor> out;
  for (std::size_t s = 0; s < steps.size(); ++s) {
    auto enabled = truth_set(model, steps[s].pre);
    for (WorldIndex w = 0; w < model.size(); ++w) {
      if (enabled[w]) out.push_back({w, s});
    }
  }
  if (out.empty()) fail(Errc::empty_product, "no world satisfies any precondition");
  // Order by world then step so index order is deterministic before the
  // model constructor sorts by id.
  std::sort(out.begin(), out.end(), [](const Survivor& x, const Survivor& y) {
    return std::tie(x.world, x.step) < std::tie(y.world, y.step);
  });
  return out;
}

template <class Steps>
std::vector<World> product_worlds(const EpistemicModel& model, const Steps& steps,
                                  const std::vector<Survivor>& pairs) {
  std::vector<World> worlds;
  worlds.reserve(pairs.size());
  for (const auto& p : pairs) {
    const auto& w = model.world(p.world);
    worlds.push_back({w.id.extended(steps[p.step].id), w.label});
  }
  return worlds;
}

}  // namespace

EpistemicModel product_restricted(const EpistemicModel& model, const ActionModel& action) {
  if (action.agents() != model.agents()) {
    fail(Errc::invalid_argument, "action model roster differs from the model's");
  }
  auto pairs = surviving_pairs(model, action.events());
  std::vector<Partition> relations;
  relations.reserve(model.agents().size());

  for (std::size_t a = 0; a < model.agents().size(); ++a) {
    const auto& base = model.relation(a);
    // Pairs can only be related when their worlds share an a-class, so the
    // relation is checked one block at a time.
    std::vector<std::vector<std::size_t>> blocks(base.class_count());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      blocks[base.class_of(pairs[i].world)].push_back(i);
    }
    std::vector<std::size_t> label(pairs.size());
    std::size_t next_label = 0;
    for (const auto& block : blocks) {
      std::map<std::vector<std::size_t>, std::size_t> class_ids;
      for (auto i : block) {
        std::vector<std::size_t> neighbours;
        for (auto j : block) {
          if (action.related(a, pairs[i].step, pairs[j].step)) neighbours.push_back(j);
        }
        if (!std::binary_search(neighbours.begin(), neighbours.end(), i)) {
          fail(Errc::non_s5_result, "relation of agent '" + model.agents()[a] +
                                        "' is not reflexive on the product");
        }
        auto [it, fresh] = class_ids.try_emplace(std::move(neighbours), next_label);
        if (fresh) ++next_label;
        label[i] = it->second;
      }
      // An equivalence relation holds iff every element's neighbourhood is
      // exactly its own class.
      for (const auto& [members, id] : class_ids) {
        for (auto j : members) {
          if (label[j] != id) {
            fail(Errc::non_s5_result, "relation of agent '" + model.agents()[a] +
                                          "' is not an equivalence on the product");
          }
        }
      }
    }
    relations.push_back(Partition::from_raw(std::move(label)));
  }
  return EpistemicModel(model.agents(), model.inputs(),
                        product_worlds(model, action.events(), pairs), std::move(relations));
}

EpistemicModel product_cpm(const EpistemicModel& model, const CommPatternModel& patterns,
                           ProductOptions options) {
  if (patterns.agents() != model.agents()) {
    fail(Errc::invalid_argument, "pattern model roster differs from the model's");
  }
  auto pairs = surviving_pairs(model, patterns.patterns());
  std::vector<Partition> relations;
  relations.reserve(model.agents().size());

  for (std::size_t a = 0; a < model.agents().size(); ++a) {
    // (w,cp) ~ (w',cp') iff every component of these keys agrees.
    std::vector<std::vector<std::size_t>> keys(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      auto& key = keys[i];
      key.push_back(model.relation(a).class_of(pairs[i].world));
      key.push_back(patterns.relation(a).class_of(pairs[i].step));
      if (!options.ignore_inneigh) {
        const auto& in = patterns.inneigh(pairs[i].step, a);
        key.push_back(in.size());
        key.insert(key.end(), in.begin(), in.end());
        for (auto sender : in) key.push_back(model.relation(sender).class_of(pairs[i].world));
      }
    }
    relations.push_back(Partition::from_keys(keys));
  }
  return EpistemicModel(model.agents(), model.inputs(),
                        product_worlds(model, patterns.patterns(), pairs), std::move(relations));
}

CommPatternModel from_action_model(const ActionModel& action) {
  const auto& roster = action.agents();
  std::vector<Partition> relations;
  for (std::size_t a = 0; a < roster.size(); ++a) {
    if (!action.is_equivalence(a)) {
      fail(Errc::invalid_argument,
           "relation of agent '" + roster[a] + "' is not an equivalence relation");
    }
    std::vector<std::vector<std::size_t>> keys;
    for (std::size_t e = 0; e < action.size(); ++e) {
      std::vector<std::size_t> row;
      for (std::size_t f = 0; f < action.size(); ++f) {
        if (action.related(a, e, f)) row.push_back(f);
      }
      keys.push_back(std::move(row));
    }
    relations.push_back(Partition::from_keys(keys));
  }
  std::vector<Pattern> patterns;
  for (const auto& e : action.events()) {
    patterns.push_back({e.id, e.pre, std::vector<std::vector<std::size_t>>(roster.size())});
  }
  return CommPatternModel(roster, std::move(patterns), std::move(relations));
}

ActionModel to_action_model(const CommPatternModel& patterns) {
  const auto& roster = patterns.agents();
  std::vector<ActionModel::Relation> relations(roster.size());
  for (std::size_t a = 0; a < roster.size(); ++a) {
    for (const auto& cls : patterns.relation(a).classes()) {
      for (auto x : cls) {
        for (auto y : cls) relations[a].emplace(x, y);
      }
    }
  }
  std::vector<Event> events;
  for (const auto& cp : patterns.patterns()) events.push_back({cp.id, cp.pre});
  return ActionModel(roster, std::move(events), std::move(relations));
}

}  // namespace cpm
