#include "cpm/iis2_action_model.hpp"

#include <deque>

#include "cpm/adversary.hpp"
#include "cpm/error.hpp"
#include "cpm/views.hpp"

namespace cpm {

Bipartition bipartition_worlds(const EpistemicModel& model) {
  const auto n = model.size();
  constexpr int kNone = -1;
  std::vector<int> side(n, kNone);
  for (WorldIndex start = 0; start < n; ++start) {
    if (side[start] != kNone) continue;
    side[start] = 0;
    std::deque<WorldIndex> queue{start};
    while (!queue.empty()) {
      auto w = queue.front();
      queue.pop_front();
      for (std::size_t a = 0; a < model.agents().size(); ++a) {
        const auto& rel = model.relation(a);
        for (auto v : rel.members(rel.class_of(w))) {
          if (v == w) continue;
          if (side[v] == kNone) {
            side[v] = 1 - side[w];
            queue.push_back(v);
          } else if (side[v] == side[w]) {
            fail(Errc::not_bipartite, "worlds '" + model.world(w).id.str() + "' and '" +
                                          model.world(v).id.str() + "' close an odd cycle");
          }
        }
      }
    }
  }
  Bipartition out;
  for (WorldIndex w = 0; w < n; ++w) (side[w] == 0 ? out.first : out.second).push_back(w);
  return out;
}

std::string strip_part_suffix(const std::string& event) {
  if (event.size() > 2 && event[event.size() - 2] == '_' &&
      (event.back() == '1' || event.back() == '2')) {
    return event.substr(0, event.size() - 2);
  }
  fail(Errc::invalid_argument, "'" + event + "' is not an event of the two-agent IIS family");
}

WorldId strip_part_suffixes(const WorldId& world) {
  std::vector<std::string> history;
  for (const auto& step : world.history()) history.push_back(strip_part_suffix(step));
  return WorldId(world.input(), std::move(history));
}

ActionModel iis2_binary_action_model(const EpistemicModel& model) {
  const auto& roster = model.agents();
  if (roster.size() != 2) fail(Errc::invalid_argument, "the six-event family needs two agents");
  const auto rounds = model.world(0).id.rounds();
  for (const auto& w : model.worlds()) {
    if (w.id.rounds() != rounds) {
      fail(Errc::invalid_argument, "worlds of the model belong to different rounds");
    }
  }
  const auto parts = bipartition_worlds(model);
  const auto adv = iis_adversary(roster);
  const ViewCatalog catalog(adv, model.inputs(), rounds);

  auto part_formula = [&](const std::vector<WorldIndex>& part) {
    std::vector<Formula> disjuncts;
    for (auto w : part) {
      auto e = world_to_execution(strip_part_suffixes(model.world(w).id), roster, &adv);
      disjuncts.push_back(execution_formula(e, catalog));
    }
    return Formula::any_of(disjuncts);
  };
  const Formula phi[2] = {part_formula(parts.first), part_formula(parts.second)};

  const auto& x = roster[0];
  const auto& y = roster[1];
  const std::string kinds[3] = {
      OrderedPartition(roster, {{x}, {y}}).id(),
      OrderedPartition(roster, {{x, y}}).id(),
      OrderedPartition(roster, {{y}, {x}}).id(),
  };
  std::vector<Event> events;
  for (int j = 0; j < 2; ++j) {
    for (const auto& k : kinds) events.push_back({k + "_" + std::to_string(j + 1), phi[j]});
  }
  // Index of kind k in part j.
  auto ev = [](int k, int j) { return static_cast<std::size_t>(3 * j + k); };
  std::vector<ActionModel::Relation> rel(2);
  auto link = [&](std::size_t agent, std::size_t e1, std::size_t e2) {
    rel[agent].emplace(e1, e2);
    rel[agent].emplace(e2, e1);
  };
  for (std::size_t e = 0; e < events.size(); ++e) {
    rel[0].emplace(e, e);
    rel[1].emplace(e, e);
  }
  link(0, ev(0, 0), ev(0, 1));
  link(1, ev(2, 0), ev(2, 1));
  for (int j = 0; j < 2; ++j) {
    link(0, ev(1, j), ev(2, j));
    link(1, ev(0, j), ev(1, j));
  }
  return ActionModel(roster, std::move(events), std::move(rel));
}

}  // namespace cpm
