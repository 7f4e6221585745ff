#include "cpm/coordinated_attack.hpp"

#include "cpm/error.hpp"

namespace cpm {

namespace {

Roster generals() { return Roster({"a", "b"}); }

}  // namespace

CommPatternModel coordinated_attack_patterns() {
  std::vector<Pattern> patterns{
      {"h", Formula::top(), {{}, {0}}},
      {"l", Formula::top(), {{}, {}}},
  };
  std::vector<Partition> relations{Partition::total(2), Partition::identity(2)};
  return CommPatternModel(generals(), std::move(patterns), std::move(relations));
}

CoordinatedAttack build_coordinated_attack_fixture(const std::vector<Value>& preferences) {
  if (preferences.size() < 2) {
    fail(Errc::invalid_argument, "the coordinated attack needs at least two preferences");
  }
  const auto roster = generals();
  auto inputs = InputSpace::per_agent({preferences, {kNoPreference}});
  auto model = build_initial_model(roster, inputs);

  std::vector<Event> events;
  for (const auto& p : preferences) events.push_back({"recv_" + p, Formula::prop("a", p)});
  events.push_back({"lost", Formula::top()});
  std::vector<ActionModel::Relation> relations(2);
  for (std::size_t x = 0; x < events.size(); ++x) {
    relations[1].emplace(x, x);
    for (std::size_t y = 0; y < events.size(); ++y) relations[0].emplace(x, y);
  }
  ActionModel action(roster, std::move(events), std::move(relations));

  std::vector<CommunicationGraph> graphs{
      CommunicationGraph(roster, {{0, 1}}, "h"),
      CommunicationGraph(roster, {}, "l"),
  };
  auto adversary = Adversary::oblivious(roster, std::move(graphs));
  return {std::move(model), std::move(action), coordinated_attack_patterns(),
          std::move(adversary)};
}

}  // namespace cpm
