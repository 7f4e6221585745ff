#pragma once

// Hand-built reference models and small independent oracles shared by the
// unit tests and the acceptance runner. Nothing here calls the product or
// adversary code it is used to check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cpm/adversary.hpp"
#include "cpm/epistemic_model.hpp"
#include "cpm/formula.hpp"
#include "cpm/update_models.hpp"

namespace cpm::testing {

inline Roster ab() { return Roster({"a", "b"}); }
inline Roster abc() { return Roster({"a", "b", "c"}); }
inline InputSpace binary(std::size_t n) { return InputSpace::uniform(n, {"0", "1"}); }

/// Unordered related pairs of distinct worlds, by world id.
using PairSet = std::set<std::pair<std::string, std::string>>;

inline PairSet related_ids(const EpistemicModel& m, std::size_t agent) {
  PairSet out;
  for (const auto& cls : m.relation(agent).classes()) {
    for (auto x : cls) {
      for (auto y : cls) {
        if (x < y) out.emplace(m.world(x).id.str(), m.world(y).id.str());
      }
    }
  }
  return out;
}

inline std::vector<Proposition> label_of(const Roster& roster, const std::vector<Value>& input) {
  std::vector<Proposition> label;
  for (std::size_t i = 0; i < roster.size(); ++i) label.push_back({roster[i], input[i]});
  return label;
}

/// Model from explicit world ids and per-agent edge lists (closed by hand
/// through union-find so the edge lists stay readable).
inline EpistemicModel model_from_edges(
    const Roster& roster, const InputSpace& inputs, const std::vector<std::string>& ids,
    const std::map<std::string, std::vector<std::pair<std::string, std::string>>>& edges) {
  std::vector<World> worlds;
  std::map<std::string, std::size_t> index;
  for (const auto& id : ids) {
    auto wid = WorldId::parse(id);
    index[id] = worlds.size();
    worlds.push_back({wid, label_of(roster, wid.input())});
  }
  std::vector<Partition> relations;
  for (const auto& a : roster) {
    std::vector<std::size_t> parent(ids.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    auto root = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x];
      return x;
    };
    auto it = edges.find(a);
    if (it != edges.end()) {
      for (const auto& [x, y] : it->second) parent[root(index.at(x))] = root(index.at(y));
    }
    std::vector<std::size_t> labels(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) labels[i] = root(i);
    relations.push_back(Partition::from_raw(labels));
  }
  return EpistemicModel(roster, inputs, std::move(worlds), std::move(relations));
}

/// The 4-cycle of the initial two-agent binary model.
inline EpistemicModel square_m0() {
  return model_from_edges(ab(), binary(2), {"(0,0)", "(0,1)", "(1,0)", "(1,1)"},
                          {{"b", {{"(0,1)", "(1,1)"}, {"(0,0)", "(1,0)"}}},
                           {"a", {{"(0,1)", "(0,0)"}, {"(1,1)", "(1,0)"}}}});
}

/// The twelve-world cycle after one IIS round, transcribed edge by edge.
inline EpistemicModel twelve_cycle() {
  const std::vector<std::string> cycle{
      "(0,0)|{b}{a}", "(0,0)|{a,b}", "(0,0)|{a}{b}", "(0,1)|{a}{b}",
      "(0,1)|{a,b}",  "(0,1)|{b}{a}", "(1,1)|{b}{a}", "(1,1)|{a,b}",
      "(1,1)|{a}{b}", "(1,0)|{a}{b}", "(1,0)|{a,b}",  "(1,0)|{b}{a}",
  };
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> edges;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    edges[i % 2 == 0 ? "a" : "b"].emplace_back(cycle[i], cycle[(i + 1) % cycle.size()]);
  }
  return model_from_edges(ab(), binary(2), cycle, edges);
}

/// The three-pattern model for two-agent IIS, written out by hand. Pattern
/// order follows id order: {a,b} < {a}{b} < {b}{a}.
inline CommPatternModel iis2_patterns() {
  std::vector<Pattern> patterns{
      {"{a,b}", Formula::top(), {{1}, {0}}},
      {"{a}{b}", Formula::top(), {{}, {0}}},
      {"{b}{a}", Formula::top(), {{1}, {}}},
  };
  // a hears b under {a,b} and {b}{a}; b hears a under {a,b} and {a}{b}.
  auto ra = Partition::from_classes(3, {{0, 2}, {1}});
  auto rb = Partition::from_classes(3, {{0, 1}, {2}});
  return CommPatternModel(ab(), std::move(patterns), {ra, rb});
}

/// Two rounds, four schedules, every round-2 pattern guarded by a
/// non-trivial precondition.
inline Adversary general_fixture() {
  std::vector<CommunicationGraph> graphs;
  for (const auto& p : ordered_partitions(ab())) graphs.push_back(graph_from_ordered_partition(ab(), p));
  return Adversary::general(ab(), graphs, 2,
                            {{"{a}{b}", "{b}{a}"},
                             {"{b}{a}", "{a,b}"},
                             {"{a,b}", "{a}{b}"},
                             {"{a,b}", "{a,b}"}});
}

/// Ordered set partitions of n elements (Fubini numbers) by the recurrence
/// a(n) = sum_k C(n,k) a(n-k).
inline std::uint64_t fubini(unsigned n) {
  std::vector<std::uint64_t> a(n + 1, 0);
  a[0] = 1;
  for (unsigned m = 1; m <= n; ++m) {
    std::uint64_t binom = 1;
    for (unsigned k = 1; k <= m; ++k) {
      binom = binom * (m - k + 1) / k;
      a[m] += binom * a[m - k];
    }
  }
  return a[n];
}

/// Product by the textbook definition over all pairs, returning related
/// pairs of rendered ids per agent. `inneigh` switches the extra clauses on.
struct NaiveProduct {
  std::set<std::string> worlds;
  std::vector<PairSet> related;
};

inline NaiveProduct naive_product(const EpistemicModel& m, const std::vector<std::string>& ids,
                                  const std::vector<std::vector<bool>>& enabled,
                                  const std::vector<std::set<std::pair<std::size_t, std::size_t>>>& rel,
                                  const std::vector<std::vector<std::vector<std::size_t>>>* inneigh) {
  NaiveProduct out;
  std::vector<std::pair<WorldIndex, std::size_t>> pairs;
  for (WorldIndex w = 0; w < m.size(); ++w) {
    for (std::size_t e = 0; e < ids.size(); ++e) {
      if (enabled[e][w]) {
        pairs.emplace_back(w, e);
        out.worlds.insert(m.world(w).id.str() + "|" + ids[e]);
      }
    }
  }
  out.related.resize(m.agents().size());
  for (std::size_t a = 0; a < m.agents().size(); ++a) {
    for (auto [w1, e1] : pairs) {
      for (auto [w2, e2] : pairs) {
        std::string x = m.world(w1).id.str() + "|" + ids[e1];
        std::string y = m.world(w2).id.str() + "|" + ids[e2];
        if (!(x < y)) continue;
        bool ok = m.related(a, w1, w2) && rel[a].contains({e1, e2});
        if (ok && inneigh) {
          const auto& n1 = (*inneigh)[e1][a];
          ok = n1 == (*inneigh)[e2][a];
          for (auto s : n1) ok = ok && m.related(s, w1, w2);
        }
        if (ok) out.related[a].emplace(x, y);
      }
    }
  }
  return out;
}

/// Random S5 model over roster {a,b} and inputs {0,1}: `n` worlds with ids
/// `(x,y)|wK` so labels may repeat, and random partitions.
inline EpistemicModel random_model(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> bit(0, 1);
  std::vector<World> worlds;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Value> input{std::to_string(bit(rng)), std::to_string(bit(rng))};
    worlds.push_back({WorldId(input, {"w" + std::to_string(k)}), label_of(ab(), input)});
  }
  std::vector<Partition> relations;
  for (int a = 0; a < 2; ++a) {
    std::uniform_int_distribution<std::size_t> cls(0, n - 1);
    std::vector<std::size_t> labels(n);
    for (auto& l : labels) l = cls(rng);
    relations.push_back(Partition::from_raw(labels));
  }
  return EpistemicModel(ab(), binary(2), std::move(worlds), std::move(relations));
}

/// Random update-free formula over {a,b} x {0,1} with K nesting at most
/// `depth`.
inline Formula random_formula(std::mt19937& rng, int depth, int size = 3) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 6 : 3);
  std::uniform_int_distribution<int> bit(0, 1);
  auto atom = [&] {
    return Formula::prop(bit(rng) ? "a" : "b", bit(rng) ? "1" : "0");
  };
  if (size <= 0) return atom();
  switch (pick(rng)) {
    case 0:
      return atom();
    case 1:
      return Formula::negation(random_formula(rng, depth, size - 1));
    case 2:
      return Formula::conjunction(random_formula(rng, depth, size - 1),
                                  random_formula(rng, depth, size - 1));
    case 3:
      return Formula::disjunction(random_formula(rng, depth, size - 1),
                                  random_formula(rng, depth, size - 1));
    default:
      return Formula::know(bit(rng) ? "a" : "b", random_formula(rng, depth - 1, size - 1));
  }
}

/// Random action model with equivalence relations and a random number of
/// events (1..max_events) whose preconditions have K depth <= 2.
inline ActionModel random_action_model(std::mt19937& rng, std::size_t max_events) {
  std::uniform_int_distribution<std::size_t> count(1, max_events);
  const auto n = count(rng);
  std::vector<Event> events;
  for (std::size_t e = 0; e < n; ++e) events.push_back({"e" + std::to_string(e), random_formula(rng, 2)});
  std::vector<ActionModel::Relation> relations(2);
  for (auto& rel : relations) {
    std::uniform_int_distribution<std::size_t> cls(0, n - 1);
    std::vector<std::size_t> labels(n);
    for (auto& l : labels) l = cls(rng);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (labels[x] == labels[y]) rel.emplace(x, y);
      }
    }
  }
  return ActionModel(ab(), std::move(events), std::move(relations));
}

}  // namespace cpm::testing
