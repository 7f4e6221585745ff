#include "cpm/json_io.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "cpm/error.hpp"

namespace cpm {

namespace {

void warn(Warnings* warnings, std::string text) {
  if (warnings) warnings->push_back(std::move(text));
}

// nlohmann reports type mismatches as its own exceptions; surface them as
// validation failures that name the document kind.
template <class F>
auto guarded(const char* what, F&& body) {
  try {
    return body();
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::invalid_argument, std::string("malformed ") + what + " JSON: " + e.what());
  }
}

const Json& field(const Json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) {
    fail(Errc::invalid_argument, std::string(what) + " JSON lacks \"" + key + "\"");
  }
  return j.at(key);
}

Roster roster_from(const Json& j, const char* what) {
  return Roster(field(j, "agents", what).get<std::vector<Agent>>());
}

std::string formula_text(const Formula& f) {
  auto text = print_formula(f);
  try {
    parse_formula(text);
  } catch (const ParseError&) {
    fail(Errc::invalid_argument, "precondition '" + text + "' has no text form");
  }
  return text;
}

Json partition_to_json(const Partition& p, const std::vector<std::string>& names) {
  Json classes = Json::array();
  for (const auto& cls : p.classes()) {
    Json c = Json::array();
    for (auto i : cls) c.push_back(names[i]);
    classes.push_back(std::move(c));
  }
  return classes;
}

template <class Lookup>
std::size_t resolve(const Lookup& find, const std::string& id, const char* what) {
  auto i = find(id);
  if (!i) fail(Errc::invalid_argument, std::string("unknown ") + what + " '" + id + "'");
  return *i;
}

}  // namespace

// ---------------------------------------------------------------- models

Json model_to_json(const EpistemicModel& model) {
  Json j;
  j["agents"] = model.agents().agents();
  const auto& inputs = model.inputs();
  if (inputs.is_uniform()) {
    j["inputs"] = inputs.domain(0);
  } else {
    Json per = Json::object();
    for (std::size_t i = 0; i < model.agents().size(); ++i) {
      per[model.agents()[i]] = inputs.domain(i);
    }
    j["inputs"] = std::move(per);
  }
  std::vector<std::string> names;
  Json worlds = Json::array();
  for (const auto& w : model.worlds()) {
    names.push_back(w.id.str());
    Json label = Json::array();
    for (const auto& p : w.label) label.push_back(p.name());
    worlds.push_back(Json{{"id", w.id.str()}, {"label", std::move(label)}});
  }
  j["worlds"] = std::move(worlds);
  Json relations = Json::object();
  for (std::size_t a = 0; a < model.agents().size(); ++a) {
    relations[model.agents()[a]] = partition_to_json(model.relation(a), names);
  }
  j["relations"] = std::move(relations);
  return j;
}

EpistemicModel model_from_json(const Json& j, Warnings* warnings) {
  return guarded("model", [&] {
    auto roster = roster_from(j, "model");
    const auto& in = field(j, "inputs", "model");
    InputSpace inputs;
    if (in.is_array()) {
      inputs = InputSpace::uniform(roster.size(), in.get<std::vector<Value>>());
    } else {
      std::vector<std::vector<Value>> domains;
      for (const auto& a : roster) domains.push_back(field(in, a.c_str(), "inputs").get<std::vector<Value>>());
      if (in.size() != roster.size()) fail(Errc::invalid_argument, "inputs name an unknown agent");
      inputs = InputSpace::per_agent(std::move(domains));
    }

    std::vector<World> worlds;
    std::map<std::string, std::size_t, std::less<>> index;
    for (const auto& w : field(j, "worlds", "model")) {
      World world{WorldId::parse(field(w, "id", "world").get<std::string>()), {}};
      for (const auto& name : field(w, "label", "world")) {
        auto p = parse_proposition(name.get<std::string>());
        if (!p) fail(Errc::invalid_argument, "bad proposition '" + name.get<std::string>() + "'");
        world.label.push_back(std::move(*p));
      }
      if (!index.emplace(world.id.str(), worlds.size()).second) {
        fail(Errc::invalid_argument, "duplicate world id '" + world.id.str() + "'");
      }
      worlds.push_back(std::move(world));
    }

    const auto& rels = field(j, "relations", "model");
    if (!rels.is_object()) fail(Errc::invalid_argument, "model relations must be an object");
    for (const auto& [agent, _] : rels.items()) roster.index_of(agent);
    std::vector<Partition> relations;
    for (const auto& a : roster) {
      // Union-find over the listed classes: overlaps merge, gaps stay apart.
      std::vector<std::size_t> parent(worlds.size());
      std::iota(parent.begin(), parent.end(), 0);
      auto root = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      std::size_t listed_pairs = 0;
      std::set<std::pair<std::size_t, std::size_t>> listed;
      if (rels.contains(a)) {
        for (const auto& cls : rels.at(a)) {
          std::vector<std::size_t> members;
          for (const auto& id : cls) {
            auto it = index.find(id.get<std::string>());
            if (it == index.end()) {
              fail(Errc::invalid_argument, "relation of '" + a + "' names unknown world '" +
                                               id.get<std::string>() + "'");
            }
            members.push_back(it->second);
          }
          for (auto x : members) {
            for (auto y : members) {
              if (x < y) listed.emplace(x, y);
            }
          }
          for (std::size_t k = 1; k < members.size(); ++k) {
            parent[root(members[k])] = root(members[0]);
          }
        }
      }
      listed_pairs = listed.size();
      std::vector<std::size_t> labels(worlds.size());
      for (std::size_t w = 0; w < worlds.size(); ++w) labels[w] = root(w);
      auto partition = Partition::from_raw(std::move(labels));
      std::size_t closed_pairs = 0;
      for (const auto& cls : partition.classes()) closed_pairs += cls.size() * (cls.size() - 1) / 2;
      if (closed_pairs != listed_pairs) {
        warn(warnings, "relation of '" + a + "' was closed to an equivalence (" +
                           std::to_string(closed_pairs - listed_pairs) + " pairs added)");
      }
      relations.push_back(std::move(partition));
    }
    return EpistemicModel(std::move(roster), std::move(inputs), std::move(worlds),
                          std::move(relations));
  });
}

// ---------------------------------------------------------------- update models

Json action_model_to_json(const ActionModel& action) {
  Json j;
  j["agents"] = action.agents().agents();
  Json events = Json::array();
  for (const auto& e : action.events()) events.push_back(Json{{"id", e.id}, {"pre", formula_text(e.pre)}});
  j["events"] = std::move(events);
  Json relations = Json::object();
  for (std::size_t a = 0; a < action.agents().size(); ++a) {
    Json pairs = Json::array();
    for (auto [x, y] : action.relation(a)) {
      pairs.push_back(Json::array({action.event(x).id, action.event(y).id}));
    }
    relations[action.agents()[a]] = std::move(pairs);
  }
  j["relations"] = std::move(relations);
  return j;
}

namespace {

std::vector<Event> events_from(const Json& j, const char* what) {
  std::vector<Event> events;
  for (const auto& e : field(j, "events", what)) {
    auto pre = e.contains("pre") ? parse_formula(e.at("pre").get<std::string>()) : Formula::top();
    events.push_back({field(e, "id", "event").get<std::string>(), std::move(pre)});
  }
  return events;
}

}  // namespace

ActionModel action_model_from_json(const Json& j) {
  return guarded("action model", [&] {
    auto roster = roster_from(j, "action model");
    auto events = events_from(j, "action model");
    std::map<Agent, std::vector<std::pair<std::string, std::string>>> pairs;
    const auto& rels = field(j, "relations", "action model");
    for (const auto& [agent, list] : rels.items()) {
      roster.index_of(agent);
      for (const auto& p : list) {
        if (!p.is_array() || p.size() != 2) {
          fail(Errc::invalid_argument, "event relation entries must be [e1, e2] pairs");
        }
        pairs[agent].emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
      }
    }
    return ActionModel::from_pairs(std::move(roster), std::move(events), pairs);
  });
}

Json cpm_to_json(const CommPatternModel& patterns) {
  Json j;
  const auto& roster = patterns.agents();
  j["agents"] = roster.agents();
  std::vector<std::string> names;
  Json events = Json::array();
  for (const auto& cp : patterns.patterns()) {
    names.push_back(cp.id);
    events.push_back(Json{{"id", cp.id}, {"pre", formula_text(cp.pre)}});
  }
  j["events"] = std::move(events);
  Json relations = Json::object();
  for (std::size_t a = 0; a < roster.size(); ++a) {
    relations[roster[a]] = partition_to_json(patterns.relation(a), names);
  }
  j["relations"] = std::move(relations);
  Json inneigh = Json::object();
  for (const auto& cp : patterns.patterns()) {
    Json per = Json::object();
    for (std::size_t a = 0; a < roster.size(); ++a) {
      Json senders = Json::array();
      for (auto s : cp.inneigh[a]) senders.push_back(roster[s]);
      per[roster[a]] = std::move(senders);
    }
    inneigh[cp.id] = std::move(per);
  }
  j["inneigh"] = std::move(inneigh);
  return j;
}

CommPatternModel cpm_from_json(const Json& j) {
  return guarded("pattern model", [&] {
    auto roster = roster_from(j, "pattern model");
    auto events = events_from(j, "pattern model");
    auto find = [&](const std::string& id) -> std::optional<std::size_t> {
      for (std::size_t i = 0; i < events.size(); ++i) {
        if (events[i].id == id) return i;
      }
      return std::nullopt;
    };

    const auto& rels = field(j, "relations", "pattern model");
    for (const auto& [agent, _] : rels.items()) roster.index_of(agent);
    std::vector<Partition> relations;
    for (const auto& a : roster) {
      if (!rels.contains(a)) fail(Errc::invalid_argument, "no relation given for '" + a + "'");
      std::vector<std::vector<std::size_t>> classes;
      for (const auto& cls : rels.at(a)) {
        std::vector<std::size_t> members;
        for (const auto& id : cls) members.push_back(resolve(find, id.get<std::string>(), "pattern"));
        classes.push_back(std::move(members));
      }
      try {
        relations.push_back(Partition::from_classes(events.size(), classes));
      } catch (const Error& e) {
        fail(Errc::invalid_argument,
             "relation of '" + a + "' is not an equivalence: " + std::string(e.what()));
      }
    }

    std::vector<Pattern> patterns;
    for (auto& e : events) {
      patterns.push_back({e.id, e.pre, std::vector<std::vector<std::size_t>>(roster.size())});
    }
    if (j.contains("inneigh")) {
      for (const auto& [id, per] : j.at("inneigh").items()) {
        auto cp = resolve(find, id, "pattern");
        for (const auto& [agent, senders] : per.items()) {
          auto a = roster.index_of(agent);
          for (const auto& s : senders) {
            patterns[cp].inneigh[a].push_back(roster.index_of(s.get<std::string>()));
          }
        }
      }
    }
    return CommPatternModel(std::move(roster), std::move(patterns), std::move(relations));
  });
}

// ---------------------------------------------------------------- adversaries

Json graph_to_json(const CommunicationGraph& graph) {
  Json edges = Json::array();
  for (auto [from, to] : graph.edges()) {
    edges.push_back(Json::array({graph.roster()[from], graph.roster()[to]}));
  }
  return Json{{"id", graph.id()}, {"edges", std::move(edges)}};
}

Json adversary_to_json(const Adversary& adv) {
  Json j;
  j["kind"] = adv.is_oblivious() ? "oblivious" : "general";
  j["agents"] = adv.agents().agents();
  if (!adv.is_oblivious()) {
    j["horizon"] = *adv.horizon();
    Json sequences = Json::array();
    for (const auto& seq : adv.sequences()) {
      Json s = Json::array();
      for (auto g : seq) s.push_back(adv.graphs()[g].id());
      sequences.push_back(std::move(s));
    }
    j["sequences"] = std::move(sequences);
  }
  Json graphs = Json::array();
  for (const auto& g : adv.graphs()) graphs.push_back(graph_to_json(g));
  j["graphs"] = std::move(graphs);
  return j;
}

Adversary adversary_from_json(const Json& j, Warnings* warnings) {
  return guarded("adversary", [&] {
    auto roster = roster_from(j, "adversary");
    std::vector<CommunicationGraph> graphs;
    for (const auto& g : field(j, "graphs", "adversary")) {
      std::set<CommunicationGraph::Edge> edges;
      for (const auto& e : field(g, "edges", "graph")) {
        if (!e.is_array() || e.size() != 2) {
          fail(Errc::malformed_adversary, "graph edges must be [sender, receiver] pairs");
        }
        auto from = roster.index_of(e[0].get<std::string>());
        auto to = roster.index_of(e[1].get<std::string>());
        if (from == to) {
          warn(warnings, "dropped self-loop on '" + roster[from] + "'");
          continue;
        }
        edges.emplace(from, to);
      }
      auto id = g.contains("id") ? g.at("id").get<std::string>() : std::string{};
      graphs.emplace_back(roster, std::move(edges), std::move(id));
    }
    auto kind = field(j, "kind", "adversary").get<std::string>();
    if (kind == "oblivious") return Adversary::oblivious(std::move(roster), std::move(graphs));
    if (kind != "general") fail(Errc::malformed_adversary, "unknown adversary kind '" + kind + "'");
    auto horizon = field(j, "horizon", "adversary").get<std::size_t>();
    auto sequences =
        field(j, "sequences", "adversary").get<std::vector<std::vector<std::string>>>();
    return Adversary::general(std::move(roster), std::move(graphs), horizon, std::move(sequences));
  });
}

// ---------------------------------------------------------------- reports

Json report_to_json(const ReflectionReport& report) {
  Json j;
  j["pass"] = report.pass;
  j["rounds"] = report.rounds;
  j["worlds"] = report.worlds;
  j["executions"] = report.executions;
  j["configs"] = report.configs;
  j["h_bijective"] = report.h_bijective;
  j["g_injective"] = report.g_injective;
  j["views_consistent"] = report.views_consistent;
  j["mismatched_pairs"] = report.mismatched_pairs;
  Json cex = Json::array();
  for (const auto& c : report.counterexamples) {
    cex.push_back(Json{{"agent", c.agent},
                       {"kind", std::string(to_string(c.kind))},
                       {"worlds", Json::array({c.world1, c.world2})}});
  }
  j["counterexamples"] = std::move(cex);
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(Errc::invalid_argument, std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace cpm
