#include "cpm/adversary.hpp"

#include <algorithm>
#include <map>

#include "cpm/error.hpp"
#include "cpm/views.hpp"

namespace cpm {

// ---------------------------------------------------------------- graphs

namespace {

std::string edge_list_id(const Roster& roster, const std::set<CommunicationGraph::Edge>& edges) {
  std::vector<std::string> parts;
  for (auto [from, to] : edges) parts.push_back(roster[from] + ">" + roster[to]);
  if (parts.empty()) return "-";
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ';';
    out += parts[i];
  }
  return out;
}

}  // namespace

CommunicationGraph::CommunicationGraph(Roster roster, std::set<Edge> edges, std::string id) {
  auto data = std::make_shared<Data>();
  data->roster = std::move(roster);
  const auto n = data->roster.size();
  data->in.resize(n);
  for (auto [from, to] : edges) {
    if (from >= n || to >= n) fail(Errc::invalid_argument, "graph edge names an unknown agent");
    if (from == to) continue;
    data->edges.emplace(from, to);
  }
  for (auto [from, to] : data->edges) data->in[to].push_back(from);
  data->id = id.empty() ? edge_list_id(data->roster, data->edges) : std::move(id);
  if (data->id.find('|') != std::string::npos) {
    fail(Errc::invalid_argument, "graph id '" + data->id + "' contains '|'");
  }
  data_ = std::move(data);
}

std::string CommunicationGraph::canonical_id() const { return edge_list_id(roster(), edges()); }

// ---------------------------------------------------------------- ordered partitions

OrderedPartition::OrderedPartition(const Roster& roster, std::vector<std::vector<Agent>> classes)
    : classes_(std::move(classes)) {
  std::set<Agent> seen;
  for (auto& cls : classes_) {
    if (cls.empty()) fail(Errc::invalid_argument, "empty concurrency class");
    std::sort(cls.begin(), cls.end());
    for (const auto& a : cls) {
      if (!roster.contains(a)) fail(Errc::invalid_argument, "unknown agent '" + a + "'");
      if (!seen.insert(a).second) {
        fail(Errc::invalid_argument, "agent '" + a + "' appears in two concurrency classes");
      }
    }
  }
  if (seen.size() != roster.size()) {
    fail(Errc::invalid_argument, "concurrency classes do not cover the roster");
  }
}

std::string OrderedPartition::id() const {
  std::string out;
  for (const auto& cls : classes_) {
    out += '{';
    for (std::size_t i = 0; i < cls.size(); ++i) {
      if (i) out += ',';
      out += cls[i];
    }
    out += '}';
  }
  return out;
}

namespace {

void extend_partitions(const Roster& roster, std::vector<Agent>& rest,
                       std::vector<std::vector<Agent>>& prefix,
                       std::vector<OrderedPartition>& out) {
  if (rest.empty()) {
    out.emplace_back(roster, prefix);
    return;
  }
  // Each non-empty subset of the remaining agents can be the next class.
  const std::size_t m = rest.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
    std::vector<Agent> cls, remaining;
    for (std::size_t i = 0; i < m; ++i) {
      ((mask >> i) & 1 ? cls : remaining).push_back(rest[i]);
    }
    prefix.push_back(std::move(cls));
    extend_partitions(roster, remaining, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<OrderedPartition> ordered_partitions(const Roster& roster) {
  if (roster.size() > 16) fail(Errc::scale_limit, "too many agents to enumerate partitions");
  std::vector<Agent> rest(roster.begin(), roster.end());
  std::vector<std::vector<Agent>> prefix;
  std::vector<OrderedPartition> out;
  extend_partitions(roster, rest, prefix, out);
  std::sort(out.begin(), out.end(),
            [](const OrderedPartition& x, const OrderedPartition& y) { return x.id() < y.id(); });
  return out;
}

CommunicationGraph graph_from_ordered_partition(const Roster& roster, const OrderedPartition& p) {
  std::set<CommunicationGraph::Edge> edges;
  const auto& classes = p.classes();
  for (std::size_t i = 0; i < classes.size(); ++i) {
    for (std::size_t j = i; j < classes.size(); ++j) {
      for (const auto& from : classes[i]) {
        for (const auto& to : classes[j]) {
          if (from != to) edges.emplace(roster.index_of(from), roster.index_of(to));
        }
      }
    }
  }
  return CommunicationGraph(roster, std::move(edges), p.id());
}

OrderedPartition parse_ordered_partition(const Roster& roster, std::string_view id) {
  std::vector<std::vector<Agent>> classes;
  std::size_t pos = 0;
  auto bad = [&]() -> OrderedPartition {
    fail(Errc::invalid_argument, "malformed ordered partition '" + std::string(id) + "'");
  };
  if (id.empty()) return bad();
  while (pos < id.size()) {
    if (id[pos] != '{') return bad();
    auto close = id.find('}', pos);
    if (close == std::string_view::npos) return bad();
    std::vector<Agent> cls;
    std::string_view body = id.substr(pos + 1, close - pos - 1);
    while (true) {
      auto comma = body.find(',');
      cls.emplace_back(body.substr(0, comma));
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
    classes.push_back(std::move(cls));
    pos = close + 1;
  }
  OrderedPartition p(roster, std::move(classes));
  if (p.id() != id) return bad();
  return p;
}

CommunicationGraph graph_from_id(const Roster& roster, std::string_view id) {
  if (id.starts_with("{")) return graph_from_ordered_partition(roster, parse_ordered_partition(roster, id));
  std::set<CommunicationGraph::Edge> edges;
  if (id != "-") {
    std::string_view rest = id;
    while (true) {
      auto semi = rest.find(';');
      auto item = rest.substr(0, semi);
      auto arrow = item.find('>');
      if (arrow == std::string_view::npos) {
        fail(Errc::invalid_argument, "cannot read a graph from pattern id '" + std::string(id) + "'");
      }
      edges.emplace(roster.index_of(item.substr(0, arrow)), roster.index_of(item.substr(arrow + 1)));
      if (semi == std::string_view::npos) break;
      rest.remove_prefix(semi + 1);
    }
  }
  CommunicationGraph g(roster, std::move(edges));
  if (g.id() != id) {
    fail(Errc::invalid_argument, "pattern id '" + std::string(id) + "' is not canonical");
  }
  return g;
}

// ---------------------------------------------------------------- adversaries

namespace {

std::vector<CommunicationGraph> checked_graphs(const Roster& agents,
                                               std::vector<CommunicationGraph> graphs) {
  if (graphs.empty()) fail(Errc::malformed_adversary, "an adversary needs at least one graph");
  std::sort(graphs.begin(), graphs.end(),
            [](const auto& x, const auto& y) { return x.id() < y.id(); });
  std::set<std::set<CommunicationGraph::Edge>> edge_sets;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (graphs[i].roster() != agents) {
      fail(Errc::malformed_adversary, "graph '" + graphs[i].id() + "' uses a different roster");
    }
    if (i && graphs[i].id() == graphs[i - 1].id()) {
      fail(Errc::malformed_adversary, "duplicate graph id '" + graphs[i].id() + "'");
    }
    if (!edge_sets.insert(graphs[i].edges()).second) {
      fail(Errc::malformed_adversary, "graph '" + graphs[i].id() + "' repeats another graph's edges");
    }
  }
  return graphs;
}

}  // namespace

Adversary Adversary::oblivious(Roster agents, std::vector<CommunicationGraph> graphs) {
  Adversary adv;
  adv.graphs_ = checked_graphs(agents, std::move(graphs));
  adv.agents_ = std::move(agents);
  return adv;
}

Adversary Adversary::general(Roster agents, std::vector<CommunicationGraph> graphs,
                             std::size_t horizon, std::vector<std::vector<std::string>> sequences) {
  Adversary adv;
  adv.graphs_ = checked_graphs(agents, std::move(graphs));
  adv.agents_ = std::move(agents);
  adv.horizon_ = horizon;
  if (horizon == 0) fail(Errc::malformed_adversary, "general adversary needs a horizon >= 1");

  std::set<GraphSequence> full, partial;
  for (const auto& seq : sequences) {
    if (seq.size() > horizon) {
      fail(Errc::malformed_adversary, "sequence longer than the declared horizon");
    }
    GraphSequence idx;
    for (const auto& id : seq) {
      auto g = adv.find(id);
      if (!g) fail(Errc::malformed_adversary, "sequence mentions unknown graph '" + id + "'");
      idx.push_back(*g);
    }
    (idx.size() == horizon ? full : partial).insert(std::move(idx));
  }
  if (full.empty()) fail(Errc::malformed_adversary, "no sequence reaches the horizon");
  for (const auto& p : partial) {
    bool extended = std::any_of(full.begin(), full.end(), [&](const GraphSequence& s) {
      return std::equal(p.begin(), p.end(), s.begin());
    });
    if (!extended) {
      fail(Errc::malformed_adversary, "a listed prefix cannot be extended to the horizon");
    }
  }
  adv.sequences_.assign(full.begin(), full.end());
  return adv;
}

std::optional<std::size_t> Adversary::find(std::string_view id) const {
  auto it = std::lower_bound(graphs_.begin(), graphs_.end(), id,
                             [](const CommunicationGraph& g, std::string_view key) {
                               return g.id() < key;
                             });
  if (it == graphs_.end() || it->id() != id) return std::nullopt;
  return static_cast<std::size_t>(it - graphs_.begin());
}

const CommunicationGraph& Adversary::graph(std::string_view id) const {
  if (auto i = find(id)) return graphs_[*i];
  fail(Errc::invalid_argument, "unknown graph '" + std::string(id) + "'");
}

Adversary iis_adversary(const Roster& agents) {
  if (agents.size() < 2) fail(Errc::invalid_argument, "IIS needs at least two agents");
  std::vector<CommunicationGraph> graphs;
  for (const auto& p : ordered_partitions(agents)) {
    graphs.push_back(graph_from_ordered_partition(agents, p));
  }
  return Adversary::oblivious(agents, std::move(graphs));
}

// ---------------------------------------------------------------- prefixes

namespace {

void check_horizon(const Adversary& adv, std::size_t rounds) {
  if (adv.horizon() && rounds > *adv.horizon()) {
    fail(Errc::out_of_horizon, "round " + std::to_string(rounds) + " is beyond the horizon " +
                                   std::to_string(*adv.horizon()));
  }
}

}  // namespace

std::vector<GraphSequence> enumerate_prefixes(const Adversary& adv, std::size_t rounds) {
  check_horizon(adv, rounds);
  if (!adv.is_oblivious()) {
    std::set<GraphSequence> prefixes;
    for (const auto& seq : adv.sequences()) {
      prefixes.emplace(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(rounds));
    }
    return {prefixes.begin(), prefixes.end()};
  }
  std::vector<GraphSequence> out{GraphSequence{}};
  for (std::size_t r = 0; r < rounds; ++r) {
    std::vector<GraphSequence> next;
    next.reserve(out.size() * adv.graphs().size());
    for (const auto& seq : out) {
      for (std::size_t g = 0; g < adv.graphs().size(); ++g) {
        auto ext = seq;
        ext.push_back(g);
        next.push_back(std::move(ext));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::size_t count_prefixes(const Adversary& adv, std::size_t rounds) {
  check_horizon(adv, rounds);
  if (!adv.is_oblivious()) return enumerate_prefixes(adv, rounds).size();
  std::size_t n = 1;
  for (std::size_t r = 0; r < rounds; ++r) {
    if (n > (std::size_t{1} << 40)) return n;  // saturate; callers only compare to caps
    n *= adv.graphs().size();
  }
  return n;
}

// ---------------------------------------------------------------- pattern models

CommPatternModel cpm_for_round(const Adversary& adv, std::size_t round, const InputSpace& inputs) {
  if (round == 0) fail(Errc::invalid_argument, "rounds are numbered from 1");
  check_horizon(adv, round);
  const auto& roster = adv.agents();
  if (inputs.agents() != roster.size()) {
    fail(Errc::invalid_argument, "input space does not match the adversary's roster");
  }

  // Feasible patterns at this round, each with the (i-1)-prefixes it extends.
  std::map<std::size_t, std::vector<GraphSequence>> feasible;
  for (auto& seq : enumerate_prefixes(adv, round)) {
    auto last = seq.back();
    seq.pop_back();
    feasible[last].push_back(std::move(seq));
  }
  if (feasible.empty()) {
    fail(Errc::malformed_adversary, "no feasible pattern at round " + std::to_string(round));
  }

  std::optional<ViewCatalog> catalog;
  if (!adv.is_oblivious()) catalog.emplace(adv, inputs, round - 1);
  const auto input_vectors = inputs.vectors();

  std::vector<Pattern> patterns;
  std::vector<std::vector<std::vector<std::size_t>>> keys(roster.size());
  for (const auto& [g, histories] : feasible) {
    const auto& graph = adv.graphs()[g];
    Pattern cp;
    cp.id = graph.id();
    for (std::size_t a = 0; a < roster.size(); ++a) {
      cp.inneigh.push_back(graph.in_neighbors(a));
      keys[a].push_back(graph.in_neighbors(a));
    }
    if (adv.is_oblivious()) {
      cp.pre = Formula::top();
    } else {
      std::vector<Formula> disjuncts;
      for (const auto& history : histories) {
        std::vector<CommunicationGraph> schedule;
        for (auto h : history) schedule.push_back(adv.graphs()[h]);
        for (const auto& input : input_vectors) {
          disjuncts.push_back(execution_formula(make_execution(roster, input, schedule), *catalog));
        }
      }
      cp.pre = Formula::any_of(disjuncts);
    }
    patterns.push_back(std::move(cp));
  }
  std::vector<Partition> relations;
  for (const auto& k : keys) relations.push_back(Partition::from_keys(k));
  return CommPatternModel(roster, std::move(patterns), std::move(relations));
}

CpmSequence::CpmSequence(Adversary adv, InputSpace inputs)
    : adv_(std::move(adv)), inputs_(std::move(inputs)) {
  if (adv_.is_oblivious()) {
    models_.push_back(std::make_shared<const CommPatternModel>(cpm_for_round(adv_, 1, inputs_)));
  } else {
    for (std::size_t i = 1; i <= *adv_.horizon(); ++i) {
      models_.push_back(std::make_shared<const CommPatternModel>(cpm_for_round(adv_, i, inputs_)));
    }
  }
}

std::shared_ptr<const CommPatternModel> CpmSequence::at(std::size_t round) const {
  if (round == 0) fail(Errc::invalid_argument, "rounds are numbered from 1");
  if (adv_.is_oblivious()) return models_.front();
  check_horizon(adv_, round);
  return models_[round - 1];
}

}  // namespace cpm
