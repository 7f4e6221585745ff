#include "cpm/views.hpp"

#include <algorithm>
#include <set>

#include "cpm/error.hpp"

namespace cpm {

// ---------------------------------------------------------------- View

View View::input(Value v) {
  View out;
  out.kind_ = Kind::input;
  out.value_ = std::move(v);
  return out;
}

View View::bottom() { return View{}; }

View View::vector(std::vector<View> entries) {
  View out;
  out.kind_ = Kind::vector;
  out.entries_ = std::move(entries);
  return out;
}

std::size_t View::depth() const {
  switch (kind_) {
    case Kind::input:
      return 0;
    case Kind::bottom:
      fail(Errc::invalid_argument, "⊥ has no depth");
    case Kind::vector:
      break;
  }
  std::optional<std::size_t> inner;
  for (const auto& e : entries_) {
    if (e.is_bottom()) continue;
    auto d = e.depth();
    if (inner && *inner != d) fail(Errc::invalid_argument, "view entries disagree on depth");
    inner = d;
  }
  if (!inner) fail(Errc::invalid_argument, "view vector without any present entry");
  return *inner + 1;
}

std::string View::str() const {
  switch (kind_) {
    case Kind::input:
      return value_;
    case Kind::bottom:
      return "_";
    case Kind::vector:
      break;
  }
  std::string out = "[";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ',';
    out += entries_[i].str();
  }
  return out + "]";
}

std::strong_ordering operator<=>(const View& x, const View& y) {
  if (auto c = x.kind_ <=> y.kind_; c != 0) return c;
  if (x.kind_ == View::Kind::input) return x.value_ <=> y.value_;
  if (x.kind_ == View::Kind::bottom) return std::strong_ordering::equal;
  const auto n = std::min(x.entries_.size(), y.entries_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = x.entries_[i] <=> y.entries_[i]; c != 0) return c;
  }
  return x.entries_.size() <=> y.entries_.size();
}

// ---------------------------------------------------------------- executions

std::string Execution::str() const {
  std::vector<std::string> history;
  for (const auto& g : schedule) history.push_back(g.id());
  return WorldId(input, std::move(history)).str();
}

Execution make_execution(const Roster& agents, std::vector<Value> input,
                         std::vector<CommunicationGraph> schedule) {
  if (input.size() != agents.size()) {
    fail(Errc::invalid_argument, "input vector does not match the roster");
  }
  for (const auto& v : input) {
    if (!is_token(v)) fail(Errc::invalid_argument, "invalid input value '" + v + "'");
  }
  for (const auto& g : schedule) {
    if (g.roster() != agents) {
      fail(Errc::invalid_argument, "graph '" + g.id() + "' is over a different roster");
    }
  }
  return Execution{agents, std::move(input), std::move(schedule)};
}

namespace {

View view_at(std::size_t agent, const Execution& e, std::size_t rounds) {
  if (rounds == 0) return View::input(e.input[agent]);
  const auto& heard = e.schedule[rounds - 1].in_neighbors(agent);
  std::vector<View> entries;
  entries.reserve(e.agents.size());
  for (std::size_t j = 0; j < e.agents.size(); ++j) {
    bool present = j == agent || std::binary_search(heard.begin(), heard.end(), j);
    entries.push_back(present ? view_at(j, e, rounds - 1) : View::bottom());
  }
  return View::vector(std::move(entries));
}

}  // namespace

View view(std::size_t agent, const Execution& e) {
  if (agent >= e.agents.size()) fail(Errc::invalid_argument, "agent index out of range");
  return view_at(agent, e, e.rounds());
}

View view(std::string_view agent, const Execution& e) {
  return view(e.agents.index_of(agent), e);
}

Configuration run_full_information(const Execution& e) {
  const auto n = e.agents.size();
  Configuration current;
  current.reserve(n);
  for (const auto& v : e.input) current.push_back(View::input(v));
  for (const auto& graph : e.schedule) {
    Configuration next;
    next.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<View> entries(n, View::bottom());
      entries[i] = current[i];
      for (auto j : graph.in_neighbors(i)) entries[j] = current[j];
      next.push_back(View::vector(std::move(entries)));
    }
    current = std::move(next);
  }
  return current;
}

bool indistinguishable(const Configuration& c1, const Configuration& c2, std::size_t agent) {
  if (c1.size() != c2.size()) fail(Errc::invalid_argument, "configurations differ in size");
  if (agent >= c1.size()) fail(Errc::invalid_argument, "agent index out of range");
  if (c1[agent].depth() != c2[agent].depth()) {
    fail(Errc::invalid_argument, "configurations belong to different rounds");
  }
  return c1[agent] == c2[agent];
}

// ---------------------------------------------------------------- φ formulas

ViewCatalog::ViewCatalog(const Adversary& adv, const InputSpace& inputs, std::size_t max_round) {
  const auto n = adv.agents().size();
  views_.resize(max_round + 1);
  for (std::size_t k = 0; k <= max_round; ++k) {
    std::vector<std::set<View>> sets(n);
    for (const auto& e : enumerate_executions(adv, inputs, k)) {
      auto config = run_full_information(e);
      for (std::size_t j = 0; j < n; ++j) sets[j].insert(std::move(config[j]));
    }
    for (auto& s : sets) views_[k].emplace_back(s.begin(), s.end());
  }
}

const std::vector<View>& ViewCatalog::views(std::size_t round, std::size_t agent) const {
  if (round >= views_.size()) fail(Errc::out_of_horizon, "view catalog does not reach that round");
  return views_[round].at(agent);
}

namespace {

void collect_phi(std::size_t round, const Roster& agents, std::size_t agent, const View& v,
                 const ViewCatalog& catalog, std::vector<Formula>& out);

Formula phi(std::size_t round, const Roster& agents, std::size_t agent, const View& v,
            const ViewCatalog& catalog) {
  std::vector<Formula> conjuncts;
  collect_phi(round, agents, agent, v, catalog, conjuncts);
  return Formula::all_of(conjuncts);
}

void collect_phi(std::size_t round, const Roster& agents, std::size_t agent, const View& v,
                 const ViewCatalog& catalog, std::vector<Formula>& out) {
  if (round == 0) {
    out.push_back(Formula::prop(agents[agent], v.value()));
    return;
  }
  const auto& entries = v.entries();
  for (std::size_t j = 0; j < agents.size(); ++j) {
    if (!entries[j].is_bottom()) {
      out.push_back(Formula::know(agents[agent], phi(round - 1, agents, j, entries[j], catalog)));
    } else {
      for (const auto& other : catalog.views(round - 1, j)) {
        out.push_back(Formula::negation(
            Formula::know(agents[agent], phi(round - 1, agents, j, other, catalog))));
      }
    }
  }
}

}  // namespace

Formula phi_formula(std::size_t round, const Roster& agents, std::size_t agent, const View& v,
                    const ViewCatalog& catalog) {
  if (agent >= agents.size()) fail(Errc::invalid_argument, "agent index out of range");
  if (v.is_bottom() || v.depth() != round) {
    fail(Errc::invalid_argument, "view " + v.str() + " does not belong to round " +
                                     std::to_string(round));
  }
  if (v.is_vector() && v.entries().size() != agents.size()) {
    fail(Errc::invalid_argument, "view " + v.str() + " does not match the roster");
  }
  if (round > catalog.max_round()) {
    fail(Errc::out_of_horizon, "view catalog does not reach round " + std::to_string(round));
  }
  return phi(round, agents, agent, v, catalog);
}

Formula execution_formula(const Execution& e, const ViewCatalog& catalog) {
  auto config = run_full_information(e);
  std::vector<Formula> conjuncts;
  for (std::size_t i = 0; i < e.agents.size(); ++i) {
    conjuncts.push_back(phi_formula(e.rounds(), e.agents, i, config[i], catalog));
  }
  return Formula::all_of(conjuncts);
}

// ---------------------------------------------------------------- h^r

Execution world_to_execution(const WorldId& world, const Roster& agents, const Adversary* adv) {
  if (world.input().size() != agents.size()) {
    fail(Errc::invalid_argument, "world '" + world.str() + "' does not match the roster");
  }
  std::vector<CommunicationGraph> schedule;
  for (const auto& step : world.history()) {
    schedule.push_back(adv ? adv->graph(step) : graph_from_id(agents, step));
  }
  return make_execution(agents, world.input(), std::move(schedule));
}

std::vector<Execution> enumerate_executions(const Adversary& adv, const InputSpace& inputs,
                                            std::size_t rounds) {
  if (inputs.agents() != adv.agents().size()) {
    fail(Errc::invalid_argument, "input space does not match the adversary's roster");
  }
  std::vector<Execution> out;
  const auto prefixes = enumerate_prefixes(adv, rounds);
  for (const auto& input : inputs.vectors()) {
    for (const auto& prefix : prefixes) {
      std::vector<CommunicationGraph> schedule;
      schedule.reserve(prefix.size());
      for (auto g : prefix) schedule.push_back(adv.graphs()[g]);
      out.push_back(Execution{adv.agents(), input, std::move(schedule)});
    }
  }
  return out;
}

}  // namespace cpm
