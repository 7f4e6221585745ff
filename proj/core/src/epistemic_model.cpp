#include "cpm/epistemic_model.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "cpm/error.hpp"

namespace cpm {

bool is_token(std::string_view text) {
  if (text.empty()) return false;
  return std::all_of(text.begin(), text.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
  });
}

// ---------------------------------------------------------------- Roster

Roster::Roster(std::vector<Agent> agents) : agents_(std::move(agents)) {
  if (agents_.size() < 2) {
    fail(Errc::invalid_argument, "a roster needs at least two agents");
  }
  std::set<std::string_view> seen;
  for (const auto& a : agents_) {
    if (!is_token(a)) fail(Errc::invalid_argument, "invalid agent name '" + a + "'");
    if (!seen.insert(a).second) fail(Errc::invalid_argument, "duplicate agent '" + a + "'");
  }
}

std::optional<std::size_t> Roster::find(std::string_view agent) const {
  auto it = std::find(agents_.begin(), agents_.end(), agent);
  if (it == agents_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - agents_.begin());
}

std::size_t Roster::index_of(std::string_view agent) const {
  if (auto i = find(agent)) return *i;
  fail(Errc::invalid_argument, "unknown agent '" + std::string(agent) + "'");
}

// ---------------------------------------------------------------- InputSpace

InputSpace InputSpace::uniform(std::size_t agents, std::vector<Value> values) {
  return per_agent(std::vector<std::vector<Value>>(agents, std::move(values)));
}

InputSpace InputSpace::per_agent(std::vector<std::vector<Value>> domains) {
  for (const auto& d : domains) {
    if (d.empty()) fail(Errc::invalid_argument, "empty input space");
    std::set<std::string_view> seen;
    for (const auto& v : d) {
      if (!is_token(v)) fail(Errc::invalid_argument, "invalid input value '" + v + "'");
      if (!seen.insert(v).second) fail(Errc::invalid_argument, "duplicate input value '" + v + "'");
    }
  }
  InputSpace s;
  s.domains_ = std::move(domains);
  return s;
}

bool InputSpace::is_uniform() const {
  return std::all_of(domains_.begin(), domains_.end(),
                     [&](const auto& d) { return d == domains_.front(); });
}

bool InputSpace::contains(std::size_t agent, std::string_view value) const {
  if (agent >= domains_.size()) return false;
  const auto& d = domains_[agent];
  return std::find(d.begin(), d.end(), value) != d.end();
}

std::size_t InputSpace::vector_count() const {
  std::size_t n = domains_.empty() ? 0 : 1;
  for (const auto& d : domains_) n *= d.size();
  return n;
}

std::vector<std::vector<Value>> InputSpace::vectors() const {
  std::vector<std::vector<Value>> out;
  if (domains_.empty()) return out;
  std::vector<std::size_t> digit(domains_.size(), 0);
  while (true) {
    std::vector<Value> v;
    v.reserve(domains_.size());
    for (std::size_t i = 0; i < domains_.size(); ++i) v.push_back(domains_[i][digit[i]]);
    out.push_back(std::move(v));
    std::size_t i = domains_.size();
    while (i > 0) {
      --i;
      if (++digit[i] < domains_[i].size()) break;
      digit[i] = 0;
      if (i == 0) return out;
    }
  }
}

// ---------------------------------------------------------------- Proposition

std::optional<Proposition> parse_proposition(std::string_view text) {
  if (!text.starts_with("in_")) return std::nullopt;
  text.remove_prefix(3);
  auto sep = text.find('_');
  if (sep == std::string_view::npos) return std::nullopt;
  auto agent = text.substr(0, sep);
  auto value = text.substr(sep + 1);
  if (!is_token(agent) || !is_token(value)) return std::nullopt;
  return Proposition{std::string(agent), std::string(value)};
}

// ---------------------------------------------------------------- WorldId

WorldId::WorldId(std::vector<Value> input, std::vector<std::string> history)
    : input_(std::move(input)), history_(std::move(history)) {
  if (input_.empty()) fail(Errc::invalid_argument, "world id needs an input vector");
  text_ = "(";
  for (std::size_t i = 0; i < input_.size(); ++i) {
    if (!is_token(input_[i])) {
      fail(Errc::invalid_argument, "invalid input value '" + input_[i] + "' in world id");
    }
    if (i) text_ += ',';
    text_ += input_[i];
  }
  text_ += ')';
  for (const auto& step : history_) {
    if (step.empty() || step.find('|') != std::string::npos) {
      fail(Errc::invalid_argument, "invalid provenance step '" + step + "'");
    }
    text_ += '|';
    text_ += step;
  }
}

WorldId WorldId::parse(std::string_view text) {
  auto bad = [&]() -> WorldId {
    fail(Errc::invalid_argument, "malformed world id '" + std::string(text) + "'");
  };
  if (text.empty() || text.front() != '(') return bad();
  auto close = text.find(')');
  if (close == std::string_view::npos) return bad();
  std::vector<Value> input;
  std::string_view body = text.substr(1, close - 1);
  while (true) {
    auto comma = body.find(',');
    input.emplace_back(body.substr(0, comma));
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  std::vector<std::string> history;
  std::string_view rest = text.substr(close + 1);
  while (!rest.empty()) {
    if (rest.front() != '|') return bad();
    rest.remove_prefix(1);
    auto bar = rest.find('|');
    history.emplace_back(rest.substr(0, bar));
    if (bar == std::string_view::npos) break;
    rest.remove_prefix(bar);
  }
  return WorldId(std::move(input), std::move(history));
}

WorldId WorldId::extended(const std::string& step) const {
  auto history = history_;
  history.push_back(step);
  return WorldId(input_, std::move(history));
}

// ---------------------------------------------------------------- Partition

Partition Partition::from_raw(std::vector<std::size_t> labels) {
  Partition p;
  std::map<std::size_t, std::size_t> renumber;
  p.class_of_.resize(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, fresh] = renumber.try_emplace(labels[i], p.classes_.size());
    if (fresh) p.classes_.emplace_back();
    p.class_of_[i] = it->second;
    p.classes_[it->second].push_back(i);
  }
  return p;
}

Partition Partition::from_classes(std::size_t n,
                                  const std::vector<std::vector<std::size_t>>& classes) {
  constexpr auto unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> labels(n, unset);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (classes[c].empty()) fail(Errc::invalid_argument, "empty class in partition");
    for (auto i : classes[c]) {
      if (i >= n) fail(Errc::invalid_argument, "partition element out of range");
      if (labels[i] != unset) fail(Errc::invalid_argument, "partition classes overlap");
      labels[i] = c;
    }
  }
  if (std::find(labels.begin(), labels.end(), unset) != labels.end()) {
    fail(Errc::invalid_argument, "partition does not cover every element");
  }
  return from_raw(std::move(labels));
}

Partition Partition::identity(std::size_t n) {
  std::vector<std::size_t> labels(n);
  std::iota(labels.begin(), labels.end(), 0);
  return from_raw(std::move(labels));
}

Partition Partition::total(std::size_t n) { return from_raw(std::vector<std::size_t>(n, 0)); }

Partition Partition::permuted(const std::vector<std::size_t>& perm) const {
  std::vector<std::size_t> labels(size());
  for (std::size_t i = 0; i < size(); ++i) labels.at(perm.at(i)) = class_of_[i];
  return from_raw(std::move(labels));
}

bool Partition::refines(const Partition& other) const {
  if (other.size() != size()) return false;
  for (const auto& cls : classes_) {
    for (auto i : cls) {
      if (other.class_of_[i] != other.class_of_[cls.front()]) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- EpistemicModel

EpistemicModel::EpistemicModel(Roster agents, InputSpace inputs, std::vector<World> worlds,
                               std::vector<Partition> relations)
    : agents_(std::move(agents)), inputs_(std::move(inputs)) {
  if (worlds.empty()) fail(Errc::invalid_argument, "a model needs at least one world");
  if (inputs_.agents() != agents_.size()) {
    fail(Errc::invalid_argument, "input space does not match the roster");
  }
  if (relations.size() != agents_.size()) {
    fail(Errc::invalid_argument, "one relation per agent is required");
  }
  for (const auto& r : relations) {
    if (r.size() != worlds.size()) {
      fail(Errc::invalid_argument, "relation is not over exactly the world set");
    }
  }

  std::vector<std::size_t> order(worlds.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](auto x, auto y) { return worlds[x].id < worlds[y].id; });
  std::vector<std::size_t> position(worlds.size());
  for (std::size_t k = 0; k < order.size(); ++k) position[order[k]] = k;

  worlds_.reserve(worlds.size());
  for (auto i : order) {
    auto& w = worlds[i];
    if (w.id.input().size() != agents_.size()) {
      fail(Errc::invalid_argument, "world '" + w.id.str() + "' has the wrong input arity");
    }
    std::sort(w.label.begin(), w.label.end());
    w.label.erase(std::unique(w.label.begin(), w.label.end()), w.label.end());
    for (const auto& p : w.label) {
      if (!has_proposition(p)) {
        fail(Errc::invalid_argument,
             "world '" + w.id.str() + "' is labeled with unknown proposition " + p.name());
      }
    }
    if (!index_.emplace(w.id.str(), worlds_.size()).second) {
      fail(Errc::invalid_argument, "duplicate world id '" + w.id.str() + "'");
    }
    worlds_.push_back(std::move(w));
  }
  relations_.reserve(relations.size());
  for (const auto& r : relations) relations_.push_back(r.permuted(position));
}

std::optional<WorldIndex> EpistemicModel::find(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

WorldIndex EpistemicModel::index_of(std::string_view id) const {
  if (auto w = find(id)) return *w;
  fail(Errc::invalid_argument, "unknown world '" + std::string(id) + "'");
}

bool EpistemicModel::has_proposition(const Proposition& p) const {
  auto a = agents_.find(p.agent);
  return a && inputs_.contains(*a, p.value);
}

bool EpistemicModel::holds(WorldIndex w, const Proposition& p) const {
  const auto& label = worlds_.at(w).label;
  return std::binary_search(label.begin(), label.end(), p);
}

std::vector<Proposition> EpistemicModel::propositions() const {
  std::vector<Proposition> out;
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    for (const auto& v : inputs_.domain(i)) out.push_back({agents_[i], v});
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool operator==(const EpistemicModel& a, const EpistemicModel& b) {
  if (a.agents_ != b.agents_ || a.inputs_ != b.inputs_ || a.relations_ != b.relations_) {
    return false;
  }
  if (a.worlds_.size() != b.worlds_.size()) return false;
  for (std::size_t i = 0; i < a.worlds_.size(); ++i) {
    if (a.worlds_[i].id != b.worlds_[i].id || a.worlds_[i].label != b.worlds_[i].label) {
      return false;
    }
  }
  return true;
}

EpistemicModel build_initial_model(const Roster& agents, const InputSpace& inputs) {
  if (agents.size() < 2) fail(Errc::invalid_argument, "at least two agents are required");
  if (inputs.agents() != agents.size()) {
    fail(Errc::invalid_argument, "input space does not match the roster");
  }
  auto vectors = inputs.vectors();
  std::vector<World> worlds;
  worlds.reserve(vectors.size());
  for (const auto& v : vectors) {
    World w{WorldId(v, {}), {}};
    for (std::size_t i = 0; i < agents.size(); ++i) w.label.push_back({agents[i], v[i]});
    worlds.push_back(std::move(w));
  }
  std::vector<Partition> relations;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    std::vector<Value> keys;
    keys.reserve(vectors.size());
    for (const auto& v : vectors) keys.push_back(v[i]);
    relations.push_back(Partition::from_keys(keys));
  }
  return EpistemicModel(agents, inputs, std::move(worlds), std::move(relations));
}

}  // namespace cpm
