#pragma once

// Epistemic (S5 Kripke) models: worlds, per-agent indistinguishability
// partitions and propositional labels.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cpm {

using Agent = std::string;
using Value = std::string;
using WorldIndex = std::size_t;

/// Agent names and input values are alphanumeric tokens. Underscores are
/// reserved as the separator inside proposition names.
bool is_token(std::string_view text);

/// Ordered list of agents a_1..a_n. Position i is the agent's coordinate in
/// input vectors, configurations and views.
class Roster {
 public:
  Roster() = default;
  explicit Roster(std::vector<Agent> agents);

  std::size_t size() const noexcept { return agents_.size(); }
  const Agent& operator[](std::size_t i) const { return agents_[i]; }
  const std::vector<Agent>& agents() const noexcept { return agents_; }
  auto begin() const noexcept { return agents_.begin(); }
  auto end() const noexcept { return agents_.end(); }

  std::optional<std::size_t> find(std::string_view agent) const;
  /// Throws invalid_argument if the agent is not on the roster.
  std::size_t index_of(std::string_view agent) const;
  bool contains(std::string_view agent) const { return find(agent).has_value(); }

  friend bool operator==(const Roster&, const Roster&) = default;

 private:
  std::vector<Agent> agents_;
};

/// Per-agent input domains. Most models use one shared domain; the
/// coordinated-attack fixture gives the listening agent a single placeholder.
class InputSpace {
 public:
  InputSpace() = default;
  static InputSpace uniform(std::size_t agents, std::vector<Value> values);
  static InputSpace per_agent(std::vector<std::vector<Value>> domains);

  std::size_t agents() const noexcept { return domains_.size(); }
  const std::vector<Value>& domain(std::size_t agent) const { return domains_.at(agent); }
  bool is_uniform() const;
  bool contains(std::size_t agent, std::string_view value) const;

  /// Every input vector, in odometer order over the domains.
  std::vector<std::vector<Value>> vectors() const;
  std::size_t vector_count() const;

  friend bool operator==(const InputSpace&, const InputSpace&) = default;

 private:
  std::vector<std::vector<Value>> domains_;
};

/// The atom in_<agent>_<value>.
struct Proposition {
  Agent agent;
  Value value;

  std::string name() const { return "in_" + agent + "_" + value; }
  friend auto operator<=>(const Proposition&, const Proposition&) = default;
};

std::optional<Proposition> parse_proposition(std::string_view text);

/// World identifier carrying full provenance: the input vector followed by
/// the identifiers of the events/patterns applied so far. Rendered as
/// `(v1,...,vn)|p1|p2`.
class WorldId {
 public:
  WorldId() = default;
  WorldId(std::vector<Value> input, std::vector<std::string> history);

  static WorldId parse(std::string_view text);

  const std::vector<Value>& input() const noexcept { return input_; }
  const std::vector<std::string>& history() const noexcept { return history_; }
  std::size_t rounds() const noexcept { return history_.size(); }
  const std::string& str() const noexcept { return text_; }

  WorldId extended(const std::string& step) const;

  friend bool operator==(const WorldId& a, const WorldId& b) { return a.text_ == b.text_; }
  friend std::strong_ordering operator<=>(const WorldId& a, const WorldId& b) {
    return a.text_ <=> b.text_;
  }

 private:
  std::vector<Value> input_;
  std::vector<std::string> history_;
  std::string text_;
};

/// A set partition of {0..n-1}. Stored canonically: class numbers are
/// assigned in order of each class's smallest element, so two partitions are
/// equal iff their class_of vectors are equal.
class Partition {
 public:
  Partition() = default;

  /// Classes must be disjoint and cover 0..n-1.
  static Partition from_classes(std::size_t n, const std::vector<std::vector<std::size_t>>& classes);
  /// Elements with equal keys share a class.
  template <class Key>
  static Partition from_keys(const std::vector<Key>& keys) {
    std::map<Key, std::size_t> seen;
    std::vector<std::size_t> raw(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
      raw[i] = seen.try_emplace(keys[i], seen.size()).first->second;
    }
    return from_raw(std::move(raw));
  }
  static Partition identity(std::size_t n);
  static Partition total(std::size_t n);
  /// Arbitrary class labels; normalized on construction.
  static Partition from_raw(std::vector<std::size_t> labels);

  std::size_t size() const noexcept { return class_of_.size(); }
  std::size_t class_count() const noexcept { return classes_.size(); }
  std::size_t class_of(std::size_t i) const { return class_of_[i]; }
  bool same(std::size_t i, std::size_t j) const { return class_of_[i] == class_of_[j]; }
  const std::vector<std::size_t>& members(std::size_t cls) const { return classes_[cls]; }
  const std::vector<std::vector<std::size_t>>& classes() const noexcept { return classes_; }

  /// Relabels element i as perm[i].
  Partition permuted(const std::vector<std::size_t>& perm) const;
  /// True if every class of *this lies inside a class of other.
  bool refines(const Partition& other) const;

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.class_of_ == b.class_of_;
  }

 private:
  std::vector<std::size_t> class_of_;
  std::vector<std::vector<std::size_t>> classes_;
};

struct World {
  WorldId id;
  std::vector<Proposition> label;  // sorted, unique
};

/// M = (W, ~, L). Immutable once built; worlds are kept in lexicographic
/// order of their rendered ids.
class EpistemicModel {
 public:
  /// `relations[i]` is agent i's partition over `worlds` as given (before
  /// sorting). Throws invalid_argument on any invariant violation.
  EpistemicModel(Roster agents, InputSpace inputs, std::vector<World> worlds,
                 std::vector<Partition> relations);

  const Roster& agents() const noexcept { return agents_; }
  const InputSpace& inputs() const noexcept { return inputs_; }
  std::size_t size() const noexcept { return worlds_.size(); }
  const std::vector<World>& worlds() const noexcept { return worlds_; }
  const World& world(WorldIndex w) const { return worlds_.at(w); }
  const Partition& relation(std::size_t agent) const { return relations_.at(agent); }
  const Partition& relation(std::string_view agent) const {
    return relations_.at(agents_.index_of(agent));
  }

  bool related(std::size_t agent, WorldIndex w1, WorldIndex w2) const {
    return relations_[agent].same(w1, w2);
  }

  std::optional<WorldIndex> find(std::string_view id) const;
  /// Throws invalid_argument for unknown ids.
  WorldIndex index_of(std::string_view id) const;

  bool has_proposition(const Proposition& p) const;
  bool holds(WorldIndex w, const Proposition& p) const;
  std::vector<Proposition> propositions() const;

  /// Structural equality: same roster, inputs, world ids, labels, partitions.
  friend bool operator==(const EpistemicModel& a, const EpistemicModel& b);

 private:
  Roster agents_;
  InputSpace inputs_;
  std::vector<World> worlds_;
  std::vector<Partition> relations_;
  std::map<std::string, WorldIndex, std::less<>> index_;
};

/// M^0: one world per input vector; agent i cannot tell apart vectors that
/// agree on coordinate i.
EpistemicModel build_initial_model(const Roster& agents, const InputSpace& inputs);

}  // namespace cpm
