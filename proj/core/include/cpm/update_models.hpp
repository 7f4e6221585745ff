#pragma once

// Action models with the restricted modal product, and communication pattern
// models with the extended product that also tracks who hears whom.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cpm/epistemic_model.hpp"
#include "cpm/formula.hpp"

namespace cpm {

struct Event {
  std::string id;
  Formula pre;

  friend bool operator==(const Event&, const Event&) = default;
};

/// (E, R, Pre). R_a may be any binary relation over the events.
class ActionModel {
 public:
  using Relation = std::set<std::pair<std::size_t, std::size_t>>;

  /// `relations[i]` belongs to roster agent i and indexes into `events`.
  ActionModel(Roster agents, std::vector<Event> events, std::vector<Relation> relations);

  /// Relations keyed by agent name with pairs of event ids; agents absent
  /// from the map get the empty relation.
  static ActionModel from_pairs(
      Roster agents, std::vector<Event> events,
      const std::map<Agent, std::vector<std::pair<std::string, std::string>>>& relations);

  const Roster& agents() const noexcept { return agents_; }
  std::size_t size() const noexcept { return events_.size(); }
  const std::vector<Event>& events() const noexcept { return events_; }
  const Event& event(std::size_t e) const { return events_.at(e); }
  std::optional<std::size_t> find(std::string_view id) const;

  const Relation& relation(std::size_t agent) const { return relations_.at(agent); }
  bool related(std::size_t agent, std::size_t e1, std::size_t e2) const {
    return relations_[agent].contains({e1, e2});
  }
  bool is_equivalence(std::size_t agent) const;

  friend bool operator==(const ActionModel&, const ActionModel&) = default;

 private:
  Roster agents_;
  std::vector<Event> events_;
  std::vector<Relation> relations_;
};

struct Pattern {
  std::string id;
  Formula pre;
  /// inneigh[i]: sorted roster indices agent i hears from under this pattern.
  std::vector<std::vector<std::size_t>> inneigh;

  friend bool operator==(const Pattern&, const Pattern&) = default;
};

/// (CP, R, Pre, N̄). Every R_a is an equivalence, stored as a partition.
class CommPatternModel {
 public:
  CommPatternModel(Roster agents, std::vector<Pattern> patterns, std::vector<Partition> relations);

  const Roster& agents() const noexcept { return agents_; }
  std::size_t size() const noexcept { return patterns_.size(); }
  const std::vector<Pattern>& patterns() const noexcept { return patterns_; }
  const Pattern& pattern(std::size_t cp) const { return patterns_.at(cp); }
  std::optional<std::size_t> find(std::string_view id) const;

  const Partition& relation(std::size_t agent) const { return relations_.at(agent); }
  const std::vector<std::size_t>& inneigh(std::size_t cp, std::size_t agent) const {
    return patterns_.at(cp).inneigh.at(agent);
  }

  friend bool operator==(const CommPatternModel&, const CommPatternModel&) = default;

 private:
  Roster agents_;
  std::vector<Pattern> patterns_;
  std::vector<Partition> relations_;
};

/// M ⊗ A. Throws empty_product if no (w, e) survives and non_s5_result if a
/// resulting relation is not an equivalence.
EpistemicModel product_restricted(const EpistemicModel& model, const ActionModel& action);

struct ProductOptions {
  /// Drops the equal-in-neighborhood and sender-indistinguishability
  /// clauses, which turns the product into the plain restricted product.
  bool ignore_inneigh = false;
};

/// M ⊙ P. Throws empty_product if no (w, cp) survives.
EpistemicModel product_cpm(const EpistemicModel& model, const CommPatternModel& patterns,
                           ProductOptions options = {});

/// Degenerate pattern model with N̄ constantly empty. Throws invalid_argument
/// naming the first agent whose relation is not an equivalence.
CommPatternModel from_action_model(const ActionModel& action);

/// Forgets N̄; R becomes the pair set of each partition.
ActionModel to_action_model(const CommPatternModel& patterns);

}  // namespace cpm
