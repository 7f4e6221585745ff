#pragma once

// Communication graphs, dynamic-network adversaries and the per-round
// communication pattern models derived from them.

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cpm/epistemic_model.hpp"
#include "cpm/update_models.hpp"

namespace cpm {

/// Directed who-hears-whom graph over a roster. Edge (s, r) means the round
/// message of s reaches r. Self-loops are never stored. Copies share state.
class CommunicationGraph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  /// Empty `id` selects the canonical edge-list id (see canonical_id).
  CommunicationGraph(Roster roster, std::set<Edge> edges, std::string id = {});

  const Roster& roster() const noexcept { return data_->roster; }
  const std::set<Edge>& edges() const noexcept { return data_->edges; }
  const std::string& id() const noexcept { return data_->id; }
  /// Sorted roster indices of agents whose messages reach `agent`.
  const std::vector<std::size_t>& in_neighbors(std::size_t agent) const {
    return data_->in.at(agent);
  }
  bool has_edge(std::size_t from, std::size_t to) const { return edges().contains({from, to}); }

  /// `a>b;b>c` with entries sorted lexicographically, or `-` with no edges.
  std::string canonical_id() const;

  friend bool operator==(const CommunicationGraph& x, const CommunicationGraph& y) {
    return x.id() == y.id() && x.edges() == y.edges() && x.roster() == y.roster();
  }

 private:
  struct Data {
    Roster roster;
    std::set<Edge> edges;
    std::string id;
    std::vector<std::vector<std::size_t>> in;
  };
  std::shared_ptr<const Data> data_;
};

/// Sequence of disjoint non-empty concurrency classes covering the roster.
class OrderedPartition {
 public:
  OrderedPartition(const Roster& roster, std::vector<std::vector<Agent>> classes);

  const std::vector<std::vector<Agent>>& classes() const noexcept { return classes_; }
  /// `{a}{b,c}`: classes in order, members comma-joined lexicographically.
  std::string id() const;

 private:
  std::vector<std::vector<Agent>> classes_;
};

/// Every ordered set partition of the roster, sorted by id.
std::vector<OrderedPartition> ordered_partitions(const Roster& roster);

/// Edge (x, y) for x in class i and y in class j with i <= j and x != y.
CommunicationGraph graph_from_ordered_partition(const Roster& roster, const OrderedPartition& p);

/// Parses `{a}{b,c}` notation back into an ordered partition.
OrderedPartition parse_ordered_partition(const Roster& roster, std::string_view id);

/// Resolves a pattern id that encodes its own graph: ordered-partition
/// notation, the canonical edge list, or `-`.
CommunicationGraph graph_from_id(const Roster& roster, std::string_view id);

/// Oblivious (a graph set X usable every round) or general (an explicit
/// prefix tree up to a finite horizon).
class Adversary {
 public:
  static Adversary oblivious(Roster agents, std::vector<CommunicationGraph> graphs);
  /// `sequences` hold graph ids; every listed sequence must extend to one of
  /// length `horizon`.
  static Adversary general(Roster agents, std::vector<CommunicationGraph> graphs,
                           std::size_t horizon, std::vector<std::vector<std::string>> sequences);

  bool is_oblivious() const noexcept { return !horizon_.has_value(); }
  const Roster& agents() const noexcept { return agents_; }
  /// Sorted by id.
  const std::vector<CommunicationGraph>& graphs() const noexcept { return graphs_; }
  std::optional<std::size_t> find(std::string_view id) const;
  /// Throws invalid_argument for unknown ids.
  const CommunicationGraph& graph(std::string_view id) const;
  std::optional<std::size_t> horizon() const noexcept { return horizon_; }
  /// Maximal stored sequences as graph indices (general adversaries only).
  const std::vector<std::vector<std::size_t>>& sequences() const noexcept { return sequences_; }

 private:
  Adversary() = default;

  Roster agents_;
  std::vector<CommunicationGraph> graphs_;
  std::optional<std::size_t> horizon_;
  std::vector<std::vector<std::size_t>> sequences_;
};

/// IIS: every ordered partition of the roster yields one graph.
Adversary iis_adversary(const Roster& agents);

using GraphSequence = std::vector<std::size_t>;

/// All length-r prefixes as indices into adv.graphs(), lexicographically by
/// index. Throws out_of_horizon past a general adversary's horizon.
std::vector<GraphSequence> enumerate_prefixes(const Adversary& adv, std::size_t rounds);
/// Same count without materializing the sequences.
std::size_t count_prefixes(const Adversary& adv, std::size_t rounds);

/// A^i for round i >= 1. Patterns are the graphs feasible at round i; R_a
/// groups patterns by the in-neighborhood of a; N̄ is the in-neighborhood.
/// Preconditions are ⊤ for oblivious adversaries and otherwise the
/// disjunction of world-identifying formulas over round-(i-1) executions.
CommPatternModel cpm_for_round(const Adversary& adv, std::size_t round, const InputSpace& inputs);

/// A¹, A², ... Oblivious adversaries keep one shared model for every round.
class CpmSequence {
 public:
  CpmSequence(Adversary adv, InputSpace inputs);

  const Adversary& adversary() const noexcept { return adv_; }
  /// Throws out_of_horizon past a general adversary's horizon.
  std::shared_ptr<const CommPatternModel> at(std::size_t round) const;
  /// Distinct models held: 1 for oblivious adversaries.
  std::size_t stored_models() const noexcept { return models_.size(); }

 private:
  Adversary adv_;
  InputSpace inputs_;
  std::vector<std::shared_ptr<const CommPatternModel>> models_;
};

}  // namespace cpm
