#pragma once

// Protocol-side ground truth: executions of the full-information protocol,
// the local states (views) they produce, and formulas describing views.

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "cpm/adversary.hpp"
#include "cpm/epistemic_model.hpp"
#include "cpm/formula.hpp"

namespace cpm {

/// Local state of an agent. Round 0: its input value. Round k+1: one entry
/// per agent, holding that agent's round-k view if it was heard (or is the
/// owner) and ⊥ otherwise. ⊥ is a separate kind, never an input value.
class View {
 public:
  static View input(Value v);
  static View bottom();
  static View vector(std::vector<View> entries);

  bool is_bottom() const noexcept { return kind_ == Kind::bottom; }
  bool is_input() const noexcept { return kind_ == Kind::input; }
  bool is_vector() const noexcept { return kind_ == Kind::vector; }
  const Value& value() const { return value_; }
  const std::vector<View>& entries() const { return entries_; }

  /// Round number the view belongs to. Throws invalid_argument for ⊥ or for
  /// vectors whose non-⊥ entries disagree on depth.
  std::size_t depth() const;
  /// `0`, `_` for ⊥, `[0,_]` for vectors.
  std::string str() const;

  friend std::strong_ordering operator<=>(const View& x, const View& y);
  friend bool operator==(const View& x, const View& y) {
    return (x <=> y) == std::strong_ordering::equal;
  }

 private:
  enum class Kind : unsigned char { bottom, input, vector };
  Kind kind_ = Kind::bottom;
  Value value_;
  std::vector<View> entries_;
};

/// (I, S): an input vector and a finite schedule of communication graphs.
struct Execution {
  Roster agents;
  std::vector<Value> input;
  std::vector<CommunicationGraph> schedule;

  std::size_t rounds() const noexcept { return schedule.size(); }
  /// Provenance string: same rendering as the product world this execution
  /// corresponds to.
  std::string str() const;
};

/// One local state per agent, in roster order.
using Configuration = std::vector<View>;

/// Validates the input arity/values and that every graph is over `agents`.
Execution make_execution(const Roster& agents, std::vector<Value> input,
                         std::vector<CommunicationGraph> schedule);

/// view(a, (I, S)) by direct recursion on the schedule.
View view(std::size_t agent, const Execution& e);
View view(std::string_view agent, const Execution& e);

/// g^r: configuration at the end of the execution, computed round by round
/// with the recurrence C_{r+1}(i)(j) = C_r(j) if a_j ∈ N⁻(a_i) ∪ {a_i}.
Configuration run_full_information(const Execution& e);

/// C(i) = C'(i). Throws invalid_argument if the configurations have
/// different sizes or round depths.
bool indistinguishable(const Configuration& c1, const Configuration& c2, std::size_t agent);

/// Views^k_j for every round k up to a bound: views agent j can hold after
/// k rounds of some execution of the adversary.
class ViewCatalog {
 public:
  ViewCatalog(const Adversary& adv, const InputSpace& inputs, std::size_t max_round);

  std::size_t max_round() const noexcept { return views_.empty() ? 0 : views_.size() - 1; }
  /// Sorted and duplicate-free.
  const std::vector<View>& views(std::size_t round, std::size_t agent) const;

 private:
  std::vector<std::vector<std::vector<View>>> views_;  // [round][agent]
};

/// φ_k(a, v): φ_0(a, v) = in_a_v; φ_{k+1}(a, view) conjoins, for each agent
/// j, K_a φ_k(j, view[j]) when view[j] is present and otherwise ¬K_a φ_k(j, v')
/// for every v' in Views^k_j. Throws invalid_argument if v's depth is not k.
Formula phi_formula(std::size_t round, const Roster& agents, std::size_t agent, const View& v,
                    const ViewCatalog& catalog);

/// Conjunction over all agents of φ_k(a_i, view(a_i, e)), k = e.rounds().
Formula execution_formula(const Execution& e, const ViewCatalog& catalog);

/// h^r: reads (I, [cp_1..cp_r]) off a world's provenance. Pattern ids are
/// resolved against `adv` when given, otherwise parsed with graph_from_id.
Execution world_to_execution(const WorldId& world, const Roster& agents,
                             const Adversary* adv = nullptr);

/// Every r-execution of the adversary: inputs × prefixes.
std::vector<Execution> enumerate_executions(const Adversary& adv, const InputSpace& inputs,
                                            std::size_t rounds);

}  // namespace cpm
