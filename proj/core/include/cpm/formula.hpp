#pragma once

// Formulas over in_<agent>_<value> atoms with boolean connectives, the
// knowledge modality K[a] and the two update modalities.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cpm/epistemic_model.hpp"

namespace cpm {

class ActionModel;
class CommPatternModel;

class Formula {
 public:
  enum class Kind { top, bottom, prop, negation, conjunction, disjunction, implication, know,
                    action_update, pattern_update };

  /// Default-constructed formulas are `true`.
  Formula();

  static Formula top();
  static Formula bottom();
  static Formula prop(Proposition p);
  static Formula prop(Agent agent, Value value);
  static Formula negation(Formula f);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula know(Agent agent, Formula f);
  /// [(A, e)] f
  static Formula action_update(std::shared_ptr<const ActionModel> model, std::string event,
                               Formula f);
  /// [(P, cp)] f
  static Formula pattern_update(std::shared_ptr<const CommPatternModel> model,
                                std::string pattern, Formula f);

  /// Left-folded; empty input yields top / bottom respectively.
  static Formula all_of(const std::vector<Formula>& fs);
  static Formula any_of(const std::vector<Formula>& fs);

  Kind kind() const noexcept;
  const Proposition& proposition() const;
  /// Agent of K[a], or the event/pattern id of an update.
  const std::string& name() const;
  /// Sole operand of not/K/updates, or left operand of binary connectives.
  const Formula& lhs() const;
  const Formula& rhs() const;
  const Formula& operand() const { return lhs(); }
  const std::shared_ptr<const ActionModel>& action_model() const;
  const std::shared_ptr<const CommPatternModel>& pattern_model() const;

  /// Node count.
  std::size_t size() const;
  /// Nesting depth of K and update operators.
  std::size_t modal_depth() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Grammar (ASCII):
///   f ::= "true" | "false" | PROP | "~" f | f "&" f | f "|" f | f "->" f
///       | "K[" AGENT "]" f | "(" f ")"
/// with precedence ~, K > & > | > ->, binary operators left-associative.
/// Throws ParseError with the byte offset of the offending token.
Formula parse_formula(std::string_view text);

/// Inverse of parse_formula with minimal parentheses. Update modalities
/// print as `[A:e]` / `[P:cp]`, which the parser rejects.
std::string print_formula(const Formula& f);

}  // namespace cpm
