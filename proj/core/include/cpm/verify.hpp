#pragma once

// Executable check that the pattern-model sequence of an adversary reflects
// it: product worlds correspond one-to-one to configurations of the
// full-information protocol, with matching indistinguishability.

#include <cstddef>
#include <string>
#include <vector>

#include "cpm/adversary.hpp"
#include "cpm/epistemic_model.hpp"

namespace cpm {

struct VerifyOptions {
  /// Upper bound on |inputs| x |prefixes|, checked before any product.
  std::size_t world_cap = 20000;
  /// Debug switch: compute every round with ProductOptions::ignore_inneigh.
  bool break_odot = false;
  /// Counterexample pairs kept in the report; the count is always exact.
  std::size_t max_counterexamples = 20;
};

struct Counterexample {
  enum class Kind {
    /// Related in the model although the agent's views differ.
    extra_pair,
    /// Same view for the agent but unrelated in the model.
    missing_pair,
  };
  Agent agent;
  std::string world1;
  std::string world2;
  Kind kind;
};

std::string_view to_string(Counterexample::Kind kind);

struct ReflectionReport {
  bool pass = false;
  std::size_t rounds = 0;
  std::size_t worlds = 0;
  std::size_t executions = 0;
  std::size_t configs = 0;
  /// h^r: worlds onto r-executions.
  bool h_bijective = false;
  /// g^r: r-executions into configurations.
  bool g_injective = false;
  /// g^r agrees with per-agent view() on every execution.
  bool views_consistent = false;
  /// Unordered world pairs on which some agent's relation disagrees with
  /// configuration indistinguishability, summed over agents.
  std::size_t mismatched_pairs = 0;
  std::vector<Counterexample> counterexamples;
};

/// M^r = M⁰ ⊙ A¹ ⊙ ... ⊙ A^r for the adversary.
EpistemicModel build_round_model(const Adversary& adv, const InputSpace& inputs,
                                 std::size_t rounds, ProductOptions options = {});

/// |input vectors| x |r-prefixes|, saturating.
std::size_t estimated_worlds(const Adversary& adv, const InputSpace& inputs, std::size_t rounds);

/// Throws scale_limit when the estimate exceeds the cap and out_of_horizon
/// past a general adversary's horizon.
ReflectionReport verify_reflects(const Adversary& adv, const InputSpace& inputs,
                                 std::size_t rounds, const VerifyOptions& options = {});

}  // namespace cpm
