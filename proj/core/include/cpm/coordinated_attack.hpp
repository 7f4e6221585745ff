#pragma once

// Two generals: a holds an attack preference, b has none and waits for a's
// message, which may be lost.

#include <memory>
#include <vector>

#include "cpm/adversary.hpp"
#include "cpm/epistemic_model.hpp"
#include "cpm/update_models.hpp"

namespace cpm {

struct CoordinatedAttack {
  /// Initial model: one world per preference of a; b relates all of them.
  EpistemicModel model;
  /// Star action model: `recv_<p>` (pre in_a_<p>) per preference plus
  /// `lost` (pre ⊤). a relates every pair of events; b only the identity.
  ActionModel action;
  /// Patterns `h` (delivered, b hears a) and `l` (lost), pre ⊤.
  CommPatternModel patterns;
  /// Oblivious adversary with graphs `h` = {a→b} and `l` = {}.
  Adversary adversary;
};

/// b's input domain is the single placeholder value `none`.
inline constexpr const char* kNoPreference = "none";

/// Throws invalid_argument for fewer than two preferences.
CoordinatedAttack build_coordinated_attack_fixture(const std::vector<Value>& preferences);

/// The delivered/lost pattern model; it does not depend on the preferences.
CommPatternModel coordinated_attack_patterns();

}  // namespace cpm
