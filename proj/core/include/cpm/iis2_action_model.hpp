#pragma once

// Plain action models for two-agent IIS: a six-event family whose
// preconditions are rebuilt every round from a bipartition of the worlds.

#include <string>
#include <vector>

#include "cpm/epistemic_model.hpp"
#include "cpm/update_models.hpp"

namespace cpm {

struct Bipartition {
  std::vector<WorldIndex> first;
  std::vector<WorldIndex> second;
};

/// 2-colours the graph joining worlds that some agent cannot tell apart.
/// Within each connected component the least world id goes to `first`.
/// Throws not_bipartite on an odd cycle.
Bipartition bipartition_worlds(const EpistemicModel& model);

/// Events `{x}{y}_j`, `{x,y}_j`, `{y}{x}_j` for j = 1, 2 with precondition
/// φ_j, the disjunction of the identifying formulas of the worlds in part j.
/// x links `{x}{y}_1`-`{x}{y}_2` and `{x,y}_j`-`{y}{x}_j`; y links
/// `{y}{x}_1`-`{y}{x}_2` and `{x}{y}_j`-`{x,y}_j`. Worlds must come from the
/// IIS pipeline (initial model or earlier rounds of this family).
ActionModel iis2_binary_action_model(const EpistemicModel& model);

/// Drops the `_1` / `_2` part suffix from an event id of the family.
std::string strip_part_suffix(const std::string& event);

/// The world's provenance with part suffixes removed, i.e. the id the same
/// execution has under the pattern-model pipeline.
WorldId strip_part_suffixes(const WorldId& world);

}  // namespace cpm
