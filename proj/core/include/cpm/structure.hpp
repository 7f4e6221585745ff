#pragma once

// Structural comparison of epistemic models.

#include <optional>
#include <vector>

#include "cpm/epistemic_model.hpp"

namespace cpm {

/// Quotient under the coarsest bisimulation that respects labels and every
/// agent's relation. Each block is represented by its least world id.
EpistemicModel bisimulation_quotient(const EpistemicModel& model);

/// Map from m1's world indices to m2's.
using Isomorphism = std::vector<WorldIndex>;

/// A bijection preserving labels and every agent's relation (agents matched
/// by name), or nullopt. Backtracking with colour-refinement pruning; meant
/// for models of up to a few hundred worlds.
std::optional<Isomorphism> isomorphic(const EpistemicModel& m1, const EpistemicModel& m2);

/// Number of unordered pairs of distinct worlds related by `agent`.
std::size_t related_pairs(const EpistemicModel& model, std::size_t agent);

}  // namespace cpm
