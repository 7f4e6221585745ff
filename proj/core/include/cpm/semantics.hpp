#pragma once

#include <string_view>
#include <vector>

#include "cpm/epistemic_model.hpp"
#include "cpm/formula.hpp"

namespace cpm {

/// Truth value of `f` at every world of `model`, indexed like model.worlds().
/// Throws invalid_formula if `f` mentions an agent or proposition the model
/// does not have.
std::vector<bool> truth_set(const EpistemicModel& model, const Formula& f);

/// M, w ⊨ f.
bool satisfies(const EpistemicModel& model, WorldIndex w, const Formula& f);
/// Throws invalid_argument if no world has this id.
bool satisfies(const EpistemicModel& model, std::string_view world, const Formula& f);

/// Throws invalid_formula on the first unknown agent or proposition.
void check_vocabulary(const EpistemicModel& model, const Formula& f);

}  // namespace cpm
