#pragma once

// Graphviz renderings.

#include <string>

#include "cpm/adversary.hpp"
#include "cpm/epistemic_model.hpp"
#include "cpm/update_models.hpp"

namespace cpm {

/// Undirected graph: one node per world labeled with its id and true
/// propositions; one edge per pair of distinct worlds sharing a class for
/// some agent, labeled with those agents comma-joined.
std::string model_to_dot(const EpistemicModel& model);

/// Directed graph over the roster.
std::string graph_to_dot(const CommunicationGraph& graph);

/// Patterns as nodes (id, precondition, in-neighborhoods) with undirected
/// edges for the agents relating distinct patterns.
std::string cpm_to_dot(const CommPatternModel& patterns);

/// Events as nodes; agent relations between distinct events as edges.
std::string action_model_to_dot(const ActionModel& action);

}  // namespace cpm
