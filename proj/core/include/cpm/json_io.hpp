#pragma once

// JSON encodings of models, update models, adversaries and verifier reports.
// Output is deterministic: keys and array entries follow the library's
// canonical orders.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cpm/adversary.hpp"
#include "cpm/epistemic_model.hpp"
#include "cpm/update_models.hpp"
#include "cpm/verify.hpp"

namespace cpm {

using Json = nlohmann::ordered_json;
/// Non-fatal notes produced while loading (closure, dropped self-loops).
using Warnings = std::vector<std::string>;

/// `inputs` is a list when all agents share a domain, else an object keyed
/// by agent. Relations are partitions: lists of classes of world ids.
Json model_to_json(const EpistemicModel& model);
/// Classes that overlap are merged (with a warning) and unlisted worlds
/// become singletons, so pair lists are accepted too.
EpistemicModel model_from_json(const Json& j, Warnings* warnings = nullptr);

/// Relations as lists of [e1, e2] pairs, taken as given.
Json action_model_to_json(const ActionModel& action);
ActionModel action_model_from_json(const Json& j);

/// Relations as partitions (validated, never closed) plus `inneigh`.
Json cpm_to_json(const CommPatternModel& patterns);
CommPatternModel cpm_from_json(const Json& j);

Json graph_to_json(const CommunicationGraph& graph);
Json adversary_to_json(const Adversary& adv);
/// Self-loops are dropped with a warning.
Adversary adversary_from_json(const Json& j, Warnings* warnings = nullptr);

Json report_to_json(const ReflectionReport& report);

/// Two-space indentation and a trailing newline.
std::string dump(const Json& j);
/// Throws invalid_argument with the parser's message on malformed text.
Json parse_json(const std::string& text);

}  // namespace cpm
