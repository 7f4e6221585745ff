#include "cpm/verify.hpp"

#include <map>
#include <set>
#include <utility>

#include "cpm/error.hpp"
#include "cpm/views.hpp"

namespace cpm {

std::string_view to_string(Counterexample::Kind kind) {
  return kind == Counterexample::Kind::extra_pair ? "extra-pair" : "missing-pair";
}

std::size_t estimated_worlds(const Adversary& adv, const InputSpace& inputs, std::size_t rounds) {
  const auto vectors = inputs.vector_count();
  const auto prefixes = count_prefixes(adv, rounds);
  if (prefixes != 0 && vectors > static_cast<std::size_t>(-1) / prefixes) {
    return static_cast<std::size_t>(-1);
  }
  return vectors * prefixes;
}

EpistemicModel build_round_model(const Adversary& adv, const InputSpace& inputs,
                                 std::size_t rounds, ProductOptions options) {
  auto model = build_initial_model(adv.agents(), inputs);
  if (rounds == 0) return model;
  CpmSequence sequence(adv, inputs);
  for (std::size_t i = 1; i <= rounds; ++i) {
    model = product_cpm(model, *sequence.at(i), options);
  }
  return model;
}

namespace {

using ExecutionKey = std::pair<std::vector<Value>, std::vector<std::string>>;

ExecutionKey key_of(const Execution& e) {
  std::vector<std::string> steps;
  for (const auto& g : e.schedule) steps.push_back(g.id());
  return {e.input, std::move(steps)};
}

// Compares one agent's relation with view equality and records mismatches.
void compare_agent(const EpistemicModel& model, std::size_t agent,
                   const std::vector<Configuration>& configs, const VerifyOptions& options,
                   ReflectionReport& report) {
  const auto n = model.size();
  std::map<View, std::size_t> view_ids;
  std::vector<std::size_t> view_class(n);
  for (WorldIndex w = 0; w < n; ++w) {
    view_class[w] = view_ids.try_emplace(configs[w][agent], view_ids.size()).first->second;
  }
  const auto& rel = model.relation(agent);
  auto by_view = Partition::from_raw(view_class);
  if (by_view == rel) return;

  // Pairs related on one side only: C(|class|,2) minus C(|intersection|,2).
  auto pairs = [](std::size_t k) { return k * (k - 1) / 2; };
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> overlap;
  for (WorldIndex w = 0; w < n; ++w) ++overlap[{rel.class_of(w), by_view.class_of(w)}];
  std::size_t shared = 0;
  for (const auto& [k, count] : overlap) shared += pairs(count);
  std::size_t model_pairs = 0, view_pairs = 0;
  for (const auto& c : rel.classes()) model_pairs += pairs(c.size());
  for (const auto& c : by_view.classes()) view_pairs += pairs(c.size());
  report.mismatched_pairs += (model_pairs - shared) + (view_pairs - shared);

  auto record = [&](WorldIndex w1, WorldIndex w2, Counterexample::Kind kind) {
    if (report.counterexamples.size() >= options.max_counterexamples) return false;
    report.counterexamples.push_back({model.agents()[agent], model.world(w1).id.str(),
                                      model.world(w2).id.str(), kind});
    return true;
  };
  for (const auto& cls : rel.classes()) {
    for (std::size_t i = 0; i < cls.size(); ++i) {
      for (std::size_t j = i + 1; j < cls.size(); ++j) {
        if (view_class[cls[i]] != view_class[cls[j]] &&
            !record(cls[i], cls[j], Counterexample::Kind::extra_pair)) {
          return;
        }
      }
    }
  }
  for (const auto& cls : by_view.classes()) {
    for (std::size_t i = 0; i < cls.size(); ++i) {
      for (std::size_t j = i + 1; j < cls.size(); ++j) {
        if (!rel.same(cls[i], cls[j]) &&
            !record(cls[i], cls[j], Counterexample::Kind::missing_pair)) {
          return;
        }
      }
    }
  }
}

}  // namespace

ReflectionReport verify_reflects(const Adversary& adv, const InputSpace& inputs,
                                 std::size_t rounds, const VerifyOptions& options) {
  const auto estimate = estimated_worlds(adv, inputs, rounds);
  if (estimate > options.world_cap) {
    fail(Errc::scale_limit, "round " + std::to_string(rounds) + " would need " +
                                std::to_string(estimate) + " worlds, above the cap of " +
                                std::to_string(options.world_cap));
  }
  ReflectionReport report;
  report.rounds = rounds;
  const auto model =
      build_round_model(adv, inputs, rounds, ProductOptions{.ignore_inneigh = options.break_odot});
  report.worlds = model.size();
  const auto& roster = adv.agents();

  // Ground truth: every r-execution and its configuration.
  const auto executions = enumerate_executions(adv, inputs, rounds);
  report.executions = executions.size();
  std::set<ExecutionKey> execution_keys;
  std::set<Configuration> all_configs;
  report.views_consistent = true;
  for (const auto& e : executions) {
    execution_keys.insert(key_of(e));
    auto config = run_full_information(e);
    for (std::size_t i = 0; i < roster.size(); ++i) {
      if (!(config[i] == view(i, e))) report.views_consistent = false;
    }
    all_configs.insert(std::move(config));
  }
  report.configs = all_configs.size();
  report.g_injective = all_configs.size() == executions.size();

  // h^r read off provenance, then f^r = g^r ∘ h^r.
  std::set<ExecutionKey> hit;
  std::vector<Configuration> f(model.size());
  bool h_ok = true;
  for (WorldIndex w = 0; w < model.size(); ++w) {
    auto e = world_to_execution(model.world(w).id, roster, &adv);
    auto key = key_of(e);
    if (!execution_keys.contains(key) || !hit.insert(std::move(key)).second) h_ok = false;
    f[w] = run_full_information(e);
  }
  report.h_bijective = h_ok && hit.size() == execution_keys.size();

  for (std::size_t a = 0; a < roster.size(); ++a) compare_agent(model, a, f, options, report);

  report.pass = report.h_bijective && report.g_injective && report.views_consistent &&
                report.mismatched_pairs == 0;
  return report;
}

}  // namespace cpm
