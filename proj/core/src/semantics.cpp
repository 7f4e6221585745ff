#include "cpm/semantics.hpp"

#include "cpm/error.hpp"
#include "cpm/update_models.hpp"

namespace cpm {

void check_vocabulary(const EpistemicModel& model, const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::top:
    case K::bottom:
      return;
    case K::prop:
      if (!model.has_proposition(f.proposition())) {
        fail(Errc::invalid_formula, "unknown proposition " + f.proposition().name());
      }
      return;
    case K::know:
      if (!model.agents().contains(f.name())) {
        fail(Errc::invalid_formula, "unknown agent '" + f.name() + "' in K[" + f.name() + "]");
      }
      check_vocabulary(model, f.operand());
      return;
    case K::conjunction:
    case K::disjunction:
    case K::implication:
      check_vocabulary(model, f.lhs());
      check_vocabulary(model, f.rhs());
      return;
    case K::action_update:
      if (f.action_model()->agents() != model.agents()) {
        fail(Errc::invalid_formula, "action model roster differs from the model's");
      }
      check_vocabulary(model, f.operand());
      return;
    case K::pattern_update:
      if (f.pattern_model()->agents() != model.agents()) {
        fail(Errc::invalid_formula, "pattern model roster differs from the model's");
      }
      check_vocabulary(model, f.operand());
      return;
    case K::negation:
      check_vocabulary(model, f.operand());
      return;
  }
}

namespace {

// Preconditions that fail leave the update vacuously true; surviving worlds
// read their value from the product.
template <class Update>
std::vector<bool> update_clause(const EpistemicModel& model, const Update& update,
                                const std::string& step, const Formula& pre,
                                std::vector<bool> (*eval)(const EpistemicModel&, const Formula&),
                                EpistemicModel (*apply)(const EpistemicModel&, const Update&),
                                const Formula& body) {
  auto enabled = truth_set(model, pre);
  std::vector<bool> out(model.size(), true);
  bool any = false;
  for (bool b : enabled) any = any || b;
  if (!any) return out;
  auto next = apply(model, update);
  auto inner = eval(next, body);
  for (WorldIndex w = 0; w < model.size(); ++w) {
    if (!enabled[w]) continue;
    out[w] = inner[next.index_of(model.world(w).id.extended(step).str())];
  }
  return out;
}

EpistemicModel apply_action(const EpistemicModel& m, const ActionModel& a) {
  return product_restricted(m, a);
}

EpistemicModel apply_patterns(const EpistemicModel& m, const CommPatternModel& p) {
  return product_cpm(m, p);
}

std::vector<bool> evaluate(const EpistemicModel& model, const Formula& f) {
  using K = Formula::Kind;
  const std::size_t n = model.size();
  switch (f.kind()) {
    case K::top:
      return std::vector<bool>(n, true);
    case K::bottom:
      return std::vector<bool>(n, false);
    case K::prop: {
      std::vector<bool> out(n);
      for (WorldIndex w = 0; w < n; ++w) out[w] = model.holds(w, f.proposition());
      return out;
    }
    case K::negation: {
      auto out = evaluate(model, f.operand());
      out.flip();
      return out;
    }
    case K::conjunction:
    case K::disjunction:
    case K::implication: {
      auto lhs = evaluate(model, f.lhs());
      auto rhs = evaluate(model, f.rhs());
      for (WorldIndex w = 0; w < n; ++w) {
        if (f.kind() == K::conjunction) {
          lhs[w] = lhs[w] && rhs[w];
        } else if (f.kind() == K::disjunction) {
          lhs[w] = lhs[w] || rhs[w];
        } else {
          lhs[w] = !lhs[w] || rhs[w];
        }
      }
      return lhs;
    }
    case K::know: {
      auto inner = evaluate(model, f.operand());
      const auto& rel = model.relation(f.name());
      std::vector<bool> out(n);
      for (const auto& cls : rel.classes()) {
        bool all = true;
        for (auto w : cls) all = all && inner[w];
        for (auto w : cls) out[w] = all;
      }
      return out;
    }
    case K::action_update: {
      const auto& am = *f.action_model();
      const auto& pre = am.event(*am.find(f.name())).pre;
      return update_clause<ActionModel>(model, am, f.name(), pre, &evaluate, &apply_action,
                                        f.operand());
    }
    case K::pattern_update: {
      const auto& pm = *f.pattern_model();
      const auto& pre = pm.pattern(*pm.find(f.name())).pre;
      return update_clause<CommPatternModel>(model, pm, f.name(), pre, &evaluate,
                                             &apply_patterns, f.operand());
    }
  }
  fail(Errc::invalid_formula, "unhandled formula kind");
}

}  // namespace

std::vector<bool> truth_set(const EpistemicModel& model, const Formula& f) {
  check_vocabulary(model, f);
  return evaluate(model, f);
}

bool satisfies(const EpistemicModel& model, WorldIndex w, const Formula& f) {
  if (w >= model.size()) fail(Errc::invalid_argument, "world index out of range");
  return truth_set(model, f)[w];
}

bool satisfies(const EpistemicModel& model, std::string_view world, const Formula& f) {
  return satisfies(model, model.index_of(world), f);
}

}  // namespace cpm
