// Acceptance suite: one PASS/FAIL line per criterion, each under its own
// time limit. Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "cpm/adversary.hpp"
#include "cpm/coordinated_attack.hpp"
#include "cpm/error.hpp"
#include "cpm/iis2_action_model.hpp"
#include "cpm/json_io.hpp"
#include "cpm/semantics.hpp"
#include "cpm/structure.hpp"
#include "cpm/update_models.hpp"
#include "cpm/verify.hpp"
#include "cpm/views.hpp"
#include "support.hpp"

namespace cpm {
namespace {

using testing::ab;
using testing::abc;
using testing::binary;

// Collects the first failed expectation of a criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failure_.empty()) failure_ = what;
  }
  bool ok() const { return failure_.empty(); }
  const std::string& failure() const { return failure_; }

 private:
  std::string failure_;
};

std::string str(std::size_t n) { return std::to_string(n); }

// 1. `init` yields the input square with its exact edge set.
void initial_square(Check& c) {
  std::ostringstream out, err;
  int code = cli::run({"init", "--agents", "a,b", "--inputs", "0,1"}, out, err);
  c.expect(code == 0, "init exited " + str(code) + ": " + err.str());
  if (code != 0) return;
  auto m = model_from_json(parse_json(out.str()));
  auto golden = testing::square_m0();
  c.expect(m.size() == 4, "world count " + str(m.size()));
  for (std::size_t a = 0; a < 2; ++a) {
    c.expect(testing::related_ids(m, a) == testing::related_ids(golden, a),
             "edge set of " + m.agents()[a]);
  }
  c.expect(m == golden, "model differs from the hand-built square");
  c.expect(isomorphic(m, golden).has_value(), "not isomorphic to the square");
}

// 2. One IIS round from the square is the labelled 12-cycle.
void twelve_cycle(Check& c) {
  auto m1 = product_cpm(build_initial_model(ab(), binary(2)), testing::iis2_patterns());
  auto golden = testing::twelve_cycle();
  c.expect(m1.size() == 12, "world count " + str(m1.size()));
  for (std::size_t a = 0; a < 2; ++a) {
    c.expect(testing::related_ids(m1, a) == testing::related_ids(golden, a),
             "edges of " + m1.agents()[a]);
  }
  c.expect(m1 == golden, "labels or ids differ from the hand-built cycle");
  c.expect(isomorphic(m1, golden).has_value(), "not isomorphic to the 12-cycle");
}

// 3. Without in-neighbourhood clauses the same product gains pairs.
void negative_control(Check& c) {
  auto m0 = build_initial_model(ab(), binary(2));
  auto broken = product_cpm(m0, testing::iis2_patterns(), {.ignore_inneigh = true});
  auto golden = testing::twelve_cycle();
  c.expect(!isomorphic(broken, golden).has_value(), "broken product is still the 12-cycle");
  std::size_t extra = 0;
  for (std::size_t a = 0; a < 2; ++a) {
    auto got = testing::related_ids(broken, a);
    auto want = testing::related_ids(golden, a);
    for (const auto& p : got) extra += !want.contains(p);
  }
  c.expect(extra >= 1, "no extra related pair reported");
  std::cout << "    extra related pairs under plain product: " << extra << "\n";
}

// 4. Coordinated attack: delivery is visible to b, invisible to a.
void coordinated_attack(Check& c) {
  auto fx = build_coordinated_attack_fixture({"d", "n"});
  auto m = product_cpm(fx.model, fx.patterns);
  c.expect(m.size() == 4, "world count " + str(m.size()));
  if (m.size() != 4) return;
  auto dh = m.index_of("(d,none)|h"), nh = m.index_of("(n,none)|h");
  auto dl = m.index_of("(d,none)|l"), nl = m.index_of("(n,none)|l");
  c.expect(!m.related(1, dh, nh), "b relates the delivered worlds");
  c.expect(m.related(0, dh, dl) && m.related(0, nh, nl), "a separates delivered from lost");
  c.expect(!m.related(0, dh, nh), "a confuses its own inputs");

  for (std::size_t x : {2u, 3u, 5u}) {
    std::vector<Value> prefs;
    for (std::size_t i = 0; i < x; ++i) prefs.push_back("p" + str(i));
    auto fx_x = build_coordinated_attack_fixture(prefs);
    auto mx = product_cpm(fx_x.model, fx_x.patterns);
    c.expect(mx.size() == 2 * x, "x=" + str(x) + ": world count " + str(mx.size()));
    for (std::size_t i = 0; i < x; ++i) {
      for (std::size_t j = 0; j < x; ++j) {
        auto wi = mx.index_of("(" + prefs[i] + ",none)|h");
        auto wj = mx.index_of("(" + prefs[j] + ",none)|h");
        c.expect(i == j || !mx.related(1, wi, wj), "x=" + str(x) + ": b relates delivered worlds");
        auto li = mx.index_of("(" + prefs[i] + ",none)|l");
        c.expect(mx.related(0, wi, li), "x=" + str(x) + ": a separates delivered from lost");
      }
    }
  }
}

// 5. The degenerate pattern model reproduces the plain product.
void degeneracy(Check& c) {
  std::mt19937 rng(2024);
  std::size_t compared = 0;
  for (int i = 0; i < 100; ++i) {
    auto m = testing::random_model(rng, 1 + i % 6);
    auto action = testing::random_action_model(rng, 4);
    bool empty = std::none_of(action.events().begin(), action.events().end(), [&](const Event& e) {
      auto t = truth_set(m, e.pre);
      return std::find(t.begin(), t.end(), true) != t.end();
    });
    if (empty) {
      // Both products must refuse alike.
      bool plain_threw = false, cpm_threw = false;
      try { product_restricted(m, action); } catch (const Error&) { plain_threw = true; }
      try { product_cpm(m, from_action_model(action)); } catch (const Error&) { cpm_threw = true; }
      c.expect(plain_threw && cpm_threw, "instance " + str(i) + ": empty product not rejected");
      continue;
    }
    auto plain = product_restricted(m, action);
    auto odot = product_cpm(m, from_action_model(action));
    c.expect(plain == odot, "instance " + str(i) + " differs");
    ++compared;
  }
  std::cout << "    non-empty instances compared: " << compared << " of 100\n";
}

// 6. Reflection holds on every fixture, with oracle-checked world counts.
void reflection(Check& c) {
  struct Case {
    std::string name;
    Adversary adv;
    InputSpace inputs;
    std::size_t rounds;
    std::size_t worlds;
  };
  auto fx = build_coordinated_attack_fixture({"d", "n"});
  std::vector<Case> cases{
      {"IIS n=2", iis_adversary(ab()), binary(2), 1, 12},
      {"IIS n=2", iis_adversary(ab()), binary(2), 2, 36},
      {"IIS n=2", iis_adversary(ab()), binary(2), 3, 108},
      {"IIS n=3", iis_adversary(abc()), binary(3), 1, 8 * 13},
      {"IIS n=3", iis_adversary(abc()), binary(3), 2, 8 * 13 * 13},
      {"attack", fx.adversary, fx.model.inputs(), 1, 4},
      {"attack", fx.adversary, fx.model.inputs(), 2, 8},
      {"attack", fx.adversary, fx.model.inputs(), 3, 16},
      {"general", testing::general_fixture(), binary(2), 1, 12},
      {"general", testing::general_fixture(), binary(2), 2, 16},
  };
  for (const auto& k : cases) {
    auto label = k.name + " r=" + str(k.rounds);
    // Oracle: |inputs| x |prefixes| by direct enumeration.
    auto oracle = k.inputs.vectors().size() * enumerate_prefixes(k.adv, k.rounds).size();
    c.expect(oracle == k.worlds, label + ": enumerated count " + str(oracle));
    auto report = verify_reflects(k.adv, k.inputs, k.rounds);
    c.expect(report.pass, label + ": " + str(report.mismatched_pairs) + " mismatched pairs");
    c.expect(report.worlds == k.worlds, label + ": " + str(report.worlds) + " worlds");
    std::cout << "    " << label << ": " << report.worlds << " worlds, "
              << (report.pass ? "reflects" : "FAILS") << "\n";
  }
  auto m2 = build_round_model(testing::general_fixture(), binary(2), 2);
  auto a2 = cpm_for_round(testing::general_fixture(), 2, binary(2));
  bool nontrivial = std::any_of(a2.patterns().begin(), a2.patterns().end(),
                                [](const Pattern& p) { return !(p.pre == Formula::top()); });
  c.expect(nontrivial, "general fixture has only trivial preconditions");
  (void)m2;
}

// 7. g and h are bijections, by exhaustive enumeration.
void bijections(Check& c) {
  for (const auto& roster : {ab(), abc()}) {
    auto adv = iis_adversary(roster);
    const auto n = roster.size();
    for (std::size_t r = 0; r <= 2; ++r) {
      auto label = "n=" + str(n) + " r=" + str(r);
      auto executions = enumerate_executions(adv, binary(n), r);
      std::set<std::string> exec_ids;
      std::set<Configuration> configs, assembled;
      for (const auto& e : executions) {
        exec_ids.insert(e.str());
        configs.insert(run_full_information(e));
        Configuration by_view;
        for (std::size_t i = 0; i < n; ++i) by_view.push_back(view(i, e));
        assembled.insert(std::move(by_view));
      }
      c.expect(exec_ids.size() == executions.size(), label + ": duplicate executions");
      c.expect(configs.size() == executions.size(), label + ": g not injective");
      c.expect(configs == assembled, label + ": g image differs from per-agent views");

      auto m = build_round_model(adv, binary(n), r);
      std::set<std::string> images;
      for (const auto& w : m.worlds()) images.insert(world_to_execution(w.id, roster, &adv).str());
      c.expect(images.size() == m.size(), label + ": h not injective");
      c.expect(images == exec_ids, label + ": h not onto");
    }
  }
}

// 8. The six-event family under the plain product tracks the pattern pipeline.
void six_event_family(Check& c) {
  auto m0 = build_initial_model(ab(), binary(2));
  auto first = iis2_binary_action_model(m0);
  auto phi1 = parse_formula("(in_a_0 & in_b_0) | (in_a_1 & in_b_1)");
  auto phi2 = parse_formula("(in_a_0 & in_b_1) | (in_a_1 & in_b_0)");
  c.expect(first.size() == 6, "event count " + str(first.size()));
  for (std::size_t e = 0; e < first.size(); ++e) {
    const auto& want = e < 3 ? phi1 : phi2;
    c.expect(print_formula(first.event(e).pre) == print_formula(want),
             first.event(e).id + ": " + print_formula(first.event(e).pre));
  }
  auto plain = m0, odot = m0;
  for (std::size_t r = 1; r <= 3; ++r) {
    plain = product_restricted(plain, iis2_binary_action_model(plain));
    odot = product_cpm(odot, testing::iis2_patterns());
    c.expect(isomorphic(plain, odot).has_value(), "round " + str(r) + " not isomorphic");
    std::cout << "    round " << r << ": " << plain.size() << " worlds\n";
  }
}

// 9. φ_k(a, v) holds exactly where a's view is v.
void phi_soundness(Check& c) {
  auto adv = iis_adversary(ab());
  for (std::size_t k = 0; k <= 2; ++k) {
    auto m = build_round_model(adv, binary(2), k);
    ViewCatalog catalog(adv, binary(2), k);
    for (std::size_t a = 0; a < 2; ++a) {
      std::vector<View> actual;
      for (const auto& w : m.worlds()) actual.push_back(view(a, world_to_execution(w.id, ab(), &adv)));
      for (const auto& v : catalog.views(k, a)) {
        auto t = truth_set(m, phi_formula(k, ab(), a, v, catalog));
        for (WorldIndex w = 0; w < m.size(); ++w) {
          c.expect(t[w] == (actual[w] == v),
                   "k=" + str(k) + " view " + v.str() + " at " + m.world(w).id.str());
        }
      }
    }
  }
}

// 10. Oblivious adversaries need a single stored pattern model.
void constant_space(Check& c) {
  auto fx = build_coordinated_attack_fixture({"d", "n"});
  std::vector<std::pair<Adversary, InputSpace>> fixtures{
      {iis_adversary(ab()), binary(2)}, {iis_adversary(abc()), binary(3)},
      {fx.adversary, fx.model.inputs()}};
  for (const auto& [adv, inputs] : fixtures) {
    auto first = cpm_for_round(adv, 1, inputs);
    for (std::size_t r = 2; r <= 5; ++r) {
      c.expect(cpm_for_round(adv, r, inputs) == first, "round " + str(r) + " differs");
    }
    CpmSequence seq(adv, inputs);
    auto* p1 = seq.at(1).get();
    for (std::size_t r = 2; r <= 5; ++r) c.expect(seq.at(r).get() == p1, "sequence stores a copy");
    c.expect(seq.stored_models() == 1, "stored models " + str(seq.stored_models()));
  }
}

struct Criterion {
  int number;
  const char* name;
  double limit_seconds;
  std::function<void(Check&)> body;
};

}  // namespace
}  // namespace cpm

int main() {
  using namespace cpm;
  const std::vector<Criterion> criteria{
      {1, "initial square", 1, initial_square},
      {2, "first IIS round is the 12-cycle", 1, twelve_cycle},
      {3, "plain product negative control", 1, negative_control},
      {4, "coordinated attack", 1, coordinated_attack},
      {5, "plain/pattern product degeneracy", 10, degeneracy},
      {6, "reflection property suite", 60, reflection},
      {7, "g and h bijections", 10, bijections},
      {8, "six-event family", 5, six_event_family},
      {9, "phi soundness", 10, phi_soundness},
      {10, "constant space for oblivious adversaries", 1, constant_space},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check check;
    auto start = std::chrono::steady_clock::now();
    try {
      cr.body(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (check.ok() && seconds > cr.limit_seconds) {
      check.expect(false, "took " + std::to_string(seconds) + " s");
    }
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3f s / %.0f s", seconds, cr.limit_seconds);
    std::cout << (check.ok() ? "PASS" : "FAIL") << "  " << cr.number << ". " << cr.name << " ("
              << timing << ")";
    if (!check.ok()) std::cout << ": " << check.failure();
    std::cout << std::endl;
    failed += !check.ok();
  }
  std::cout << (10 - failed) << "/10 criteria passed\n";
  return failed == 0 ? 0 : 1;
}
