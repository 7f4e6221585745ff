#include <gtest/gtest.h>

#include <random>

#include "cpm/coordinated_attack.hpp"
#include "cpm/error.hpp"
#include "cpm/iis2_action_model.hpp"
#include "cpm/semantics.hpp"
#include "cpm/structure.hpp"
#include "cpm/update_models.hpp"
#include "support.hpp"

namespace cpm {
namespace {

using testing::ab;
using testing::binary;
using testing::related_ids;

Errc code_of(auto&& body) {
  try {
    body();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no cpm::Error thrown";
  return Errc::invalid_argument;
}

std::vector<std::string> ids_of(const EpistemicModel& m) {
  std::vector<std::string> out;
  for (const auto& w : m.worlds()) out.push_back(w.id.str());
  return out;
}

TEST(RestrictedProduct, CoordinatedAttackStarModel) {
  auto fx = build_coordinated_attack_fixture({"d", "n"});
  auto m1 = product_restricted(fx.model, fx.action);
  EXPECT_EQ(ids_of(m1), (std::vector<std::string>{"(d,none)|lost", "(d,none)|recv_d",
                                                  "(n,none)|lost", "(n,none)|recv_n"}));
  // b tells the deliveries apart and only confuses the two losses.
  EXPECT_EQ(related_ids(m1, 1), (testing::PairSet{{"(d,none)|lost", "(n,none)|lost"}}));
  EXPECT_EQ(related_ids(m1, 0), (testing::PairSet{{"(d,none)|lost", "(d,none)|recv_d"},
                                                  {"(n,none)|lost", "(n,none)|recv_n"}}));
}

TEST(RestrictedProduct, TwoEventModelWithoutInNeighborhoods) {
  auto fx = build_coordinated_attack_fixture({"d", "n"});
  auto plain = to_action_model(fx.patterns);
  auto m1 = product_restricted(fx.model, plain);
  ASSERT_EQ(m1.size(), 4u);
  // The flaw of the plain product: b confuses the two delivered worlds.
  EXPECT_TRUE(m1.related(1, m1.index_of("(d,none)|h"), m1.index_of("(n,none)|h")));
}

TEST(RestrictedProduct, NeutralEventKeepsTheModel) {
  auto m = build_initial_model(ab(), binary(2));
  ActionModel skip(ab(), {{"s", Formula::top()}}, {{{0, 0}}, {{0, 0}}});
  auto m1 = product_restricted(m, skip);
  ASSERT_EQ(m1.size(), m.size());
  for (std::size_t a = 0; a < 2; ++a) EXPECT_EQ(m1.relation(a), m.relation(a));
  for (WorldIndex w = 0; w < m.size(); ++w) {
    EXPECT_EQ(m1.world(w).id.str(), m.world(w).id.str() + "|s");
    EXPECT_EQ(m1.world(w).label, m.world(w).label);
  }
}

TEST(RestrictedProduct, ReportsEmptyAndNonS5Results) {
  auto m = build_initial_model(ab(), binary(2));
  ActionModel never(ab(), {{"x", Formula::bottom()}}, {{{0, 0}}, {{0, 0}}});
  EXPECT_EQ(code_of([&] { product_restricted(m, never); }), Errc::empty_product);
  // Missing reflexive pair for a.
  ActionModel irreflexive(ab(), {{"x", Formula::top()}}, {{}, {{0, 0}}});
  EXPECT_EQ(code_of([&] { product_restricted(m, irreflexive); }), Errc::non_s5_result);
  // Asymmetric pair for b.
  ActionModel asymmetric(ab(), {{"x", Formula::top()}, {"y", Formula::top()}},
                         {{{0, 0}, {1, 1}}, {{0, 0}, {1, 1}, {0, 1}}});
  EXPECT_EQ(code_of([&] { product_restricted(m, asymmetric); }), Errc::non_s5_result);
}

TEST(PatternProduct, CoordinatedAttackWithInNeighborhoods) {
  auto fx = build_coordinated_attack_fixture({"d", "n"});
  auto m1 = product_cpm(fx.model, fx.patterns);
  ASSERT_EQ(m1.size(), 4u);
  auto dh = m1.index_of("(d,none)|h"), nh = m1.index_of("(n,none)|h");
  auto dl = m1.index_of("(d,none)|l"), nl = m1.index_of("(n,none)|l");
  EXPECT_FALSE(m1.related(1, dh, nh));
  EXPECT_TRUE(m1.related(1, dl, nl));
  EXPECT_TRUE(m1.related(0, dh, dl));
  EXPECT_TRUE(m1.related(0, nh, nl));
  EXPECT_FALSE(m1.related(0, dh, nh));
  EXPECT_TRUE(satisfies(m1, "(n,none)|h", parse_formula("K[b] in_a_n")));
  EXPECT_FALSE(satisfies(m1, "(n,none)|l", parse_formula("K[b] in_a_n")));
}

TEST(PatternProduct, FirstIisRoundIsTheTwelveCycle) {
  auto m1 = product_cpm(build_initial_model(ab(), binary(2)), testing::iis2_patterns());
  EXPECT_EQ(m1, testing::twelve_cycle());
  EXPECT_TRUE(isomorphic(m1, testing::twelve_cycle()));
}

TEST(PatternProduct, IgnoringInNeighborhoodsAddsPairs) {
  auto m0 = build_initial_model(ab(), binary(2));
  auto broken = product_cpm(m0, testing::iis2_patterns(), {.ignore_inneigh = true});
  auto good = testing::twelve_cycle();
  ASSERT_EQ(broken.size(), 12u);
  EXPECT_FALSE(isomorphic(broken, good));
  for (std::size_t a = 0; a < 2; ++a) {
    auto extra = related_ids(broken, a);
    auto base = related_ids(good, a);
    EXPECT_TRUE(std::includes(extra.begin(), extra.end(), base.begin(), base.end()));
    EXPECT_GT(extra.size(), base.size());
  }
  // 12 pairs inside the two merged classes plus 2 from the third pattern;
  // the naive definition check below agrees.
  EXPECT_EQ(related_pairs(broken, 0), 14u);
  EXPECT_EQ(related_pairs(broken, 1), 14u);
}

TEST(PatternProduct, MatchesTheDefinitionOnIis) {
  // Independent check against the pairwise definition.
  auto m0 = build_initial_model(ab(), binary(2));
  auto cp = testing::iis2_patterns();
  std::vector<std::string> ids;
  std::vector<std::vector<bool>> enabled;
  std::vector<std::vector<std::vector<std::size_t>>> inneigh;
  for (const auto& p : cp.patterns()) {
    ids.push_back(p.id);
    enabled.emplace_back(m0.size(), true);
    inneigh.push_back(p.inneigh);
  }
  auto rel = to_action_model(cp);
  std::vector<ActionModel::Relation> rels{rel.relation(0), rel.relation(1)};
  for (bool with_inneigh : {true, false}) {
    auto naive = testing::naive_product(m0, ids, enabled, rels, with_inneigh ? &inneigh : nullptr);
    auto fast = product_cpm(m0, cp, {.ignore_inneigh = !with_inneigh});
    auto got = ids_of(fast);
    EXPECT_EQ(std::set<std::string>(got.begin(), got.end()), naive.worlds);
    for (std::size_t a = 0; a < 2; ++a) EXPECT_EQ(related_ids(fast, a), naive.related[a]);
  }
}

TEST(FromActionModel, DegenerateModelMatchesRestrictedProduct) {
  auto fx = build_coordinated_attack_fixture({"d", "n"});
  auto degenerate = from_action_model(fx.action);
  for (const auto& p : degenerate.patterns()) {
    for (const auto& in : p.inneigh) EXPECT_TRUE(in.empty());
  }
  EXPECT_EQ(product_restricted(fx.model, fx.action), product_cpm(fx.model, degenerate));
}

TEST(FromActionModel, SingleNeutralEvent) {
  ActionModel skip(ab(), {{"s", Formula::top()}}, {{{0, 0}}, {{0, 0}}});
  auto p = from_action_model(skip);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p.pattern(0).pre, Formula::top());
  EXPECT_TRUE(p.inneigh(0, 0).empty());
}

TEST(FromActionModel, RejectsNonEquivalenceNamingTheAgent) {
  ActionModel bad(ab(), {{"x", Formula::top()}, {"y", Formula::top()}},
                  {{{0, 0}, {1, 1}}, {{0, 0}, {1, 1}, {0, 1}}});
  try {
    from_action_model(bad);
    FAIL() << "accepted a non-symmetric relation";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_argument);
    EXPECT_NE(std::string(e.what()).find("'b'"), std::string::npos) << e.what();
  }
}

TEST(CommPatternModel, ValidatesInNeighborhoods) {
  EXPECT_EQ(code_of([] {
              CommPatternModel(ab(), {{"x", Formula::top(), {{0}, {}}}},
                               {Partition::identity(1), Partition::identity(1)});
            }),
            Errc::invalid_argument);
  EXPECT_EQ(code_of([] {
              CommPatternModel(ab(), {{"x", Formula::top(), {{}}}},
                               {Partition::identity(1), Partition::identity(1)});
            }),
            Errc::invalid_argument);
  EXPECT_EQ(code_of([] {
              CommPatternModel(ab(), {{"x", Formula::top(), {{}, {}}}, {"x", Formula::top(), {{}, {}}}},
                               {Partition::identity(2), Partition::identity(2)});
            }),
            Errc::invalid_argument);
}

TEST(ProductProperties, RandomInstancesAgreeWithTheDefinition) {
  std::mt19937 rng(41);
  for (int round = 0; round < 80; ++round) {
    auto m = testing::random_model(rng, 1 + round % 6);
    auto action = testing::random_action_model(rng, 4);
    auto degenerate = from_action_model(action);
    std::vector<std::string> ids;
    std::vector<std::vector<bool>> enabled;
    std::size_t expected_size = 0;
    for (const auto& e : action.events()) {
      ids.push_back(e.id);
      enabled.push_back(truth_set(m, e.pre));
      for (bool b : enabled.back()) expected_size += b;
    }
    if (expected_size == 0) {
      EXPECT_EQ(code_of([&] { product_restricted(m, action); }), Errc::empty_product);
      continue;
    }
    std::vector<ActionModel::Relation> rels{action.relation(0), action.relation(1)};
    auto naive = testing::naive_product(m, ids, enabled, rels, nullptr);
    auto plain = product_restricted(m, action);
    EXPECT_EQ(plain.size(), expected_size);
    EXPECT_EQ(plain, product_cpm(m, degenerate));
    for (std::size_t a = 0; a < 2; ++a) EXPECT_EQ(related_ids(plain, a), naive.related[a]);
    for (const auto& w : plain.worlds()) {
      auto base = WorldId(w.id.input(), {w.id.history()[0]});
      EXPECT_EQ(w.label, m.world(m.index_of(base.str())).label);
    }
  }
}

TEST(ProductProperties, PatternProductRefinesPlainProduct) {
  std::mt19937 rng(43);
  for (int round = 0; round < 60; ++round) {
    auto m = testing::random_model(rng, 1 + round % 6);
    auto action = testing::random_action_model(rng, 4);
    auto patterns = from_action_model(action);
    // Give every pattern random in-neighborhoods.
    std::vector<Pattern> ps = patterns.patterns();
    std::bernoulli_distribution coin(0.5);
    for (auto& p : ps) {
      p.pre = Formula::top();
      p.inneigh = {coin(rng) ? std::vector<std::size_t>{1} : std::vector<std::size_t>{},
                   coin(rng) ? std::vector<std::size_t>{0} : std::vector<std::size_t>{}};
    }
    CommPatternModel cpm(ab(), ps, {patterns.relation(0), patterns.relation(1)});
    auto fine = product_cpm(m, cpm);
    auto coarse = product_cpm(m, cpm, {.ignore_inneigh = true});
    ASSERT_EQ(fine.size(), m.size() * ps.size());
    for (std::size_t a = 0; a < 2; ++a) {
      EXPECT_TRUE(fine.relation(a).refines(coarse.relation(a)));
    }
  }
}

TEST(Bipartition, SquareSplitsAlongTheDiagonals) {
  auto m0 = build_initial_model(ab(), binary(2));
  auto parts = bipartition_worlds(m0);
  auto name = [&](const std::vector<WorldIndex>& ws) {
    std::vector<std::string> out;
    for (auto w : ws) out.push_back(m0.world(w).id.str());
    return out;
  };
  EXPECT_EQ(name(parts.first), (std::vector<std::string>{"(0,0)", "(1,1)"}));
  EXPECT_EQ(name(parts.second), (std::vector<std::string>{"(0,1)", "(1,0)"}));
}

TEST(Bipartition, TwelveCycleAlternates) {
  auto m1 = testing::twelve_cycle();
  auto parts = bipartition_worlds(m1);
  ASSERT_EQ(parts.first.size(), 6u);
  ASSERT_EQ(parts.second.size(), 6u);
  EXPECT_EQ(m1.world(parts.first.front()).id.str(), m1.world(0).id.str());
  for (const auto* part : {&parts.first, &parts.second}) {
    for (auto x : *part) {
      for (auto y : *part) {
        if (x == y) continue;
        EXPECT_FALSE(m1.related(0, x, y));
        EXPECT_FALSE(m1.related(1, x, y));
      }
    }
  }
}

TEST(Bipartition, SingleWorldAndOddCycle) {
  auto one = build_initial_model(ab(), InputSpace::uniform(2, {"v"}));
  auto parts = bipartition_worlds(one);
  EXPECT_EQ(parts.first.size(), 1u);
  EXPECT_TRUE(parts.second.empty());

  auto triangle = testing::model_from_edges(
      ab(), binary(2), {"(0,0)", "(0,1)", "(1,1)"},
      {{"a", {{"(0,0)", "(0,1)"}}}, {"b", {{"(0,1)", "(1,1)"}, {"(1,1)", "(0,0)"}}}});
  EXPECT_EQ(code_of([&] { bipartition_worlds(triangle); }), Errc::not_bipartite);
  EXPECT_EQ(code_of([&] { iis2_binary_action_model(triangle); }), Errc::not_bipartite);
}

TEST(Bipartition, ComponentsAreColouredSeparately) {
  auto m = testing::model_from_edges(ab(), binary(2), {"(0,0)", "(0,1)", "(1,0)", "(1,1)"},
                                     {{"a", {{"(1,0)", "(1,1)"}}}});
  auto parts = bipartition_worlds(m);
  EXPECT_EQ(parts.first, (std::vector<WorldIndex>{0, 1, 2}));
  EXPECT_EQ(parts.second, (std::vector<WorldIndex>{3}));
}

TEST(SixEventFamily, FirstRoundPreconditions) {
  auto m0 = build_initial_model(ab(), binary(2));
  auto action = iis2_binary_action_model(m0);
  ASSERT_EQ(action.size(), 6u);
  auto phi1 = parse_formula("(in_a_0 & in_b_0) | (in_a_1 & in_b_1)");
  auto phi2 = parse_formula("(in_a_0 & in_b_1) | (in_a_1 & in_b_0)");
  const std::vector<std::string> expected_ids{"{a}{b}_1", "{a,b}_1", "{b}{a}_1",
                                              "{a}{b}_2", "{a,b}_2", "{b}{a}_2"};
  for (std::size_t e = 0; e < 6; ++e) {
    EXPECT_EQ(action.event(e).id, expected_ids[e]);
    EXPECT_EQ(action.event(e).pre, e < 3 ? phi1 : phi2) << print_formula(action.event(e).pre);
  }
}

TEST(SixEventFamily, RelationsFormTheSixCycle) {
  auto action = iis2_binary_action_model(build_initial_model(ab(), binary(2)));
  auto id = [&](const char* s) { return *action.find(s); };
  auto linked = [&](std::size_t agent, const char* x, const char* y) {
    return action.related(agent, id(x), id(y)) && action.related(agent, id(y), id(x));
  };
  EXPECT_TRUE(linked(1, "{a}{b}_2", "{a,b}_2"));
  EXPECT_TRUE(linked(0, "{a,b}_2", "{b}{a}_2"));
  EXPECT_TRUE(linked(1, "{b}{a}_2", "{b}{a}_1"));
  EXPECT_TRUE(linked(0, "{b}{a}_1", "{a,b}_1"));
  EXPECT_TRUE(linked(1, "{a,b}_1", "{a}{b}_1"));
  EXPECT_TRUE(linked(0, "{a}{b}_1", "{a}{b}_2"));
  for (std::size_t a = 0; a < 2; ++a) {
    EXPECT_TRUE(action.is_equivalence(a));
    // Three 2-element classes: 6 reflexive plus 6 ordered off-diagonal pairs.
    EXPECT_EQ(action.relation(a).size(), 12u);
  }
}

// Runs both pipelines to `round` and compares the last models.
void expect_pipelines_agree(int round) {
  auto plain = build_initial_model(ab(), binary(2));
  auto odot = plain;
  for (int r = 1; r <= round; ++r) {
    plain = product_restricted(plain, iis2_binary_action_model(plain));
    odot = product_cpm(odot, testing::iis2_patterns());
  }
  ASSERT_EQ(plain.size(), odot.size());
  EXPECT_TRUE(isomorphic(plain, odot));
  // Stronger: after dropping the part suffixes the ids and relations agree.
  std::vector<World> worlds;
  for (const auto& w : plain.worlds()) worlds.push_back({strip_part_suffixes(w.id), w.label});
  EpistemicModel renamed(plain.agents(), plain.inputs(), std::move(worlds),
                         {plain.relation(0), plain.relation(1)});
  EXPECT_EQ(renamed, odot);
}

TEST(SixEventFamily, MatchesPatternPipelineRoundOne) { expect_pipelines_agree(1); }
TEST(SixEventFamily, MatchesPatternPipelineRoundTwo) { expect_pipelines_agree(2); }
// Round-three preconditions are built from φ_2; see PhiSoundness.RoundTwo.
TEST(SixEventFamily, MatchesPatternPipelineRoundThree) { expect_pipelines_agree(3); }

TEST(SixEventFamily, RejectsOtherRosters) {
  auto m = build_initial_model(testing::abc(), binary(3));
  EXPECT_EQ(code_of([&] { iis2_binary_action_model(m); }), Errc::invalid_argument);
  EXPECT_EQ(code_of([] { strip_part_suffix("{a}{b}"); }), Errc::invalid_argument);
  EXPECT_EQ(strip_part_suffix("{a}{b}_2"), "{a}{b}");
}

}  // namespace
}  // namespace cpm
