#include <benchmark/benchmark.h>

#include "cpm/adversary.hpp"
#include "cpm/structure.hpp"
#include "cpm/update_models.hpp"
#include "cpm/verify.hpp"

namespace {

using namespace cpm;

InputSpace binary(std::size_t n) { return InputSpace::uniform(n, {"0", "1"}); }

void BM_IisRoundProduct(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto rounds = static_cast<std::size_t>(state.range(1));
  std::vector<Agent> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  auto adv = iis_adversary(Roster(names));
  auto before = build_round_model(adv, binary(n), rounds - 1);
  auto patterns = cpm_for_round(adv, rounds, binary(n));
  for (auto _ : state) benchmark::DoNotOptimize(product_cpm(before, patterns));
  state.counters["worlds"] = static_cast<double>(before.size() * patterns.size());
}
BENCHMARK(BM_IisRoundProduct)->Args({2, 3})->Args({2, 6})->Args({3, 2})->Args({4, 1});

void BM_Verify(benchmark::State& state) {
  const auto rounds = static_cast<std::size_t>(state.range(0));
  auto adv = iis_adversary(Roster({"a", "b"}));
  for (auto _ : state) benchmark::DoNotOptimize(verify_reflects(adv, binary(2), rounds));
}
BENCHMARK(BM_Verify)->DenseRange(1, 5);

void BM_Isomorphic(benchmark::State& state) {
  auto adv = iis_adversary(Roster({"a", "b"}));
  auto m = build_round_model(adv, binary(2), static_cast<std::size_t>(state.range(0)));
  // Renamed ids sort in reverse, so the witness is not the identity.
  std::vector<World> worlds;
  for (WorldIndex i = 0; i < m.size(); ++i) {
    auto rank = std::to_string(100000 + m.size() - i);
    worlds.push_back({WorldId(m.world(i).id.input(), {"w" + rank}), m.world(i).label});
  }
  EpistemicModel shuffled(m.agents(), m.inputs(), std::move(worlds), {m.relation(0), m.relation(1)});
  for (auto _ : state) benchmark::DoNotOptimize(isomorphic(m, shuffled));
}
BENCHMARK(BM_Isomorphic)->DenseRange(1, 4);

}  // namespace

BENCHMARK_MAIN();
