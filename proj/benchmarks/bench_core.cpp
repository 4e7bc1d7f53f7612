#include "brauer/isogeny.hpp"
#include "brauer/parity.hpp"
#include "brauer/regconst.hpp"

#include <benchmark/benchmark.h>

using namespace brauer;

namespace {

const char* const kGroups[] = {"S4", "A5", "Borel:7", "D2n:12", "S5"};

// Fresh group each iteration: subgroup classes are cached per instance.
void BM_SubgroupClasses(benchmark::State& state) {
  const char* name = kGroups[state.range(0)];
  for (auto _ : state) {
    const Group g = presets::by_name(name);
    benchmark::DoNotOptimize(g.subgroup_classes().size());
  }
  state.SetLabel(name);
}
BENCHMARK(BM_SubgroupClasses)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_RelationLattice(benchmark::State& state) {
  const char* name = kGroups[state.range(0)];
  for (auto _ : state) {
    const Group g = presets::by_name(name);
    benchmark::DoNotOptimize(relation_lattice(g).rows());
  }
  state.SetLabel(name);
}
BENCHMARK(BM_RelationLattice)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_A5Table(benchmark::State& state) {
  for (auto _ : state) {
    const Group a5 = presets::alternating(5);
    benchmark::DoNotOptimize(regconst_table(a5, standard_relations(a5), false).entries.size());
  }
}
BENCHMARK(BM_A5Table)->Unit(benchmark::kMillisecond);

void BM_BorelIsogeny(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_borel_f(p).closed_form_det);
}
BENCHMARK(BM_BorelIsogeny)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_BorelQParity(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const auto b = build_borel_f(p);
  for (auto _ : state) benchmark::DoNotOptimize(q_parity(b.f, p).terms.size());
}
BENCHMARK(BM_BorelQParity)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_BorelScenarios(benchmark::State& state) {
  const Group g = presets::borel(static_cast<int>(state.range(0)));
  const auto scenarios = generate_borel_scenarios(g);
  for (auto _ : state)
    for (const auto& s : scenarios) benchmark::DoNotOptimize(tamagawa_root_equivalence(g, s).agree);
  state.SetItemsProcessed(static_cast<long>(state.iterations() * scenarios.size()));
}
BENCHMARK(BM_BorelScenarios)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
