#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "mpc/enumeration.hpp"
#include "mpc/expr.hpp"
#include "mpc/oracle.hpp"
#include "mpc/synthesis.hpp"
#include "mpc/tables.hpp"
#include "mpc/ternary_pattern.hpp"
#include "mpc/truth_table.hpp"

namespace {

using namespace mpc;

struct splitmix64 {
  uint64_t state;
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

const table_set& shared_tables(unsigned n) {
  if (n == 3) {
    static const table_set t = table_set::build(3);
    return t;
  }
  if (n == 4) {
    static const table_set t = table_set::build(4);
    return t;
  }
  static const table_set t = table_set::build(5);
  return t;
}

std::vector<truth_table> random_tables(unsigned n, std::size_t count,
                                       uint64_t seed) {
  const uint32_t mask = truth_table::zeros(n).table_mask();
  splitmix64 rng{seed};
  std::vector<truth_table> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    out.emplace_back(n, uint32_t(rng.next()) & mask);
  return out;
}

void BM_GenPrimitives(benchmark::State& state) {
  const unsigned n = unsigned(state.range(0));
  for (auto _ : state) {
    expr_arena arena;
    benchmark::DoNotOptimize(gen_primitives(n, arena));
  }
}
BENCHMARK(BM_GenPrimitives)->Arg(3)->Arg(4)->Arg(5);

void BM_BuildTables(benchmark::State& state) {
  const unsigned n = unsigned(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(table_set::build(n));
  state.SetLabel(n == 4 ? "10,260 depth-2 entries" : "216 depth-2 entries");
}
BENCHMARK(BM_BuildTables)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ExactLookup(benchmark::State& state) {
  const table_set& tables = shared_tables(4);
  const std::vector<truth_table> probes = random_tables(4, 1024, 1);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tables.find(probes[i]));
    i = (i + 1) & 1023;
  }
}
BENCHMARK(BM_ExactLookup);

void BM_QueryPattern(benchmark::State& state) {
  const table_set& tables = shared_tables(4);
  const ternary_pattern p = ternary_pattern::from_string("1xx0xx01xx10xxx0");
  for (auto _ : state) benchmark::DoNotOptimize(query_pattern(tables, p, {}));
  state.SetLabel("over 10,350 entries");
}
BENCHMARK(BM_QueryPattern)->Unit(benchmark::kMicrosecond);

void BM_Synth(benchmark::State& state) {
  const unsigned n = unsigned(state.range(0));
  const table_set& tables = shared_tables(n);
  const table_set* lower = n == 5 ? &shared_tables(4) : nullptr;
  const std::vector<truth_table> inputs = random_tables(n, 64, 2);
  std::size_t i = 0;
  for (auto _ : state) {
    synthesizer synth(tables, lower);
    benchmark::DoNotOptimize(synth.run(inputs[i]));
    i = (i + 1) & 63;
  }
}
BENCHMARK(BM_Synth)->Arg(3)->Arg(4)->Unit(benchmark::kMicrosecond);

void BM_ShannonSplit(benchmark::State& state) {
  const table_set& tables = shared_tables(5);
  const table_set& lower = shared_tables(4);
  const std::vector<truth_table> inputs = random_tables(5, 16, 3);
  std::size_t i = 0;
  for (auto _ : state) {
    synthesizer synth(tables, &lower);
    benchmark::DoNotOptimize(synth.shannon_detail(inputs[i]));
    i = (i + 1) & 15;
  }
}
BENCHMARK(BM_ShannonSplit)->Unit(benchmark::kMillisecond);

void BM_OracleBuild(benchmark::State& state) {
  for (auto _ : state) {
    const oracle reference(search_bound{});
    benchmark::DoNotOptimize(reference.exact_optimum(truth_table(3, 0x17)));
  }
}
BENCHMARK(BM_OracleBuild)->Unit(benchmark::kMillisecond);

void BM_EnumerateThree(benchmark::State& state) {
  const table_set& tables = shared_tables(3);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_all(tables, 1));
}
BENCHMARK(BM_EnumerateThree)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
