#include <benchmark/benchmark.h>

#include <vector>

#include "dbseq/discrepancy.hpp"
#include "dbseq/generator.hpp"
#include "dbseq/verifier.hpp"

namespace {

const dbseq::Word& higher_sequence() {
  static const dbseq::Word w = dbseq::generate_prefer_higher(4, 11).digits;
  return w;
}

void BM_CensusSerial(benchmark::State& state) {
  const auto& w = higher_sequence();
  for (auto _ : state) benchmark::DoNotOptimize(dbseq::window_census_serial(w.digits(), 4, 11));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(w.size()));
}
BENCHMARK(BM_CensusSerial)->Unit(benchmark::kMillisecond);

void BM_CensusParallel(benchmark::State& state) {
  const auto& w = higher_sequence();
  for (auto _ : state) benchmark::DoNotOptimize(dbseq::window_census(w.digits(), 4, 11));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(w.size()));
}
BENCHMARK(BM_CensusParallel)->Unit(benchmark::kMillisecond);

const std::vector<unsigned> kQs{2, 3, 4, 5};
const std::vector<unsigned> kNs{2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};

void BM_TableSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(dbseq::discrepancy_table_serial(kQs, kNs, 600000));
}
BENCHMARK(BM_TableSerial)->Unit(benchmark::kMillisecond);

void BM_TableParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(dbseq::discrepancy_table(kQs, kNs, 600000));
}
BENCHMARK(BM_TableParallel)->Unit(benchmark::kMillisecond);

void BM_GeneratePreferOpposite(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dbseq::generate_prefer_opposite(3, 1, n));
}
BENCHMARK(BM_GeneratePreferOpposite)->DenseRange(8, 14, 2)->Unit(benchmark::kMillisecond);

void BM_Discrepancy(benchmark::State& state) {
  const auto& w = higher_sequence();
  for (auto _ : state) benchmark::DoNotOptimize(dbseq::discrepancy_value(w.digits(), 4));
}
BENCHMARK(BM_Discrepancy)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
