#include <benchmark/benchmark.h>

#include "bhk/corpus.hpp"

namespace {

const std::vector<bhk::CorpusEntry>& corpus() {
  static const std::vector<bhk::CorpusEntry> entries = bhk::build_corpus({}, bhk::Execution::Parallel);
  return entries;
}

void BM_VerifySerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bhk::verify_corpus(corpus(), bhk::Execution::Serial));
}

void BM_VerifyParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bhk::verify_corpus(corpus(), bhk::Execution::Parallel));
}

void BM_BuildSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bhk::build_corpus({}, bhk::Execution::Serial));
}

void BM_BuildParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bhk::build_corpus({}, bhk::Execution::Parallel));
}

}  // namespace

BENCHMARK(BM_VerifySerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_VerifyParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BuildSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BuildParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
