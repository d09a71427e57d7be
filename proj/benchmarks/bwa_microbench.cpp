#include <benchmark/benchmark.h>

#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "bwa/black_white_array.hpp"

namespace {

using Bwa = bwa::BlackWhiteArray<std::int32_t>;

std::vector<std::int32_t> values(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int32_t> dist(0, (1 << 30) - 1);
  std::vector<std::int32_t> out(n);
  for (auto& v : out) v = 2 * dist(rng);
  return out;
}

void BM_Insert(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto vals = values(n, 1);
  for (auto _ : state) {
    state.PauseTiming();
    Bwa bwa(static_cast<unsigned>(std::bit_width(n)));
    state.ResumeTiming();
    for (auto v : vals) bwa.insert(v);
    benchmark::DoNotOptimize(bwa.total());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Insert)->RangeMultiplier(4)->Range(1 << 10, 1 << 20);

// n values inserted; total = n is a power of two for the perfect case and
// n - 1 (every rank active) for the worst case.
template <bool Perfect>
void BM_SearchHit(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0)) - (Perfect ? 0 : 1);
  const auto vals = values(n, 2);
  Bwa bwa(static_cast<unsigned>(std::bit_width(n)));
  for (auto v : vals) bwa.insert(v);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bwa.search(vals[i]));
    if (++i == vals.size()) i = 0;
  }
}
BENCHMARK_TEMPLATE(BM_SearchHit, true)->RangeMultiplier(4)->Range(1 << 10, 1 << 20);
BENCHMARK_TEMPLATE(BM_SearchHit, false)->RangeMultiplier(4)->Range(1 << 10, 1 << 20);

void BM_ExtractMin(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto vals = values(n, 3);
  for (auto _ : state) {
    state.PauseTiming();
    Bwa bwa(static_cast<unsigned>(std::bit_width(n)));
    for (auto v : vals) bwa.insert(v);
    state.ResumeTiming();
    while (bwa.extract(bwa::Side::Min)) {
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_ExtractMin)->RangeMultiplier(4)->Range(1 << 10, 1 << 18);

}  // namespace

BENCHMARK_MAIN();
