#include "dbcoh/mutate.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace dbcoh;

namespace {

QMatrix random_matrix(std::size_t n, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> c(-5, 5);
  std::vector<std::tuple<std::size_t, std::size_t, Rational>> t;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k)
      if (u(rng) < density) t.emplace_back(r, k, Rational(c(rng)));
  return QMatrix::from_triplets(n, n, std::move(t));
}

void BM_Rank(benchmark::State& state) {
  const QMatrix m = random_matrix(static_cast<std::size_t>(state.range(0)), 0.1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_Rank)->Arg(32)->Arg(64)->Arg(128);

void BM_LineCohomology(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(line_cohomology(m, -m - 3, CohomMode::computed));
}
BENCHMARK(BM_LineCohomology)->DenseRange(1, 3);

void BM_WindowModel(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const DObject e = DObject::line_bundle(m, -2 * m);
  for (auto _ : state) benchmark::DoNotOptimize(window_model(e, 0));
}
BENCHMARK(BM_WindowModel)->DenseRange(1, 3);

void BM_HomChainDims(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const DObject p = point_complex(RPoint(std::vector<Rational>(static_cast<std::size_t>(m) + 1, 1)));
  for (auto _ : state) benchmark::DoNotOptimize(hom_chain_dims(p, p));
}
BENCHMARK(BM_HomChainDims)->DenseRange(1, 3);

void BM_LeftMutation(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const DObject a = DObject::line_bundle(m, 0), b = DObject::line_bundle(m, 1);
  for (auto _ : state) benchmark::DoNotOptimize(left_mutation(a, b));
}
BENCHMARK(BM_LeftMutation)->DenseRange(1, 3);

void BM_BraidWord(benchmark::State& state) {
  const BraidWord w = random_braid_word(3, static_cast<std::size_t>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(apply_braid(beilinson(2), w, false));
}
BENCHMARK(BM_BraidWord)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
