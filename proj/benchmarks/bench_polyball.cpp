#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "polyball/berezin.hpp"
#include "polyball/fock.hpp"
#include "polyball/naimark.hpp"
#include "polyball/pluriharm.hpp"
#include "polyball/sampling.hpp"
#include "polyball/toeplitz.hpp"

using namespace polyball;

namespace {

const std::vector<int> kShape{2, 2};

std::vector<int> degrees(const benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  return {d, d};
}

PolyballPoint sample_point(double max_norm, bool nilpotent = false) {
  Rng rng(1);
  PointOptions opt;
  opt.max_row_norm = max_norm;
  opt.nilpotent = nilpotent;
  return random_point(rng, kShape, opt);
}

}  // namespace

static void BM_CreationMatrix(benchmark::State& state) {
  const auto t = make_truncation(kShape, degrees(state));
  for (auto _ : state) benchmark::DoNotOptimize(creation_matrix(*t, Side::left, 1, 2));
  state.counters["dim"] = static_cast<double>(t->dim());
}
BENCHMARK(BM_CreationMatrix)->DenseRange(2, 5);

static void BM_SymbolOperator(benchmark::State& state) {
  const auto t = make_truncation(kShape, degrees(state));
  Rng rng(2);
  SymbolOptions opt;
  opt.max_total = 3;
  const auto sym = random_symbol(rng, kShape, opt);
  for (auto _ : state) benchmark::DoNotOptimize(symbol_operator(sym, t, 0.7));
}
BENCHMARK(BM_SymbolOperator)->DenseRange(2, 5);

static void BM_ToeplitzTest(benchmark::State& state) {
  const auto t = make_truncation(kShape, degrees(state));
  Rng rng(3);
  const auto op = symbol_operator(random_symbol(rng, kShape), t);
  for (auto _ : state) benchmark::DoNotOptimize(is_k_multi_toeplitz(op));
}
BENCHMARK(BM_ToeplitzTest)->DenseRange(2, 4);

static void BM_BerezinKernel(benchmark::State& state) {
  const auto t = make_truncation(kShape, degrees(state));
  const auto x = sample_point(0.6);
  for (auto _ : state) benchmark::DoNotOptimize(berezin_kernel(x, t));
}
BENCHMARK(BM_BerezinKernel)->DenseRange(2, 5);

static void BM_BerezinTransform(benchmark::State& state) {
  const auto t = make_truncation(kShape, degrees(state));
  const auto x = sample_point(0.6);
  const auto kernel = berezin_kernel(x, t);
  const auto g = word_operator(t, MultiWord::in_factor(kShape, 1, Word(2, {1})), MultiWord::identity(kShape),
                               Mat::Identity(1, 1));
  for (auto _ : state) benchmark::DoNotOptimize(berezin_transform(g, kernel));
}
BENCHMARK(BM_BerezinTransform)->DenseRange(2, 5);

static void BM_PoissonKernel(benchmark::State& state) {
  const auto t = make_truncation(kShape, degrees(state));
  const auto x = sample_point(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(poisson_kernel(x, t));
}
BENCHMARK(BM_PoissonKernel)->DenseRange(2, 3);

static void BM_NaimarkDilate(benchmark::State& state) {
  const int len = static_cast<int>(state.range(0));
  Rng rng(4);
  const auto k = kernel_from_generator(Side::left, kShape, 1, random_psd_left_generator(rng, kShape, 1, 2 * len), len);
  for (auto _ : state) benchmark::DoNotOptimize(naimark_dilate(k));
  state.counters["words"] = static_cast<double>(k.words().size());
}
BENCHMARK(BM_NaimarkDilate)->DenseRange(2, 4);

static void BM_SchurPositivity(benchmark::State& state) {
  const auto t = make_truncation(kShape, degrees(state));
  Rng rng(5);
  SymbolOptions opt;
  opt.hermitian = true;
  const auto f = random_symbol(rng, kShape, opt);
  const std::vector<double> grid{0.3, 0.6, 0.9};
  for (auto _ : state) benchmark::DoNotOptimize(schur_positivity(f, grid, t));
}
BENCHMARK(BM_SchurPositivity)->DenseRange(2, 3);

static void BM_PoissonPointMass(benchmark::State& state) {
  const double r = 0.5;
  const auto mu = CbMapData::point_mass({{1.0}, {1.0}});
  const auto x = PolyballPoint::scalars({{r}, {r}});
  SeriesOptions opt;
  opt.tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(poisson_transform(mu, x, opt));
}
BENCHMARK(BM_PoissonPointMass)->DenseRange(4, 12, 4);

static void BM_SpectralRadius(benchmark::State& state) {
  const auto x = sample_point(0.8);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_radius(x, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_SpectralRadius)->RangeMultiplier(2)->Range(4, 16);

BENCHMARK_MAIN();
