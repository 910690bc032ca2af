#include "ffgeom/census.hpp"
#include "ffgeom/dds.hpp"
#include "ffgeom/motions.hpp"
#include "ffgeom/pointset.hpp"
#include "ffgeom/specgraph.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <set>

using namespace ffgeom;

namespace {

std::vector<Point> random_points(std::uint32_t q, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::set<Point> s;
  while (s.size() < count) s.insert(Point{{static_cast<Residue>(rng() % q), static_cast<Residue>(rng() % q)}});
  return {s.begin(), s.end()};
}

void BM_NuDirect(benchmark::State& state) {
  const PrimeField f(static_cast<std::uint32_t>(state.range(0)));
  const auto pts = PointSet::full_grid(f, 2).points();
  for (auto _ : state) benchmark::DoNotOptimize(distance_distribution_direct(f, pts));
}
BENCHMARK(BM_NuDirect)->Arg(11)->Arg(31);

void BM_NuProduct(benchmark::State& state) {
  const PrimeField f(static_cast<std::uint32_t>(state.range(0)));
  const auto grid = PointSet::full_grid(f, 2);
  for (auto _ : state) benchmark::DoNotOptimize(distance_distribution_product(f, grid.factors()));
}
BENCHMARK(BM_NuProduct)->Arg(11)->Arg(31);

void BM_Census(benchmark::State& state) {
  const PrimeField f(7);
  const auto pts = PointSet::full_grid(f, 2).points();
  const auto k = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(simplex_census(f, pts, k));
}
BENCHMARK(BM_Census)->Arg(1)->Arg(2);

void BM_EnumerateOrthogonal(benchmark::State& state) {
  const PrimeField f(static_cast<std::uint32_t>(state.range(0)));
  const auto n = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_orthogonal(f, n));
}
BENCHMARK(BM_EnumerateOrthogonal)->Args({13, 2})->Args({7, 3});

void BM_SingularPruned(benchmark::State& state) {
  const PrimeField f(11);
  const auto pts = random_points(11, static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(singular_quadruples(f, pts));
}
BENCHMARK(BM_SingularPruned)->Arg(40)->Arg(100);

void BM_SingularNaive(benchmark::State& state) {
  const PrimeField f(11);
  const auto pts = random_points(11, static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(singular_quadruples_naive(f, pts));
}
BENCHMARK(BM_SingularNaive)->Arg(40)->Arg(100);

void BM_ErSpectrum(benchmark::State& state) {
  const PrimeField f(static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) {
    const auto er = build_er_graph(f, 3);
    benchmark::DoNotOptimize(second_eigenvalue(er.graph));
  }
}
BENCHMARK(BM_ErSpectrum)->Arg(7)->Arg(13);

}  // namespace

BENCHMARK_MAIN();
