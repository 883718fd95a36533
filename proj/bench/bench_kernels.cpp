#include <benchmark/benchmark.h>

#include <cmath>

#include "limsup/generators.hpp"
#include "limsup/kernels.hpp"

using namespace limsup;
namespace k = limsup::kernels;

namespace {

std::vector<std::uint64_t> dyadic_edges(int levels) {
  std::vector<std::uint64_t> e{1};
  for (int j = 1; j <= levels; ++j) e.push_back(std::uint64_t(1) << j);
  return e;
}

const k::TermFn kTerm = [](std::uint64_t q) { return std::pow(static_cast<double>(q), -1.5); };

template <auto Fn>
void BM_BlockSums(benchmark::State& state) {
  const auto edges = dyadic_edges(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(kTerm, edges));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(edges.back()));
}

k::EnergyProblem interval_problem() {
  k::EnergyProblem p;
  p.k = 1;
  p.center = {0.5};
  p.half_width = {0.5};
  p.s = 0.5;
  return p;
}

template <auto Fn>
void BM_Energy(benchmark::State& state) {
  const auto p = interval_problem();
  const CounterRng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(p, state.range(0), rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Fn>
void BM_Coverage(benchmark::State& state) {
  const auto cover = random_cover(RadiiRule::power(1, 0.05), 5000, 2, 3).cover;
  const CounterRng rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(cover, state.range(0), rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Fn>
void BM_LowerOrder(benchmark::State& state) {
  const auto psi = ApproxFunction::piecewise(4, 33.0 / 7, IndexFamily::polynomial_ceil(4));
  std::vector<std::uint64_t> qs(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < qs.size(); ++i) qs[i] = 1024 + 3 * i;
  for (auto _ : state) benchmark::DoNotOptimize(Fn(psi, qs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_BlockSums<k::serial::block_sums>)->Name("block_sums/serial")->Arg(20);
BENCHMARK(BM_BlockSums<k::omp::block_sums>)->Name("block_sums/omp")->Arg(20);
BENCHMARK(BM_Energy<k::serial::energy>)->Name("energy/serial")->Arg(1 << 18);
BENCHMARK(BM_Energy<k::omp::energy>)->Name("energy/omp")->Arg(1 << 18);
BENCHMARK(BM_Coverage<k::serial::coverage>)->Name("coverage/serial")->Arg(1 << 18);
BENCHMARK(BM_Coverage<k::omp::coverage>)->Name("coverage/omp")->Arg(1 << 18);
BENCHMARK(BM_LowerOrder<k::serial::lower_order_min>)->Name("lower_order_min/serial")->Arg(1 << 20);
BENCHMARK(BM_LowerOrder<k::omp::lower_order_min>)->Name("lower_order_min/omp")->Arg(1 << 20);

BENCHMARK_MAIN();
