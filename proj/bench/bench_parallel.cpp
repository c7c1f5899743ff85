#include <benchmark/benchmark.h>

#include "tnl/injective.hpp"
#include "tnl/kernels.hpp"
#include "tnl/projective.hpp"
#include "tnl/sigma.hpp"

namespace {

tnl::Exec exec_of(const benchmark::State& state) {
  return state.range(0) ? tnl::Exec::parallel : tnl::Exec::serial;
}

tnl::Tensor sample(std::size_t d, std::size_t n, double p) {
  std::vector<tnl::NormedSpace> f(n, tnl::NormedSpace::ellp(d, p));
  return tnl::random_tensor(tnl::TensorSpace(f), 7);
}

void BM_Contract(benchmark::State& state) {
  const auto z = sample(6, 4, 2.0);
  const auto dims = z.space.dims();
  tnl::kernels::Factors fs(dims.size(), std::vector<double>(6, 0.5));
  for (auto _ : state) {
    if (state.range(0))
      benchmark::DoNotOptimize(tnl::kernels::contract(z.coeffs, dims, fs, 1));
    else
      benchmark::DoNotOptimize(tnl::kernels::contract_reference(z.coeffs, dims, fs, 1));
  }
}

void BM_ModeProduct(benchmark::State& state) {
  const auto z = sample(6, 4, 2.0);
  const auto dims = z.space.dims();
  std::vector<double> u(36, 0.25);
  for (auto _ : state) {
    if (state.range(0))
      benchmark::DoNotOptimize(tnl::kernels::mode_product(z.coeffs, dims, 2, u, 6));
    else
      benchmark::DoNotOptimize(tnl::kernels::mode_product_reference(z.coeffs, dims, 2, u, 6));
  }
}

void BM_EpsilonRestarts(benchmark::State& state) {
  const auto z = sample(3, 3, 2.0);
  tnl::EpsilonConfig cfg;
  cfg.exec = exec_of(state);
  cfg.certify = false;
  for (auto _ : state) benchmark::DoNotOptimize(tnl::epsilon_search(z, cfg).value);
}

void BM_ProjectiveRestarts(benchmark::State& state) {
  const auto z = sample(3, 2, 2.0);
  tnl::SearchConfig cfg;
  cfg.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(tnl::pi_upper(z, cfg).value);
}

void BM_SigmaRestarts(benchmark::State& state) {
  const auto z = sample(2, 2, 1.5);
  tnl::SigmaConfig cfg;
  cfg.search.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(tnl::sigma_p_upper(z, cfg).value);
}

}  // namespace

// Kernels: 0 is the straight reference loop, 1 the production kernel.
BENCHMARK(BM_Contract)->ArgName("kernel")->Arg(0)->Arg(1);
BENCHMARK(BM_ModeProduct)->ArgName("kernel")->Arg(0)->Arg(1);
BENCHMARK(BM_EpsilonRestarts)->ArgName("parallel")->Arg(0)->Arg(1);
BENCHMARK(BM_ProjectiveRestarts)->ArgName("parallel")->Arg(0)->Arg(1);
BENCHMARK(BM_SigmaRestarts)->ArgName("parallel")->Arg(0)->Arg(1);

BENCHMARK_MAIN();
