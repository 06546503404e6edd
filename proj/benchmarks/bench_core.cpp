#include <benchmark/benchmark.h>

#include "opg/continuation.hpp"
#include "opg/groups.hpp"
#include "opg/matrix.hpp"
#include "opg/smearing.hpp"

namespace {

void BM_eig_hermitian(benchmark::State& state) {
  opg::Rng rng(42);
  const std::size_t d = static_cast<std::size_t>(state.range(0));
  opg::ComplexMatrix a = opg::random_hermitian(d, rng, 2.0);
  for (auto _ : state) {
    auto eig = opg::eig_hermitian(a);
    benchmark::DoNotOptimize(eig.eigenvalues.data());
  }
}
BENCHMARK(BM_eig_hermitian)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_matrix_power(benchmark::State& state) {
  opg::Rng rng(42);
  const std::size_t d = static_cast<std::size_t>(state.range(0));
  opg::ImplementedGroup g(opg::random_hermitian(d, rng, 1.5));
  const opg::Complex w{0.3, -1.2};
  for (auto _ : state) {
    auto m = opg::matrix_power(g.implementer(), w);
    benchmark::DoNotOptimize(m.entries().data());
  }
}
BENCHMARK(BM_matrix_power)->Arg(8)->Arg(32);

void BM_smear_diagonal(benchmark::State& state) {
  opg::DiagonalGroup g = opg::DiagonalGroup::integer_model(16);
  opg::Rng rng(42);
  opg::Vec x = opg::random_element(g, rng);
  const double n = 1.0;
  opg::SmearingOperator r = opg::SmearingOperator::standard(n, g);
  for (auto _ : state) {
    opg::Vec s = opg::smear(r, g, x);
    benchmark::DoNotOptimize(s.data());
  }
}
BENCHMARK(BM_smear_diagonal);

void BM_smear_shifted_matrix(benchmark::State& state) {
  opg::Rng rng(42);
  opg::ImplementedGroup g(opg::random_hermitian(4, rng, 1.0));
  opg::ComplexMatrix x = opg::random_element(g, rng);
  const opg::Complex z{0.0, -1.0};
  opg::SmearingOperator r = opg::SmearingOperator::standard(1.0, g, z);
  for (auto _ : state) {
    auto s = opg::smear_shifted(r, g, z, x);
    benchmark::DoNotOptimize(s.entries().data());
  }
}
BENCHMARK(BM_smear_shifted_matrix);

void BM_counterexample_gap(benchmark::State& state) {
  auto f = opg::CounterexampleF::cubic(64, 64);
  for (auto _ : state) {
    double g = opg::counterexample_norm_gap(f, 20);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_counterexample_gap);

}  // namespace

BENCHMARK_MAIN();
