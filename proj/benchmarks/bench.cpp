#include <benchmark/benchmark.h>

#include "gerst/deformation.hpp"
#include "gerst/hochschild.hpp"
#include "gerst/suites.hpp"

using namespace gerst;

static void BM_Rank(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  SparseMatrix m(n, n);
  for (std::size_t i = 0; i < n * 4; ++i) m.set(rng.below(n), rng.below(n), rng.nonzero_scalar());
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_Rank)->Arg(64)->Arg(256);

static void BM_RankModP(benchmark::State& state) {
  FieldGuard g(Field::prime(10007));
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  SparseMatrix m(n, n);
  for (std::size_t i = 0; i < n * 4; ++i) m.set(rng.below(n), rng.below(n), rng.nonzero_scalar());
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_RankModP)->Arg(256)->Arg(1024);

static void BM_Bracket(benchmark::State& state) {
  const Algebra a = make_matrix_algebra(2, make_ground_field());
  Rng rng(2);
  const Cochain d = random_cochain(a, 3, 10, rng), e = random_cochain(a, 2, 10, rng);
  for (auto _ : state) benchmark::DoNotOptimize(gerstenhaber_bracket(a, d, e));
}
BENCHMARK(BM_Bracket);

static void BM_HochschildMat2Dual(benchmark::State& state) {
  const Algebra a = make_matrix_algebra(2, make_truncated_polynomial_algebra(2));
  for (auto _ : state) benchmark::DoNotOptimize(cohomology(a, 2));
}
BENCHMARK(BM_HochschildMat2Dual)->Unit(benchmark::kMillisecond);

static void BM_MoyalAssociativity(benchmark::State& state) {
  const Algebra a = make_polynomial_algebra(2, 3, {"x", "p"});
  const MCElement lambda = moyal_mc(a, 3);
  for (auto _ : state) benchmark::DoNotOptimize(check_associativity(deform_product(a, lambda)));
}
BENCHMARK(BM_MoyalAssociativity)->Unit(benchmark::kMillisecond);

static void BM_ComputeF(benchmark::State& state) {
  const DeskConfig cfg;
  const JetDims dims = jet_dims(cfg);
  Rng rng(3);
  const JetIsomorphism sigma(dims, random_jet_generator(dims, 2, 2, 3, rng));
  const Connection c = random_connection(dims, 2, 2, rng);
  for (auto _ : state) benchmark::DoNotOptimize(compute_F(sigma, c, dims));
}
BENCHMARK(BM_ComputeF)->Unit(benchmark::kMillisecond);

static void BM_CommutatorSuite(benchmark::State& state) {
  DeskConfig cfg;
  cfg.cochain_arity_max = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_suite("commutators", cfg));
}
BENCHMARK(BM_CommutatorSuite)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_AdiotaDraw(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_suite("adiota", DeskConfig{}, SuiteOptions{1}));
}
BENCHMARK(BM_AdiotaDraw)->Unit(benchmark::kMillisecond)->Iterations(1);

BENCHMARK_MAIN();
