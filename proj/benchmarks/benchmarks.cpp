// Micro-benchmarks for the hot evaluation paths: coefficient assembly,
// residual evaluation, exact-oracle construction, and the matrix
// exponential underneath them all.

#include <benchmark/benchmark.h>

#include "crembed/catalog.hpp"
#include "crembed/continuation.hpp"
#include "crembed/exact/oracle.hpp"
#include "crembed/matrix_exp.hpp"
#include "crembed/maurer_cartan.hpp"

namespace {

using namespace crembed;

const LieAlgebra& algebra_named(const char* name) {
  const CatalogEntry* entry = find_catalog_entry(name);
  if (!entry) throw std::runtime_error("missing catalog entry");
  return entry->algebra;
}

CoordinatePoint sample_point(int dim) {
  Vector t(dim);
  for (int d = 0; d < dim; ++d) t[d] = 0.1 + 0.05 * d;
  return CoordinatePoint{t};
}

void BM_OmegaAt(benchmark::State& state, const char* name) {
  const LieAlgebra& algebra = algebra_named(name);
  const CoordinatePoint point = sample_point(algebra.dim());
  for (auto _ : state) benchmark::DoNotOptimize(omega_at(algebra, point));
}
BENCHMARK_CAPTURE(BM_OmegaAt, heisenberg3, "heisenberg3");
BENCHMARK_CAPTURE(BM_OmegaAt, n5, "n5");
BENCHMARK_CAPTURE(BM_OmegaAt, sl2, "sl2");

void BM_LambdaAt(benchmark::State& state, const char* name) {
  const LieAlgebra& algebra = algebra_named(name);
  const CoordinatePoint point = sample_point(algebra.dim());
  for (auto _ : state) benchmark::DoNotOptimize(lambda_at(algebra, point));
}
BENCHMARK_CAPTURE(BM_LambdaAt, n5, "n5");
BENCHMARK_CAPTURE(BM_LambdaAt, sl2, "sl2");

void BM_FlatnessResidual(benchmark::State& state, const char* name) {
  const LieAlgebra& algebra = algebra_named(name);
  const CoordinatePoint point = sample_point(algebra.dim());
  const FDSpec fd;
  for (auto _ : state)
    benchmark::DoNotOptimize(flatness_residual(algebra, point, fd));
}
BENCHMARK_CAPTURE(BM_FlatnessResidual, heisenberg3, "heisenberg3");
BENCHMARK_CAPTURE(BM_FlatnessResidual, sl2, "sl2");

void BM_ExactOracle(benchmark::State& state, const char* name) {
  const LieAlgebra& algebra = algebra_named(name);
  for (auto _ : state)
    benchmark::DoNotOptimize(exact::exact_flatness_residual(algebra).identically_zero());
}
BENCHMARK_CAPTURE(BM_ExactOracle, heisenberg3, "heisenberg3");
BENCHMARK_CAPTURE(BM_ExactOracle, n5, "n5");

void BM_Expm(benchmark::State& state, const char* name) {
  const LieAlgebra& algebra = algebra_named(name);
  const Matrix ad = adjoint_matrix(algebra, 0);
  for (auto _ : state) benchmark::DoNotOptimize(expm_scaled(ad, Complex(0.0, 0.3)));
}
BENCHMARK_CAPTURE(BM_Expm, n5_nilpotent, "n5");
BENCHMARK_CAPTURE(BM_Expm, sl2_pade, "sl2");

void BM_Classify(benchmark::State& state, const char* name) {
  const LieAlgebra& algebra = algebra_named(name);
  for (auto _ : state) benchmark::DoNotOptimize(classify(algebra));
}
BENCHMARK_CAPTURE(BM_Classify, n5, "n5");

}  // namespace

BENCHMARK_MAIN();
