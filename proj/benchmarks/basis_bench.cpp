#include <benchmark/benchmark.h>

#include <random>

#include "regressor/basis.hpp"
#include "regressor/random.hpp"

namespace {

using regressor::basis::BasisSpec;
using regressor::basis::Mode;

void BM_BuildDesignMatrix(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0));
  const auto degree = static_cast<unsigned>(state.range(1));
  const auto v = static_cast<std::size_t>(state.range(2));
  std::mt19937_64 rng(7);
  regressor::Matrix x(rows, v);
  for (double& value : x.values()) value = regressor::uniform(rng, -1.0, 1.0);
  const BasisSpec spec{degree, v, Mode::Combinatorial};
  for (auto _ : state)
    benchmark::DoNotOptimize(regressor::basis::build_design_matrix(x, spec));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * rows *
                                                    regressor::basis::term_count(spec)));
}

}  // namespace

// rows, degree, variables
BENCHMARK(BM_BuildDesignMatrix)
    ->Args({1000, 3, 2})
    ->Args({1000, 30, 2})
    ->Args({5000, 4, 4})
    ->Args({299, 1, 8})
    ->Unit(benchmark::kMicrosecond);
