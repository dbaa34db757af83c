// Serial reference vs OpenMP window comparison on a relation-sized workload.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "qembed/embed.hpp"
#include "qembed/repmod.hpp"

namespace {

struct Workload {
  qembed::ModuleContext ctx;
  qembed::AlgebraExpression lhs, rhs;
};

// [e_r, f_r] against (k_r - k_r^-1)/(v - v^-1) on V_{n+1}^{(x)d}.
Workload commutator_workload(int d) {
  const qembed::EmbeddingSpec s{3, 1, -1};
  using qembed::GeneratorSymbol;
  const auto e = qembed::image_generator(s, GeneratorSymbol::E(1));
  const auto f = qembed::image_generator(s, GeneratorSymbol::F(1));
  const auto k = qembed::image_generator(s, GeneratorSymbol::K(1));
  const auto ki = qembed::image_generator(s, GeneratorSymbol::K(1, -1));
  const auto v = qembed::RationalFunction::v_power(1);
  return {qembed::ModuleContext(4, d, -8, 8), e * f - f * e, (k - ki) * (qembed::RationalFunction(1) / (v - v.inverse()))};
}

void BM_serial(benchmark::State& st) {
  const Workload w = commutator_workload(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(qembed::operators_equal_on_window_serial(w.ctx, w.lhs, w.rhs));
}

void BM_openmp(benchmark::State& st) {
  const Workload w = commutator_workload(static_cast<int>(st.range(0)));
  omp_set_num_threads(static_cast<int>(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(qembed::operators_equal_on_window(w.ctx, w.lhs, w.rhs));
}

}  // namespace

BENCHMARK(BM_serial)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_openmp)->ArgsProduct({{1, 2}, {1, 2, 4}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
