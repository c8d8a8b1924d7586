#include <benchmark/benchmark.h>

#include "l1svm/datagen.hpp"
#include "l1svm/experiments.hpp"
#include "l1svm/formulation.hpp"
#include "l1svm/mwu.hpp"
#include "l1svm/oracle.hpp"
#include "l1svm/simplex.hpp"

namespace {

using namespace l1svm;

Dataset log_family(std::size_t p) {
  return gen_subgaussian(log_scaling_spec(p), p / 2, 11);
}

void BM_ExactSoftLp(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  const Dataset d = log_family(p);
  const LpInstance lp = build_soft_lp(d, {bounds::default_lambda(static_cast<double>(p)), false});
  std::size_t pivots = 0;
  for (auto _ : state) {
    ExactResult r = solve_exact(lp);
    pivots = r.iterations;
    benchmark::DoNotOptimize(r.primal.objective);
  }
  state.counters["pivots"] = static_cast<double>(pivots);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ExactSoftLp)->RangeMultiplier(2)->Range(32, 512)->Unit(benchmark::kMillisecond);

void BM_ExactBland(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  const Dataset d = log_family(p);
  const LpInstance lp = build_soft_lp(d, {bounds::default_lambda(static_cast<double>(p)), false});
  ExactOptions opts;
  opts.pricing = PricingRule::kBland;
  for (auto _ : state) {
    ExactResult r = solve_exact(lp, opts);
    benchmark::DoNotOptimize(r.primal.objective);
  }
}
BENCHMARK(BM_ExactBland)->RangeMultiplier(2)->Range(32, 128)->Unit(benchmark::kMillisecond);

// Iteration count and time of a full MWU solve as epsilon halves.
void BM_MwuEpsilon(benchmark::State& state) {
  const std::size_t p = 64;
  const Dataset d = log_family(p);
  const SparseSvmConfig cfg{bounds::default_lambda(static_cast<double>(p)), false};
  const LpInstance lp = build_soft_lp(d, cfg);
  const ExactResult ex = solve_exact(lp);
  MwuConfig mc;
  mc.epsilon = 1.0 / static_cast<double>(state.range(0));
  mc.R_bound = std::max(1.0, ex.primal.norm_R);
  mc.r_bound = std::max(1.0, ex.dual.norm_r);
  std::size_t iters = 0;
  for (auto _ : state) {
    OracleSet oracle(d, cfg);
    MwuResult r = solve_mwu(lp, mc, oracle);
    iters = r.report.iterations;
    benchmark::DoNotOptimize(r.primal.objective);
  }
  state.counters["iterations"] = static_cast<double>(iters);
}
BENCHMARK(BM_MwuEpsilon)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace
