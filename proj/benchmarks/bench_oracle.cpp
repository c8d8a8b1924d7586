#include <benchmark/benchmark.h>

#include <vector>

#include "l1svm/datagen.hpp"
#include "l1svm/experiments.hpp"
#include "l1svm/oracle.hpp"

namespace {

using namespace l1svm;

// One MWU iteration's worth of oracle work: the weighted pass over all
// constraint matrices.
void BM_WeightedColumnSums(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  const Dataset d = gen_subgaussian(log_scaling_spec(p), p / 2, 3);
  OracleSet oracle(d, {0.1, false});
  std::vector<double> w(oracle.m(), 1.0 / static_cast<double>(oracle.m()));
  std::vector<double> out(oracle.n());
  QueryLedger ledger;
  for (auto _ : state) {
    oracle.weighted_column_sums(w, out, ledger);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * oracle.m() * oracle.n()));
}
BENCHMARK(BM_WeightedColumnSums)->RangeMultiplier(4)->Range(64, 4096);

void BM_Column(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  const Dataset d = gen_subgaussian(log_scaling_spec(p), p / 2, 3);
  OracleSet oracle(d, {0.1, false});
  std::vector<double> out(oracle.m());
  QueryLedger ledger;
  std::size_t k = 0;
  for (auto _ : state) {
    oracle.column(k, out, ledger);
    k = (k + 1) % oracle.n();
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_Column)->RangeMultiplier(4)->Range(64, 4096);

void BM_QuantizedEntry(benchmark::State& state) {
  const Dataset d = gen_subgaussian(log_scaling_spec(256), 128, 3);
  OracleSet oracle(d, {0.1, false});
  oracle.set_quantization(static_cast<int>(state.range(0)));
  QueryLedger ledger;
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle.query_a(i % oracle.m(), 200 + i % 256, ledger));
    ++i;
  }
}
BENCHMARK(BM_QuantizedEntry)->Arg(8)->Arg(24)->Arg(52);

}  // namespace
