#include <benchmark/benchmark.h>

#include "gowers/apps.hpp"
#include "gowers/norms.hpp"
#include "gowers/spectral.hpp"
#include "gowers/walk.hpp"

namespace {

using namespace gowers;

void BM_block_eval(benchmark::State& state) {
  auto seq = AutomaticSequence::rudin_shapiro();
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    auto blk = seq.block(n);
    benchmark::DoNotOptimize(blk.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n));
}
BENCHMARK(BM_block_eval)->Arg(1 << 16)->Arg(1 << 20);

void BM_norm_nested(benchmark::State& state) {
  auto seq = AutomaticSequence::thue_morse();
  const int level = static_cast<int>(state.range(0));
  EnumLimits limits;
  limits.threads = 1;
  for (auto _ : state) {
    auto avg = cube_average(seq, CubeSpec::zero(2, level), NormMethod::nested,
                            limits);
    benchmark::DoNotOptimize(avg.numerator);
  }
}
BENCHMARK(BM_norm_nested)->Arg(6)->Arg(8)->Arg(10);

void BM_norm_brute(benchmark::State& state) {
  auto seq = AutomaticSequence::thue_morse();
  const int level = static_cast<int>(state.range(0));
  EnumLimits limits;
  limits.threads = 1;
  for (auto _ : state) {
    auto avg = cube_average(seq, CubeSpec::zero(2, level), NormMethod::brute,
                            limits);
    benchmark::DoNotOptimize(avg.numerator);
  }
}
BENCHMARK(BM_norm_brute)->Arg(6)->Arg(8);

void BM_build_graph(benchmark::State& state) {
  auto seq = AutomaticSequence::thue_morse();
  const int s = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto g = build_graph(seq, s);
    benchmark::DoNotOptimize(g.vertices.size());
  }
}
BENCHMARK(BM_build_graph)->Arg(2)->Arg(3)->Arg(4);

void BM_exp_sum(benchmark::State& state) {
  auto seq = AutomaticSequence::thue_morse();
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    auto rep = exp_sum(seq, n);
    benchmark::DoNotOptimize(rep.sup);
  }
}
BENCHMARK(BM_exp_sum)->Arg(1 << 10)->Arg(1 << 14);

void BM_signed_discrepancy(benchmark::State& state) {
  auto seq = AutomaticSequence::rudin_shapiro();
  auto g = build_graph(seq, 2);
  for (auto _ : state) {
    auto ds = signed_discrepancies(g, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(ds.back());
  }
}
BENCHMARK(BM_signed_discrepancy)->Arg(10)->Arg(30);

}  // namespace

BENCHMARK_MAIN();
