// Serial reference vs OpenMP paths for the data-parallel kernels.

#include <benchmark/benchmark.h>

#include "blocksdp/covering.hpp"
#include "blocksdp/oracles.hpp"

using namespace blocksdp;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::parallel : Exec::serial; }

void BM_Evaluate(benchmark::State& state) {
    const auto f = sample_atom(8, 4, {}, 1);
    for (auto _ : state) benchmark::DoNotOptimize(evaluate(f, exec_of(state)));
}
BENCHMARK(BM_Evaluate)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_VerifyMaximal(benchmark::State& state) {
    const auto family = recursive_covering(static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(verify_covering_maximal(family, exec_of(state)));
}
BENCHMARK(BM_VerifyMaximal)->ArgNames({"parallel", "d"})->ArgsProduct({{0, 1}, {3, 4}})->Unit(benchmark::kMillisecond);

void BM_PatternOracle(benchmark::State& state) {
    OracleConfig c;
    c.check = OracleCheck::patterns;
    c.trials = 2000;
    c.exec = exec_of(state);
    for (auto _ : state) benchmark::DoNotOptimize(run_oracle(c));
}
BENCHMARK(BM_PatternOracle)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_InductionOracle(benchmark::State& state) {
    OracleConfig c;
    c.check = OracleCheck::induction;
    c.n = 5;
    c.d = 2;
    c.trials = 200;
    c.family = recursive_covering(2);
    c.exec = exec_of(state);
    for (auto _ : state) benchmark::DoNotOptimize(run_oracle(c));
}
BENCHMARK(BM_InductionOracle)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
