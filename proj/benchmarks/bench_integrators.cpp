#include <benchmark/benchmark.h>

#include "igabench/integrators.hpp"
#include "igabench/parallel_runtime.hpp"

using namespace igabench;

namespace {

void element_classical(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    const KnotVector kv(2, p);
    const auto rule = gauss_rule(p, 2, {0, 0, 0});
    for (auto _ : state) {
        auto m = integrate_element_classical({0, 0, 0}, kv, rule);
        benchmark::DoNotOptimize(m.entries.data());
    }
    state.counters["flops"] = benchmark::Counter(static_cast<double>(flop_count(Method::classical, p)),
                                                 benchmark::Counter::kIsIterationInvariantRate);
}

void element_sumfact(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    const KnotVector kv(2, p);
    const auto rule = gauss_rule(p, 2, {0, 0, 0});
    SumFactBuffers buffers(p, p + 1);
    for (auto _ : state) {
        auto m = integrate_element_sumfact({0, 0, 0}, kv, rule, buffers);
        benchmark::DoNotOptimize(m.entries.data());
    }
    state.counters["flops"] = benchmark::Counter(static_cast<double>(flop_count(Method::sumfact, p)),
                                                 benchmark::Counter::kIsIterationInvariantRate);
}

// Whole-mesh run: args are (strategy, workers, p).
void mesh_run(benchmark::State& state) {
    RunConfig cfg;
    cfg.method = Method::sumfact;
    cfg.strategy = static_cast<Strategy>(state.range(0));
    cfg.workers = static_cast<int>(state.range(1));
    cfg.degree = static_cast<int>(state.range(2));
    cfg.elements = 4;
    Runtime rt;
    for (auto _ : state) {
        auto r = rt.run(cfg);
        benchmark::DoNotOptimize(r.gram.values().data());
    }
    state.SetLabel(std::string(to_string(cfg.strategy)));
}

}  // namespace

BENCHMARK(element_classical)->DenseRange(0, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK(element_sumfact)->DenseRange(0, 6)->Unit(benchmark::kMicrosecond);
BENCHMARK(mesh_run)
    ->ArgsProduct({{static_cast<long>(Strategy::sequential), static_cast<long>(Strategy::over_elements),
                    static_cast<long>(Strategy::within_element), static_cast<long>(Strategy::combined)},
                   {1, 2, 4},
                   {2, 3}})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
