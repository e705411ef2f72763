#include "kv/embedded_eval.hpp"
#include "kv/oracle.hpp"
#include "kv/planar_eval.hpp"
#include "kv/random_diagram.hpp"

#include <benchmark/benchmark.h>

namespace {

const char* kOctahedron =
    "V 1 2 3 4\nV 9 5 1 8\nV 10 6 2 5\nV 3 6 11 7\nV 8 4 7 12\nV 9 12 11 10\n";

void BM_RingMul(benchmark::State& state) {
    kv::RingElem x = kv::const_mu() * kv::const_big_o() + kv::const_gamma();
    kv::RingElem y = kv::const_xi() - kv::const_mu();
    for (auto _ : state) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(BM_RingMul);

void BM_CanonicalCode(benchmark::State& state) {
    kv::Diagram d = kv::random_diagram({static_cast<int>(state.range(0)) / 2,
                                        static_cast<int>(state.range(0)) / 2, 7});
    for (auto _ : state) benchmark::DoNotOptimize(kv::canonical_code(d));
}
BENCHMARK(BM_CanonicalCode)->Arg(6)->Arg(10)->Arg(14);

void BM_EvalPlanar(benchmark::State& state) {
    kv::Diagram d = kv::random_diagram({static_cast<int>(state.range(0)), 0, 11});
    for (auto _ : state) {
        kv::Evaluator ev;  // cold cache: measures a full evaluation
        benchmark::DoNotOptimize(ev.eval_planar(d));
    }
}
BENCHMARK(BM_EvalPlanar)->Arg(4)->Arg(6)->Arg(8);

void BM_EvalLens(benchmark::State& state) {
    kv::Diagram d = kv::parse(kOctahedron);
    for (auto _ : state) {
        kv::Evaluator ev;
        benchmark::DoNotOptimize(ev.eval_planar(d));
    }
}
BENCHMARK(BM_EvalLens);

void BM_EvalCrossings(benchmark::State& state) {
    kv::Diagram d = kv::random_diagram({2, static_cast<int>(state.range(0)), 13});
    for (auto _ : state) {
        kv::Evaluator ev;
        benchmark::DoNotOptimize(ev.eval(d));
    }
}
BENCHMARK(BM_EvalCrossings)->Arg(2)->Arg(4);

void BM_Dubrovnik(benchmark::State& state) {
    kv::Diagram d = kv::random_diagram({0, static_cast<int>(state.range(0)), 17});
    kv::OracleLimits limits;
    for (auto _ : state) benchmark::DoNotOptimize(kv::dubrovnik(d, limits));
}
BENCHMARK(BM_Dubrovnik)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
