#include <benchmark/benchmark.h>

#include <vector>

#include <multiroot/ehrlich.hpp>
#include <multiroot/oracle.hpp>
#include <multiroot/poly.hpp>

using namespace multiroot;

namespace
{

struct Case {
    Family family;
    RootConfiguration roots;
    std::vector<Real> initial;
};

// The three bundled examples, read at the working precision.
Case example(int index)
{
    switch (index) {
    case 0:
        return {Family::algebraic, RootConfiguration({Real(2), Real(3), Real(5)}, {2, 3, 1}),
                {Real("0.4"), Real("3.5"), Real(8)}};
    case 1:
        return {Family::trigonometric, RootConfiguration({Real(1), Real(2), Real("2.5")}, {3, 2, 1}),
                {Real("0.2"), Real("1.7"), Real(3)}};
    default:
        return {Family::exponential, RootConfiguration({Real(-2), Real(3)}, {2, 2}), {Real(-1), Real(4)}};
    }
}

void family_args(benchmark::internal::Benchmark *b)
{
    for (int family = 0; family < 3; ++family) {
        for (long bits : {64L, 128L, 256L, 512L}) {
            b->Args({family, bits});
        }
    }
    b->ArgNames({"family", "bits"});
}

void BM_Evaluate(benchmark::State &state)
{
    PrecisionScope scope(state.range(1));
    const Case c = example(static_cast<int>(state.range(0)));
    const PolyFamily f = expand_from_roots(FactoredForm(c.family, c.roots));
    const Real x("0.7");
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate(f, x));
    }
}
BENCHMARK(BM_Evaluate)->Apply(family_args);

void BM_Step(benchmark::State &state)
{
    PrecisionScope scope(state.range(1));
    const Case c = example(static_cast<int>(state.range(0)));
    const PolyFamily f = expand_from_roots(FactoredForm(c.family, c.roots));
    SolveSettings settings;
    settings.precision_bits = state.range(1);
    const IterationState start = initial_state(f, c.initial, settings);
    for (auto _ : state) {
        benchmark::DoNotOptimize(step(f, c.roots.multiplicities(), start, settings));
    }
}
BENCHMARK(BM_Step)->Apply(family_args);

void BM_Solve(benchmark::State &state)
{
    PrecisionScope scope(state.range(1));
    const Case c = example(static_cast<int>(state.range(0)));
    const PolyFamily f = expand_from_roots(FactoredForm(c.family, c.roots));
    SolveSettings settings;
    settings.precision_bits = state.range(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve(f, c.roots.multiplicities(), c.initial, settings));
    }
}
BENCHMARK(BM_Solve)->Apply(family_args);

void BM_ExpandFromRoots(benchmark::State &state)
{
    PrecisionScope scope(state.range(1));
    const Case c = example(static_cast<int>(state.range(0)));
    const FactoredForm form(c.family, c.roots);
    for (auto _ : state) {
        benchmark::DoNotOptimize(expand_from_roots(form));
    }
}
BENCHMARK(BM_ExpandFromRoots)->Apply(family_args);

void BM_VerifyRoots(benchmark::State &state)
{
    PrecisionScope scope(state.range(1));
    const Case c = example(static_cast<int>(state.range(0)));
    const PolyFamily f = expand_from_roots(FactoredForm(c.family, c.roots));
    const Real tolerance = pow2(-(state.range(1) / 5));
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_roots(f, c.roots, tolerance));
    }
}
BENCHMARK(BM_VerifyRoots)->Apply(family_args);

} // namespace

BENCHMARK_MAIN();
