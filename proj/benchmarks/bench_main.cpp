#include <benchmark/benchmark.h>

#include "tensorion/construct.hpp"
#include "tensorion/tits.hpp"

using namespace tensorion;

namespace {

void BM_DixonMultiply(benchmark::State& state) {
    const AlgebraTable t = dixon();
    Vector x(64), y(64);
    for (std::size_t i = 0; i < 64; ++i) {
        x[i] = Rational(static_cast<std::int64_t>(i % 7) - 3, 1 + static_cast<std::int64_t>(i % 3));
        y[i] = Rational(static_cast<std::int64_t>(i % 5) - 2);
    }
    for (auto _ : state) benchmark::DoNotOptimize(multiply(t, x, y));
}
BENCHMARK(BM_DixonMultiply);

void BM_StructuralProfile(benchmark::State& state) {
    const AlgebraTable o = hurwitz("O");
    for (auto _ : state) benchmark::DoNotOptimize(structural_profile(o));
}
BENCHMARK(BM_StructuralProfile)->Unit(benchmark::kMillisecond);

void BM_Derivations(benchmark::State& state) {
    const AlgebraTable a = state.range(0) == 0 ? hurwitz("O") : jordan_over(hurwitz(state.range(0) == 1 ? "H" : "O")).table();
    for (auto _ : state) benchmark::DoNotOptimize(derivation_algebra(a).dim());
    state.SetLabel(a.name());
}
BENCHMARK(BM_Derivations)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_BuildTits(benchmark::State& state) {
    const TitsInput in = plane_input(static_cast<int>(state.range(0)), DerivationChoice::designated);
    for (auto _ : state) benchmark::DoNotOptimize(build_tits(in.coeff, in.der_coeff, in.jordan, in.der_jordan).grading);
}
BENCHMARK(BM_BuildTits)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_JacobiSweep(benchmark::State& state) {
    const TitsInput in = plane_input(3, DerivationChoice::designated);
    const TitsAlgebra t = build_tits(in.coeff, in.der_coeff, in.jordan, in.der_jordan);
    JacobiOptions o;
    o.sampled = state.range(0) != 0;
    o.seed = 1;
    o.samples = 100000;
    o.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(verify_lie(t, o).failing_triples);
    state.SetLabel(o.sampled ? "sampled 1e5" : "all triples");
}
BENCHMARK(BM_JacobiSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
