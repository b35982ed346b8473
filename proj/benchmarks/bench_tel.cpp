#include "tel/automata.hpp"
#include "tel/equilibrium.hpp"
#include "tel/formula.hpp"
#include "tel/semantics.hpp"
#include "tel/solvers.hpp"
#include "tel/tiling.hpp"

#include <benchmark/benchmark.h>

using namespace tel;

namespace {

const char* const kFormulas[] = {
    "G(~p -> X p)",
    "G(~X p -> p) & G(X p -> p)",
    "F p & G(p -> X q) & (p U q)",
    "G F p -> F(p & X ~q)",
};

TilingInstance sampleInstance(int n)
{
    TilingInstance I;
    I.colors = {"x", "y"};
    I.dominoes = {{"x", "x", "x", "y"}, {"x", "y", "x", "x"}, {"y", "x", "y", "x"}};
    I.n = n;
    I.init = 0;
    I.final = 1;
    return I;
}

}  // namespace

static void BM_Parse(benchmark::State& state)
{
    const std::string text = kFormulas[state.range(0)];
    for (auto _ : state) benchmark::DoNotOptimize(parse(text));
}
BENCHMARK(BM_Parse)->DenseRange(0, 3);

static void BM_ThtSat(benchmark::State& state)
{
    const Formula f = parse(kFormulas[state.range(0)]);
    const auto atoms = atomList(f);
    std::vector<Letter> loop(4);
    for (std::size_t i = 0; i < loop.size(); ++i) loop[i] = i % (Letter{1} << atoms.size());
    const Lasso T = makeLasso(atoms, {0}, loop);
    const ThtPair m = totalPair(T);
    for (auto _ : state) benchmark::DoNotOptimize(thtSat(m, 0, f));
}
BENCHMARK(BM_ThtSat)->DenseRange(0, 3);

static void BM_LtlToBuchi(benchmark::State& state)
{
    const Formula f = parse(kFormulas[state.range(0)]);
    for (auto _ : state) benchmark::DoNotOptimize(ltlToBuchi(f));
}
BENCHMARK(BM_LtlToBuchi)->DenseRange(0, 3);

static void BM_Solve(benchmark::State& state)
{
    const Formula f = parse(kFormulas[state.range(0)]);
    for (auto _ : state) benchmark::DoNotOptimize(solveCon(f));
}
BENCHMARK(BM_Solve)->DenseRange(0, 1)->Unit(benchmark::kMillisecond);

static void BM_EncodeExpspace(benchmark::State& state)
{
    const auto I = sampleInstance(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(encodeExpspaceFG(I));
}
BENCHMARK(BM_EncodeExpspace)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

static void BM_EncodeNexptime(benchmark::State& state)
{
    const auto I = sampleInstance(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(encodeNexptimeFG(I));
}
BENCHMARK(BM_EncodeNexptime)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

static void BM_SolveTiling(benchmark::State& state)
{
    const auto I = sampleInstance(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(solveTiling(I, TilingKind::PspaceRows, 6));
}
BENCHMARK(BM_SolveTiling)->DenseRange(1, 4);

BENCHMARK_MAIN();
