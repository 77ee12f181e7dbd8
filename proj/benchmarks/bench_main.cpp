#include <benchmark/benchmark.h>

#include "kstab/optimize.hpp"
#include "kstab/polynomial.hpp"
#include "kstab/toric.hpp"

using namespace kstab;

namespace {

LatticePolytope square() {
    return LatticePolytope::from_vertices({{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(1)}});
}

PLConvexFunction diag_crease() {
    return PLConvexFunction::max_affine(
        {AffinePiece{{Rat(1), Rat(1)}, Rat(-1)}, AffinePiece{{Rat(0), Rat(0)}, Rat(0)}});
}

void RationalArithmetic(benchmark::State& state) {
    Rat a(355, 113), b(-217, 391);
    for (auto _ : state) {
        Rat c = a * b + a / b - b;
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(RationalArithmetic);

void Interpolate(benchmark::State& state) {
    std::vector<std::pair<Rat, Rat>> samples;
    for (long k = 1; k <= state.range(0); ++k)
        samples.emplace_back(Rat(k), Rat(3 * k * k * k - k + 7, 2));
    for (auto _ : state) {
        auto p = interpolate(samples);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(Interpolate)->Arg(4)->Arg(8)->Arg(16);

void LatticeEnumeration(benchmark::State& state) {
    LatticePolytope p = square();
    for (auto _ : state) {
        auto pts = p.lattice_points(state.range(0));
        benchmark::DoNotOptimize(pts);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(LatticeEnumeration)->RangeMultiplier(2)->Range(4, 64)->Complexity();

void BuildModel(benchmark::State& state) {
    LatticePolytope p = square();
    std::vector<PLConvexFunction> fns = {diag_crease(),
                                         PLConvexFunction::max_affine({AffinePiece{{Rat(1), Rat(0)}, Rat(0)}})};
    for (auto _ : state) {
        auto m = build_model(p, fns);
        benchmark::DoNotOptimize(m);
    }
}
BENCHMARK(BuildModel);

void DiscreteOracle(benchmark::State& state) {
    LatticePolytope p = square();
    PLConvexFunction f = diag_crease();
    std::vector<long> samples;
    for (long s = 1; s <= state.range(0); ++s) samples.push_back(s);
    for (auto _ : state) {
        auto fit = discrete_weight_oracle(p, f, Rat(1), samples);
        benchmark::DoNotOptimize(fit);
    }
}
BENCHMARK(DiscreteOracle)->Arg(5)->Arg(8);

void MinimizeSquareSpace(benchmark::State& state) {
    TriangulationData tri{
        {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(1)}, {Rat(1, 2), Rat(1, 2)}},
        {{0, 1, 4}, {1, 3, 4}, {3, 2, 4}, {2, 0, 4}}};
    SearchSpace space = build_search_space(square(), tri);
    for (auto _ : state) {
        auto r = minimize_normalized_df(space);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(MinimizeSquareSpace);

void BruteForceSquareSpace(benchmark::State& state) {
    TriangulationData tri{
        {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(1)}, {Rat(1, 2), Rat(1, 2)}},
        {{0, 1, 4}, {1, 3, 4}, {3, 2, 4}, {2, 0, 4}}};
    SearchSpace space = build_search_space(square(), tri);
    for (auto _ : state) {
        auto r = brute_force_search(space, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BruteForceSquareSpace)->Arg(4)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
