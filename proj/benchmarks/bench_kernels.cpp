#include <benchmark/benchmark.h>

#include "qskew/lie_algebras.hpp"
#include "qskew/random.hpp"
#include "qskew/samples.hpp"
#include "qskew/spencer.hpp"
#include "qskew/torsion_lab.hpp"

using namespace qskew;

namespace {

void BM_CohomologyDims(benchmark::State& state)
{
    int n = static_cast<int>(state.range(0));
    auto g = build_subalgebra("so_star_sp1", n);
    for (auto _ : state) benchmark::DoNotOptimize(cohomology_dims(g).cohomology_dim);
}
BENCHMARK(BM_CohomologyDims)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_ProjectorRank(benchmark::State& state)
{
    int n = static_cast<int>(state.range(0));
    auto h = standard_triple(n);
    for (auto _ : state) {
        auto P = torsion_operator(n, [&](const ModelTensor& phi) { return proj_H(phi, h); });
        benchmark::DoNotOptimize(rank_of(P.col, P.rows));
    }
}
BENCHMARK(BM_ProjectorRank)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_BuildTypeBases(benchmark::State& state)
{
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(build_type_bases(n, TorsionGroup::SoStarSp1));
}
BENCHMARK(BM_BuildTypeBases)->Arg(2)->Unit(benchmark::kMillisecond)->Iterations(3);

void BM_Classify(benchmark::State& state)
{
    int n = 2;
    auto cache = type_bases(n, TorsionGroup::SoStarSp1);
    Rng rng(20261019);
    auto T = random_torsion(n, rng);
    for (auto _ : state) benchmark::DoNotOptimize(classify(T, *cache).label);
}
BENCHMARK(BM_Classify)->Unit(benchmark::kMillisecond);

void BM_RankDense(benchmark::State& state)
{
    int size = static_cast<int>(state.range(0));
    Rng rng(20261019);
    std::vector<SVec> cols;
    for (int c = 0; c < size; ++c) cols.push_back(sparse(rng.vector(size)));
    for (auto _ : state) benchmark::DoNotOptimize(rank_of(cols, size));
}
BENCHMARK(BM_RankDense)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
