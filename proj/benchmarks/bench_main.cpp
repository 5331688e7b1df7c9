#include <benchmark/benchmark.h>

#include "rslbn/ci.hpp"
#include "rslbn/mb.hpp"
#include "rslbn/rsl.hpp"
#include "rslbn/synth.hpp"

using namespace rslbn;

namespace {

Dag sparse_dag(int n) { return erdos_renyi_dag(n, std::pow(n, -0.82), 7); }

void BM_DSeparated(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Dag g = sparse_dag(n);
    Rng rng(11);
    for (auto _ : state) {
        int x = rng.below(n), y = rng.below(n);
        if (x == y) y = (y + 1) % n;
        std::vector<int> s;
        for (int v = 0; v < n; ++v)
            if (v != x && v != y && rng.uniform01() < 0.1) s.push_back(v);
        benchmark::DoNotOptimize(d_separated(g, x, y, s));
    }
}
BENCHMARK(BM_DSeparated)->Arg(50)->Arg(100)->Arg(200);

void BM_ComputeBoundariesOracle(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Dag g = sparse_dag(n);
    for (auto _ : state) {
        OracleCiTester oracle(g);
        benchmark::DoNotOptimize(compute_markov_boundaries(oracle, n));
    }
}
BENCHMARK(BM_ComputeBoundariesOracle)->Arg(50)->Arg(100);

void BM_LearnDiamondFreeOracle(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Dag g = sparse_dag(n);
    for (auto _ : state) {
        OracleCiTester oracle(g);
        CountingCiTester tester(oracle);
        MarkovBoundaries mbs = compute_markov_boundaries(tester, n);
        benchmark::DoNotOptimize(learn_skeleton(tester, std::move(mbs), SideInfo::diamond_free()));
    }
}
BENCHMARK(BM_LearnDiamondFreeOracle)->Arg(40)->Arg(80)->Arg(160);

void BM_FisherZ(benchmark::State& state) {
    const int cond = static_cast<int>(state.range(0));
    const Dag g = sparse_dag(20);
    SemModel model = draw_sem(g, 3);
    GaussianDataset data = sample_sem(model, 5000, 4);
    Rng rng(5);
    for (auto _ : state) {
        CiQuery q{0, 1, {}};
        while (static_cast<int>(q.s.size()) < cond) {
            int v = 2 + rng.below(18);
            if (std::find(q.s.begin(), q.s.end(), v) == q.s.end()) q.s.push_back(v);
        }
        std::sort(q.s.begin(), q.s.end());
        benchmark::DoNotOptimize(fisher_z_independent(data, q, 0.01));
    }
}
BENCHMARK(BM_FisherZ)->Arg(0)->Arg(2)->Arg(6);

void BM_CliqueNumber(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Dag g = erdos_renyi_dag(n, std::pow(n, -0.53), 9);
    for (auto _ : state) benchmark::DoNotOptimize(clique_number(g));
}
BENCHMARK(BM_CliqueNumber)->Arg(30)->Arg(60)->Arg(120);

}  // namespace

BENCHMARK_MAIN();
