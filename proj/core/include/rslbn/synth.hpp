#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rslbn/ci.hpp"
#include "rslbn/graph.hpp"

namespace rslbn {

/// Stream tags for splitting one base seed into independent generators:
/// graph topology, SEM parameters, and sample noise each get their own
/// stream so that e.g. redrawing data never perturbs the graph.
enum class SeedStream : uint64_t { Graph = 1, Model = 2, Data = 3, TieBreak = 4 };

uint64_t derive_seed(uint64_t base, SeedStream stream);

/// Seedable generator with portable output: mt19937_64 for the raw stream,
/// hand-rolled uniform/normal transforms so draws are bit-identical across
/// standard libraries.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next_u64() { return eng_(); }
    double uniform01() { return (next_u64() >> 11) * 0x1.0p-53; }  // [0, 1)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    bool coin() { return next_u64() & 1; }

    /// Standard normal via Box-Muller, pairs cached.
    double normal();

    /// Uniform in [0, n), rejection-sampled.
    int below(int n);

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) std::swap(v[i], v[below(i + 1)]);
    }

private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Linear structural equation model over a DAG: each variable is the
/// coefficient-weighted sum of its parents plus Gaussian noise.
struct SemModel {
    Dag dag;
    std::vector<double> coefficients;  // aligned with dag.edges() order
    std::vector<double> noise_stddev;  // per vertex
};

/// Random DAG: a uniformly random topological order, then each forward pair
/// kept independently with probability p.
Dag erdos_renyi_dag(int n, double p, uint64_t seed);

/// Coefficients uniform on [-1.5,-1] ∪ [1,1.5]; noise stddev uniform on
/// [sqrt(0.5), sqrt(1.5)].
SemModel draw_sem(const Dag& dag, uint64_t seed);

/// Forward sampling in topological order; bit-identical for equal seeds.
GaussianDataset sample_sem(const SemModel& model, int n_samples, uint64_t seed);

}  // namespace rslbn
