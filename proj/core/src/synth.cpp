#include "rslbn/synth.hpp"

#include <cmath>
#include <stdexcept>

namespace rslbn {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace

uint64_t derive_seed(uint64_t base, SeedStream stream) {
    return splitmix64(splitmix64(base) ^ static_cast<uint64_t>(stream));
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform01(), u2 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

int Rng::below(int n) {
    if (n <= 0) throw std::invalid_argument("below(n) requires n > 0");
    const uint64_t bound = ~uint64_t{0} - ~uint64_t{0} % static_cast<uint64_t>(n);
    uint64_t v = next_u64();
    while (v >= bound) v = next_u64();
    return static_cast<int>(v % static_cast<uint64_t>(n));
}

Dag erdos_renyi_dag(int n, double p, uint64_t seed) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("edge probability outside [0, 1]");
    Rng rng(seed);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    rng.shuffle(order);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform01() < p) edges.emplace_back(order[i], order[j]);
    return Dag::from_edges(n, edges);
}

SemModel draw_sem(const Dag& dag, uint64_t seed) {
    Rng rng(seed);
    SemModel model{dag, {}, {}};
    model.coefficients.reserve(dag.edge_count());
    for (int i = 0; i < dag.edge_count(); ++i) {
        double magnitude = rng.uniform(1.0, 1.5);
        model.coefficients.push_back(rng.coin() ? magnitude : -magnitude);
    }
    model.noise_stddev.reserve(dag.vertex_count());
    for (int v = 0; v < dag.vertex_count(); ++v)
        model.noise_stddev.push_back(rng.uniform(std::sqrt(0.5), std::sqrt(1.5)));
    return model;
}

GaussianDataset sample_sem(const SemModel& model, int n_samples, uint64_t seed) {
    if (n_samples < 1) throw std::invalid_argument("need at least one sample");
    const Dag& g = model.dag;
    const int n = g.vertex_count();
    if (static_cast<int>(model.coefficients.size()) != g.edge_count() ||
        static_cast<int>(model.noise_stddev.size()) != n)
        throw std::invalid_argument("model shape mismatch");

    // Coefficient lookup aligned with dag.edges() ordering.
    std::vector<std::vector<std::pair<int, double>>> weighted_parents(n);
    {
        auto edges = g.edges();
        for (size_t e = 0; e < edges.size(); ++e)
            weighted_parents[edges[e].second].emplace_back(edges[e].first, model.coefficients[e]);
    }

    Rng rng(seed);
    std::vector<double> values(static_cast<size_t>(n) * n_samples);
    const auto order = g.topological_order();
    for (int i = 0; i < n_samples; ++i) {
        for (int v : order) {
            double x = model.noise_stddev[v] * rng.normal();
            for (auto [parent, coeff] : weighted_parents[v])
                x += coeff * values[static_cast<size_t>(parent) * n_samples + i];
            values[static_cast<size_t>(v) * n_samples + i] = x;
        }
    }
    return GaussianDataset(n, n_samples, std::move(values));
}

}  // namespace rslbn
