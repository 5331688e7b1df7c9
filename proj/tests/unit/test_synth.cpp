#include <doctest.h>

#include <cmath>

#include "rslbn/fixtures.hpp"
#include "rslbn/synth.hpp"

using namespace rslbn;

TEST_CASE("seed streams are distinct and stable") {
    CHECK(derive_seed(7, SeedStream::Graph) != derive_seed(7, SeedStream::Model));
    CHECK(derive_seed(7, SeedStream::Graph) != derive_seed(8, SeedStream::Graph));
    CHECK(derive_seed(7, SeedStream::Data) == derive_seed(7, SeedStream::Data));
}

TEST_CASE("random dag degenerate probabilities") {
    const Dag none = erdos_renyi_dag(10, 0.0, 1);
    CHECK(none.edge_count() == 0);
    const Dag all = erdos_renyi_dag(10, 1.0, 2);
    CHECK(all.edge_count() == 45);
    CHECK_THROWS_AS(erdos_renyi_dag(5, 1.5, 0), std::invalid_argument);
}

TEST_CASE("random dag determinism and acyclicity") {
    const Dag a = erdos_renyi_dag(20, 0.2, 42);
    const Dag b = erdos_renyi_dag(20, 0.2, 42);
    CHECK(a.edges() == b.edges());
    const Dag c = erdos_renyi_dag(20, 0.2, 43);
    CHECK(a.edges() != c.edges());
    // Construction itself validates acyclicity; exercise a spread of seeds.
    for (uint64_t seed = 0; seed < 50; ++seed) {
        const Dag g = erdos_renyi_dag(12, 0.4, seed);
        CHECK(g.topological_order().size() == 12);
    }
}

TEST_CASE("random dag edge count concentrates around p * C(n,2)") {
    const int n = 20;
    const double p = 0.3;
    const double pairs = n * (n - 1) / 2.0;
    double total = 0.0;
    const int draws = 1000;
    for (uint64_t seed = 0; seed < draws; ++seed) total += erdos_renyi_dag(n, p, seed).edge_count();
    const double mean = total / draws;
    const double sigma = std::sqrt(pairs * p * (1 - p) / draws);
    CHECK(std::abs(mean - pairs * p) <= 3 * sigma);
}

TEST_CASE("sparse draws are usually diamond-free") {
    // True fraction at n = 50, p = n^-0.82 is 0.891 +- 0.002 (measured with
    // 40k draws); assert the 3-sigma band for 500 draws around it.
    const int n = 50;
    const double p = std::pow(static_cast<double>(n), -0.82);
    int diamond_free = 0;
    for (uint64_t seed = 0; seed < 500; ++seed)
        if (is_diamond_free(erdos_renyi_dag(n, p, seed))) ++diamond_free;
    CHECK(diamond_free >= 425);
    CHECK(diamond_free <= 470);
}

TEST_CASE("sem draws stay inside the documented ranges") {
    const Dag g = erdos_renyi_dag(15, 0.3, 5);
    const SemModel model = draw_sem(g, 6);
    REQUIRE(static_cast<int>(model.coefficients.size()) == g.edge_count());
    for (double c : model.coefficients) {
        CHECK(std::abs(c) >= 1.0);
        CHECK(std::abs(c) <= 1.5);
    }
    for (double s : model.noise_stddev) {
        CHECK(s * s >= 0.5);
        CHECK(s * s <= 1.5);
    }
    const SemModel again = draw_sem(g, 6);
    CHECK(again.coefficients == model.coefficients);
    CHECK(again.noise_stddev == model.noise_stddev);
}

TEST_CASE("sampling is bit-identical for equal seeds") {
    const Dag g = erdos_renyi_dag(8, 0.3, 10);
    const SemModel model = draw_sem(g, 11);
    const GaussianDataset a = sample_sem(model, 500, 12);
    const GaussianDataset b = sample_sem(model, 500, 12);
    CHECK(a.values() == b.values());
    const GaussianDataset c = sample_sem(model, 500, 13);
    CHECK(a.values() != c.values());
}

TEST_CASE("edgeless model yields independent columns at the drawn variances") {
    const Dag g(4);
    const SemModel model = draw_sem(g, 21);
    const GaussianDataset data = sample_sem(model, 20000, 22);
    for (int v = 0; v < 4; ++v) {
        double mean = 0.0, var = 0.0;
        for (int i = 0; i < data.sample_count(); ++i) mean += data.value(i, v);
        mean /= data.sample_count();
        for (int i = 0; i < data.sample_count(); ++i) {
            double d = data.value(i, v) - mean;
            var += d * d;
        }
        var /= data.sample_count() - 1;
        const double truth = model.noise_stddev[v] * model.noise_stddev[v];
        CHECK(var == doctest::Approx(truth).epsilon(0.06));
    }
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) CHECK(std::abs(data.correlation(a, b)) < 0.03);
}

TEST_CASE("single-edge model recovers its coefficient") {
    const Dag g = Dag::from_edges(2, std::vector<std::pair<int, int>>{{0, 1}});
    for (uint64_t seed = 0; seed < 5; ++seed) {
        const SemModel model = draw_sem(g, seed);
        const GaussianDataset data = sample_sem(model, 10000, seed + 50);
        double sum0 = 0, sum1 = 0, s00 = 0, s01 = 0;
        for (int i = 0; i < data.sample_count(); ++i) {
            sum0 += data.value(i, 0);
            sum1 += data.value(i, 1);
        }
        const double m0 = sum0 / data.sample_count(), m1 = sum1 / data.sample_count();
        for (int i = 0; i < data.sample_count(); ++i) {
            s00 += (data.value(i, 0) - m0) * (data.value(i, 0) - m0);
            s01 += (data.value(i, 0) - m0) * (data.value(i, 1) - m1);
        }
        const double slope = s01 / s00;
        // Noise stddev <= sqrt(1.5), so three standard errors is generous.
        const double se = std::sqrt(1.5 / s00);
        CHECK(std::abs(slope - model.coefficients[0]) <= 3 * se);
    }
}

TEST_CASE("chain model carries the implied conditional independence") {
    const Dag chain = fixture_dag("chain3");
    const SemModel model = draw_sem(chain, 31);
    const GaussianDataset data = sample_sem(model, 20000, 32);
    CHECK(std::abs(partial_correlation(data, 0, 2, std::vector<int>{1})) < 0.03);
    CHECK(std::abs(data.correlation(0, 2)) > 0.3);  // marginally dependent
}
