#include <doctest.h>

#include "rslbn/fixtures.hpp"
#include "rslbn/mb.hpp"
#include "rslbn/synth.hpp"

using namespace rslbn;

namespace {

MarkovBoundaries truth_boundaries(const Dag& g) {
    MarkovBoundaries mbs(g.vertex_count());
    for (int x = 0; x < g.vertex_count(); ++x)
        for (int y : markov_boundary(g, x))
            if (y > x) mbs.link(x, y);
    return mbs;
}

bool equal_boundaries(const MarkovBoundaries& a, const MarkovBoundaries& b, const std::vector<int>& on) {
    for (int v : on)
        if (a.boundary(v) != b.boundary(v)) return false;
    return true;
}

}  // namespace

TEST_CASE("total conditioning recovers the boundaries of the teaching graphs") {
    const Dag chain = fixture_dag("chain3");
    OracleCiTester oracle(chain);
    MarkovBoundaries mbs = compute_markov_boundaries(oracle, 3);
    CHECK(mbs.boundary(0) == std::vector<int>{1});
    CHECK(mbs.boundary(1) == std::vector<int>{0, 2});
    CHECK(mbs.boundary(2) == std::vector<int>{1});

    const Dag collider = fixture_dag("collider3");
    OracleCiTester oracle2(collider);
    MarkovBoundaries mbs2 = compute_markov_boundaries(oracle2, 3);
    CHECK(mbs2.boundary(0) == std::vector<int>{1, 2});
}

TEST_CASE("total conditioning spends exactly one test per pair") {
    for (int n : {1, 2, 5, 9}) {
        const Dag g = erdos_renyi_dag(n, 0.3, 17 + n);
        OracleCiTester oracle(g);
        CountingCiTester tester(oracle);
        compute_markov_boundaries(tester, n);
        CHECK(tester.stats().total_tests == n * (n - 1) / 2);
        CHECK(tester.stats().dedup_hits == 0);
    }
}

TEST_CASE("total conditioning equals the graph-side boundary on random dags") {
    for (uint64_t seed = 0; seed < 150; ++seed) {
        const int n = 2 + static_cast<int>(seed % 5);
        const Dag g = erdos_renyi_dag(n, 0.35, seed + 500);
        OracleCiTester oracle(g);
        MarkovBoundaries mbs = compute_markov_boundaries(oracle, n);
        for (int x = 0; x < n; ++x) {
            CAPTURE(seed);
            REQUIRE(mbs.boundary(x) == markov_boundary(g, x));
        }
    }
}

TEST_CASE("update skips pair tests when the removed vertex had co-parents") {
    // Removing 0 from 0 -> 2 <- 1: boundary {1, 2} != neighbors {2}, so the
    // pair loop is skipped entirely.
    const Dag g = fixture_dag("collider3");
    OracleCiTester oracle(g);
    CountingCiTester tester(oracle);
    MarkovBoundaries mbs = truth_boundaries(g);
    BoundaryUpdate upd = update_markov_boundaries(0, tester, {2}, std::move(mbs));
    CHECK(tester.stats().total_tests == 0);
    CHECK(upd.boundaries.boundary(1) == std::vector<int>{2});
    CHECK(upd.boundaries.boundary(2) == std::vector<int>{1});
    CHECK(upd.changed == std::vector<int>{1, 2});
}

TEST_CASE("update after removing a chain sink") {
    const Dag g = fixture_dag("chain3");
    OracleCiTester oracle(g);
    CountingCiTester tester(oracle);
    MarkovBoundaries mbs = truth_boundaries(g);
    BoundaryUpdate upd = update_markov_boundaries(2, tester, {1}, std::move(mbs));
    CHECK(upd.boundaries.boundary(0) == std::vector<int>{1});
    CHECK(upd.boundaries.boundary(1) == std::vector<int>{0});
    CHECK(tester.stats().total_tests <= 1);
}

TEST_CASE("update separates co-parents once their only common child is gone") {
    const Dag g = fixture_dag("collider3");
    OracleCiTester oracle(g);
    CountingCiTester tester(oracle);
    MarkovBoundaries mbs = truth_boundaries(g);
    BoundaryUpdate upd = update_markov_boundaries(2, tester, {0, 1}, std::move(mbs));
    CHECK(upd.boundaries.boundary(0).empty());
    CHECK(upd.boundaries.boundary(1).empty());
    CHECK(tester.stats().total_tests == 1);  // the single (0, 1) pair
}

TEST_CASE("update matches recomputed boundaries for every removable vertex") {
    int checked = 0;
    for (uint64_t seed = 0; seed < 160; ++seed) {
        const int n = 2 + static_cast<int>(seed % 7);  // up to 8
        const Dag g = erdos_renyi_dag(n, 0.2 + 0.08 * static_cast<double>(seed % 6), seed + 900);
        const MarkovBoundaries before = truth_boundaries(g);
        for (int x = 0; x < n; ++x) {
            if (!is_removable(g, x)) continue;
            ++checked;
            OracleCiTester oracle(g);
            CountingCiTester tester(oracle);
            const std::vector<int> neighbors = g.neighbors(x);
            BoundaryUpdate upd = update_markov_boundaries(x, tester, neighbors, before);

            // Budget from the neighbor count.
            const long long cap =
                static_cast<long long>(neighbors.size()) * (static_cast<long long>(neighbors.size()) - 1) / 2;
            CAPTURE(seed);
            CAPTURE(x);
            REQUIRE(tester.stats().total_tests <= cap);

            // Expected: boundaries of the graph without x.
            std::vector<int> rest;
            for (int v = 0; v < n; ++v)
                if (v != x) rest.push_back(v);
            const Dag h = induced_subgraph(g, VertexSubset::of(g, rest));
            for (size_t i = 0; i < rest.size(); ++i) {
                std::vector<int> expected;
                for (int w : markov_boundary(h, static_cast<int>(i))) expected.push_back(rest[w]);
                REQUIRE(upd.boundaries.boundary(rest[i]) == expected);
            }

            // Symmetry is preserved.
            for (int a : rest)
                for (int b : upd.boundaries.boundary(a)) REQUIRE(upd.boundaries.contains(b, a));
        }
    }
    CHECK(checked > 200);
}
