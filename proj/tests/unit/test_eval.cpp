#include <doctest.h>

#include "rslbn/eval.hpp"
#include "rslbn/fixtures.hpp"

using namespace rslbn;

namespace {

Skeleton path_skeleton(int n) {
    Skeleton s(n);
    for (int i = 0; i + 1 < n; ++i) s.add_edge(i, i + 1);
    return s;
}

}  // namespace

TEST_CASE("perfect recovery scores all ones") {
    const Skeleton truth = path_skeleton(6);
    const SkeletonReport r = score_skeleton(truth, truth);
    CHECK(r.f1 == doctest::Approx(1.0));
    CHECK(r.precision == doctest::Approx(1.0));
    CHECK(r.recall == doctest::Approx(1.0));
    CHECK(r.shd == 0);
}

TEST_CASE("one extra edge costs precision only") {
    const Skeleton truth = path_skeleton(6);  // 5 edges
    Skeleton learned = truth;
    learned.add_edge(0, 5);
    const SkeletonReport r = score_skeleton(truth, learned);
    CHECK(r.precision == doctest::Approx(5.0 / 6.0));
    CHECK(r.recall == doctest::Approx(1.0));
    CHECK(r.shd == 1);
    CHECK(r.extra_edges == 1);
    CHECK(r.missing_edges == 0);
}

TEST_CASE("diamond worst seed: five true edges, one extra") {
    const Skeleton truth = skeleton_of(fixture_dag("diamond-left"));
    Skeleton learned = truth;
    learned.add_edge(1, 2);  // spurious B-C
    const SkeletonReport r = score_skeleton(truth, learned);
    CHECK(r.recall == doctest::Approx(1.0));
    CHECK(r.precision == doctest::Approx(5.0 / 6.0));
}

TEST_CASE("swapping truth and learned swaps precision and recall") {
    const Skeleton a = path_skeleton(7);
    Skeleton b = path_skeleton(7);
    b.add_edge(0, 3);
    b.add_edge(2, 5);
    const SkeletonReport ab = score_skeleton(a, b);
    const SkeletonReport ba = score_skeleton(b, a);
    CHECK(ab.precision == doctest::Approx(ba.recall));
    CHECK(ab.recall == doctest::Approx(ba.precision));
    CHECK(ab.shd == ba.shd);
}

TEST_CASE("empty conventions") {
    const Skeleton none(4);
    const Skeleton some = path_skeleton(4);
    const SkeletonReport both_empty = score_skeleton(none, none);
    CHECK(both_empty.f1 == doctest::Approx(1.0));
    CHECK(both_empty.precision == doctest::Approx(1.0));
    CHECK(both_empty.recall == doctest::Approx(1.0));

    const SkeletonReport learned_empty = score_skeleton(some, none);
    CHECK(learned_empty.precision == doctest::Approx(1.0));
    CHECK(learned_empty.recall == doctest::Approx(0.0));
    CHECK(learned_empty.f1 == doctest::Approx(0.0));

    const SkeletonReport truth_empty = score_skeleton(none, some);
    CHECK(truth_empty.recall == doctest::Approx(1.0));
    CHECK(truth_empty.precision == doctest::Approx(0.0));
    CHECK(truth_empty.f1 == doctest::Approx(0.0));
}

TEST_CASE("disjoint edge sets score zero f1") {
    Skeleton a(4), b(4);
    a.add_edge(0, 1);
    b.add_edge(2, 3);
    const SkeletonReport r = score_skeleton(a, b);
    CHECK(r.f1 == doctest::Approx(0.0));
    CHECK(r.shd == 2);
}

TEST_CASE("size mismatch is rejected") {
    CHECK_THROWS_AS(score_skeleton(Skeleton(3), Skeleton(4)), std::invalid_argument);
}

TEST_CASE("separating-set scoring counts failures against the true dag") {
    const Dag chain = fixture_dag("chain3");
    SepSetMap good;
    good.set(0, 2, {1});
    const SepSetScore ok = score_sepsets(chain, good);
    CHECK(ok.total == 1);
    CHECK(ok.mistakes == 0);
    CHECK(ok.accuracy() == doctest::Approx(1.0));

    // Conditioning on a collider's child breaks the separation.
    const Dag collider = fixture_dag("collider3");
    SepSetMap bad;
    bad.set(0, 1, {2});
    const SepSetScore broken = score_sepsets(collider, bad);
    CHECK(broken.total == 1);
    CHECK(broken.mistakes == 1);
    CHECK(broken.accuracy() == doctest::Approx(0.0));

    SepSetScore empty = score_sepsets(chain, SepSetMap{});
    CHECK(empty.total == 0);
    CHECK(empty.accuracy() == doctest::Approx(1.0));
}
