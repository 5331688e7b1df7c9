#pragma once

#include "rslbn/graph.hpp"
#include "rslbn/rsl.hpp"

namespace rslbn {

/// Skeleton-recovery metrics over unordered vertex pairs.
struct SkeletonReport {
    double f1 = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    int shd = 0;  // extra + missing
    int extra_edges = 0;
    int missing_edges = 0;
};

/// Empty-edge conventions: precision 1 when the learned skeleton has no
/// edges, recall 1 when the truth has none; f1 is 1 when both are empty and
/// 0 when exactly one is.
SkeletonReport score_skeleton(const Skeleton& truth, const Skeleton& learned);

struct SepSetScore {
    long long total = 0;
    long long mistakes = 0;

    double accuracy() const {
        return total > 0 ? 1.0 - static_cast<double>(mistakes) / static_cast<double>(total) : 1.0;
    }
};

/// An entry is a mistake when its set fails to d-separate the pair in the
/// true DAG.
SepSetScore score_sepsets(const Dag& truth, const SepSetMap& sepsets);

}  // namespace rslbn
