#include "rslbn/eval.hpp"

#include <algorithm>

namespace rslbn {

SkeletonReport score_skeleton(const Skeleton& truth, const Skeleton& learned) {
    if (truth.vertex_count() != learned.vertex_count())
        throw std::invalid_argument("skeleton vertex counts differ");
    const auto true_edges = truth.edges();
    const auto learned_edges = learned.edges();
    int tp = 0;
    for (const auto& e : learned_edges)
        if (truth.has_edge(e.first, e.second)) ++tp;

    SkeletonReport r;
    r.extra_edges = static_cast<int>(learned_edges.size()) - tp;
    r.missing_edges = static_cast<int>(true_edges.size()) - tp;
    r.shd = r.extra_edges + r.missing_edges;
    r.precision = learned_edges.empty() ? 1.0 : static_cast<double>(tp) / learned_edges.size();
    r.recall = true_edges.empty() ? 1.0 : static_cast<double>(tp) / true_edges.size();
    if (true_edges.empty() && learned_edges.empty())
        r.f1 = 1.0;
    else if (true_edges.empty() || learned_edges.empty())
        r.f1 = 0.0;
    else
        r.f1 = r.precision + r.recall > 0.0 ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
                                            : 0.0;
    return r;
}

SepSetScore score_sepsets(const Dag& truth, const SepSetMap& sepsets) {
    SepSetScore score;
    for (const auto& entry : sepsets.entries()) {
        ++score.total;
        if (!d_separated(truth, entry.x, entry.y, entry.s)) ++score.mistakes;
    }
    return score;
}

}  // namespace rslbn
