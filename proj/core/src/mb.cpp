#include "rslbn/mb.hpp"

#include <algorithm>

namespace rslbn {

namespace {

void sorted_insert(std::vector<int>& xs, int v) {
    auto it = std::lower_bound(xs.begin(), xs.end(), v);
    if (it == xs.end() || *it != v) xs.insert(it, v);
}

bool sorted_erase(std::vector<int>& xs, int v) {
    auto it = std::lower_bound(xs.begin(), xs.end(), v);
    if (it == xs.end() || *it != v) return false;
    xs.erase(it);
    return true;
}

}  // namespace

bool MarkovBoundaries::contains(int v, int w) const {
    return std::binary_search(mb_[v].begin(), mb_[v].end(), w);
}

void MarkovBoundaries::link(int v, int w) {
    sorted_insert(mb_[v], w);
    sorted_insert(mb_[w], v);
}

void MarkovBoundaries::unlink(int v, int w) {
    sorted_erase(mb_[v], w);
    sorted_erase(mb_[w], v);
}

MarkovBoundaries compute_markov_boundaries(CiTester& tester, int n) {
    if (n > tester.variable_count()) throw std::invalid_argument("tester covers fewer variables");
    MarkovBoundaries mbs(n);
    std::vector<int> cond;
    cond.reserve(n > 2 ? n - 2 : 0);
    for (int x = 0; x < n; ++x) {
        for (int y = x + 1; y < n; ++y) {
            cond.clear();
            for (int v = 0; v < n; ++v)
                if (v != x && v != y) cond.push_back(v);
            if (!tester.independent(x, y, cond)) mbs.link(x, y);
        }
    }
    return mbs;
}

BoundaryUpdate update_markov_boundaries(int x, CiTester& tester, const std::vector<int>& neighbors_x,
                                        MarkovBoundaries mbs) {
    std::vector<int> changed = mbs.boundary(x);
    for (int y : changed) mbs.unlink(x, y);

    const bool no_co_parents = neighbors_x == changed;
    mbs.clear(x);

    if (no_co_parents) {
        for (size_t i = 0; i < neighbors_x.size(); ++i) {
            for (size_t j = i + 1; j < neighbors_x.size(); ++j) {
                int y = neighbors_x[i], z = neighbors_x[j];
                if (!mbs.contains(y, z)) continue;  // already separated
                const auto& smaller =
                    mbs.size_of(y) <= mbs.size_of(z) ? mbs.boundary(y) : mbs.boundary(z);
                std::vector<int> cond;
                cond.reserve(smaller.size());
                for (int v : smaller)
                    if (v != y && v != z) cond.push_back(v);
                if (tester.independent(y, z, cond)) mbs.unlink(y, z);
            }
        }
    }
    return BoundaryUpdate{std::move(mbs), std::move(changed)};
}

}  // namespace rslbn
