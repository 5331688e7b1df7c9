#pragma once

#include <vector>

#include "rslbn/ci.hpp"

namespace rslbn {

/// Per-vertex Markov boundaries over the currently active vertex subset.
/// Symmetric by construction: y in boundary(x) iff x in boundary(y).
class MarkovBoundaries {
public:
    MarkovBoundaries() = default;
    explicit MarkovBoundaries(int n) : mb_(n) {}

    int vertex_count() const { return static_cast<int>(mb_.size()); }
    const std::vector<int>& boundary(int v) const { return mb_[v]; }
    int size_of(int v) const { return static_cast<int>(mb_[v].size()); }
    bool contains(int v, int w) const;

    void link(int v, int w);    // insert each into the other's boundary
    void unlink(int v, int w);  // remove each from the other's boundary
    void clear(int v) { mb_[v].clear(); }

private:
    std::vector<std::vector<int>> mb_;
};

/// Total-conditioning boundary discovery: one test per unordered pair,
/// x ⊥ y | V \ {x, y}; exactly C(n, 2) tests.
MarkovBoundaries compute_markov_boundaries(CiTester& tester, int n);

struct BoundaryUpdate {
    MarkovBoundaries boundaries;
    std::vector<int> changed;  // vertices whose boundary shrank, sorted
};

/// Removes x from every boundary, then — only when x had no co-parents
/// (neighbors == boundary(x)) — tests each neighbor pair given the smaller
/// of the two updated boundaries and unlinks independent pairs. At most
/// C(|neighbors_x|, 2) tests.
BoundaryUpdate update_markov_boundaries(int x, CiTester& tester, const std::vector<int>& neighbors_x,
                                        MarkovBoundaries mbs);

}  // namespace rslbn
