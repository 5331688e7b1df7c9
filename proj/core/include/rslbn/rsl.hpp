#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "rslbn/ci.hpp"
#include "rslbn/graph.hpp"
#include "rslbn/mb.hpp"

namespace rslbn {

/// Structural side information steering the removability and neighbor
/// subroutines.
struct SideInfo {
    enum class Kind { BoundedClique, DiamondFree };
    Kind kind = Kind::DiamondFree;
    int m = 0;  // clique-number upper bound, >= 1 for BoundedClique

    static SideInfo bounded_clique(int m);
    static SideInfo diamond_free() { return SideInfo{Kind::DiamondFree, 0}; }
};

/// Separating sets recorded for non-neighbor pairs. A pair is never both a
/// learned edge and a key here.
class SepSetMap {
public:
    void set(int x, int y, std::vector<int> s);
    const std::vector<int>* find(int x, int y) const;
    size_t size() const { return entries_.size(); }

    struct Entry {
        int x, y;
        std::vector<int> s;
    };
    /// All entries, sorted by (x, y).
    std::vector<Entry> entries() const;

private:
    std::unordered_map<uint64_t, std::vector<int>> entries_;
};

struct LearnResult {
    Skeleton skeleton;
    SepSetMap sepsets;
    CiStats stats;                   // tests performed by the learner itself
    std::vector<int> removal_order;  // permutation of all vertices
    bool fallback_used = false;      // smallest-boundary fallback fired
};

struct LearnOptions {
    /// When set, equal-boundary-size groups in the removability scan are
    /// permuted by this seed instead of being ordered by vertex index.
    std::optional<uint64_t> tie_seed;
};

/// One pass of the recursion: find a removable vertex, find its neighbors
/// and separating sets, update boundaries, shrink the active set.
/// Consumes the boundary map. Throws no_removable_error only for
/// BoundedClique side information; the diamond-free variant falls back to
/// the smallest-boundary vertex and flags the result instead.
LearnResult learn_skeleton(CountingCiTester& tester, MarkovBoundaries mbs, SideInfo side,
                           const LearnOptions& options = {});

struct AutoResult {
    LearnResult result;
    int m_used = 0;
    int attempts = 0;
    CiStats boundary_stats;            // the C(n,2) discovery tests
    std::vector<CiStats> attempt_stats;  // per clique-bound attempt
};

/// Side-information-free learning: discovers boundaries once, then retries
/// bounded-clique learning for m = 1..n until the output skeleton's clique
/// number verifies the bound. The query cache persists across attempts.
AutoResult learn_skeleton_auto(CountingCiTester& tester, int n, const LearnOptions& options = {});

/// Same, with boundary discovery routed through a separate tester (the two
/// phases may run at different significance levels).
AutoResult learn_skeleton_auto(CountingCiTester& mb_tester, CountingCiTester& learn_tester, int n,
                               const LearnOptions& options = {});

/// All (y, x, z) with skeleton edges y-x, x-z, y and z non-adjacent and
/// x outside the recorded separating set of (y, z). Throws
/// missing_sepset_error when a non-adjacent pair has no entry.
std::vector<std::array<int, 3>> extract_v_structures(const Skeleton& skeleton, const SepSetMap& sepsets);

// Scan subroutines, exposed for targeted tests. `active` must be sorted.

/// Bounded-clique removability scan (ascending boundary size). Returns the
/// first flagged vertex passing the subset condition, clearing flags of
/// vertices that fail. Empty optional when all candidates fail.
std::optional<int> find_removable_bounded_clique(const std::vector<int>& active, CiTester& tester,
                                                 const MarkovBoundaries& mbs, int m,
                                                 std::vector<char>& flags,
                                                 const std::vector<int>& tie_rank);

struct NeighborSplit {
    std::vector<int> neighbors;          // sorted
    std::vector<SepSetMap::Entry> co_parents;  // with witnessing separating sets
};

NeighborSplit find_neighbors_bounded_clique(int x, CiTester& tester, const std::vector<int>& mb_x, int m);

struct RemovableD {
    int vertex = -1;
    bool fallback = false;
};

/// Diamond-free removability scan; total by the smallest-boundary fallback.
RemovableD find_removable_diamond_free(const std::vector<int>& active, CiTester& tester,
                                       const MarkovBoundaries& mbs, std::vector<char>& flags,
                                       const std::vector<int>& tie_rank);

NeighborSplit find_neighbors_diamond_free(int x, CiTester& tester, const std::vector<int>& mb_x);

}  // namespace rslbn
