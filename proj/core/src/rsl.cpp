#include "rslbn/rsl.hpp"

#include <algorithm>

#include "rslbn/synth.hpp"

namespace rslbn {

namespace {

uint64_t pair_key(int x, int y) {
    return (static_cast<uint64_t>(std::min(x, y)) << 32) | static_cast<uint32_t>(std::max(x, y));
}

// k-combinations of {0..n-1} in lexicographic order; f returns true to keep going.
template <typename F>
void for_each_combination(int n, int k, F f) {
    if (k > n || k < 0) return;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        if (!f(idx)) return;
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// mb \ (drop1, drop2, members of S given as indices into mb), plus x when
// include_x, sorted.
std::vector<int> conditioning_set(const std::vector<int>& mb, const std::vector<int>& s_idx, int drop1,
                                  int drop2, int include_x) {
    std::vector<int> cond;
    cond.reserve(mb.size() + 1);
    size_t si = 0;
    for (size_t i = 0; i < mb.size(); ++i) {
        if (si < s_idx.size() && static_cast<int>(i) == s_idx[si]) {
            ++si;
            continue;
        }
        if (mb[i] == drop1 || mb[i] == drop2) continue;
        cond.push_back(mb[i]);
    }
    if (include_x >= 0) {
        auto it = std::lower_bound(cond.begin(), cond.end(), include_x);
        cond.insert(it, include_x);
    }
    return cond;
}

// Eq. condition for the bounded-clique scan: for every S within the size
// budget, all boundary pairs stay dependent given (mb ∪ {x}) \ (S ∪ {Y,Z})
// and every boundary member stays dependent on x given mb \ (S ∪ {Y}).
bool bounded_clique_removable(CiTester& tester, int x, const std::vector<int>& mb, int m) {
    const int max_s = m - 2;
    bool ok = true;
    for (int size = 0; size <= max_s && ok; ++size) {
        if (size > static_cast<int>(mb.size())) break;
        for_each_combination(static_cast<int>(mb.size()), size, [&](const std::vector<int>& s_idx) {
            std::vector<char> in_s(mb.size(), 0);
            for (int i : s_idx) in_s[i] = 1;
            for (size_t i = 0; i < mb.size() && ok; ++i) {
                if (in_s[i]) continue;
                for (size_t j = i + 1; j < mb.size() && ok; ++j) {
                    if (in_s[j]) continue;
                    auto cond = conditioning_set(mb, s_idx, mb[i], mb[j], x);
                    if (tester.independent(mb[i], mb[j], cond)) ok = false;
                }
            }
            for (size_t i = 0; i < mb.size() && ok; ++i) {
                if (in_s[i]) continue;
                auto cond = conditioning_set(mb, s_idx, mb[i], -1, -1);
                if (tester.independent(x, mb[i], cond)) ok = false;
            }
            return ok;
        });
    }
    return ok;
}

bool diamond_free_removable(CiTester& tester, int x, const std::vector<int>& mb) {
    static const std::vector<int> no_s;
    for (size_t i = 0; i < mb.size(); ++i)
        for (size_t j = i + 1; j < mb.size(); ++j) {
            auto cond = conditioning_set(mb, no_s, mb[i], mb[j], x);
            if (tester.independent(mb[i], mb[j], cond)) return false;
        }
    return true;
}

std::vector<int> scan_order(const std::vector<int>& active, const MarkovBoundaries& mbs,
                            const std::vector<int>& tie_rank) {
    std::vector<int> order = active;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (mbs.size_of(a) != mbs.size_of(b)) return mbs.size_of(a) < mbs.size_of(b);
        return tie_rank[a] < tie_rank[b];
    });
    return order;
}

std::vector<int> make_tie_rank(int n, const LearnOptions& options) {
    std::vector<int> rank(n);
    for (int i = 0; i < n; ++i) rank[i] = i;
    if (options.tie_seed) {
        std::vector<int> perm = rank;
        Rng rng(*options.tie_seed);
        rng.shuffle(perm);
        for (int i = 0; i < n; ++i) rank[perm[i]] = i;
    }
    return rank;
}

}  // namespace

SideInfo SideInfo::bounded_clique(int m) {
    if (m < 1) throw std::invalid_argument("clique-number bound must be >= 1");
    return SideInfo{Kind::BoundedClique, m};
}

void SepSetMap::set(int x, int y, std::vector<int> s) { entries_[pair_key(x, y)] = std::move(s); }

const std::vector<int>* SepSetMap::find(int x, int y) const {
    auto it = entries_.find(pair_key(x, y));
    return it == entries_.end() ? nullptr : &it->second;
}

std::vector<SepSetMap::Entry> SepSetMap::entries() const {
    std::vector<Entry> out;
    out.reserve(entries_.size());
    for (const auto& [key, s] : entries_)
        out.push_back(Entry{static_cast<int>(key >> 32), static_cast<int>(key & 0xffffffffu), s});
    std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    return out;
}

std::optional<int> find_removable_bounded_clique(const std::vector<int>& active, CiTester& tester,
                                                 const MarkovBoundaries& mbs, int m,
                                                 std::vector<char>& flags,
                                                 const std::vector<int>& tie_rank) {
    for (int x : scan_order(active, mbs, tie_rank)) {
        if (!flags[x]) continue;
        if (bounded_clique_removable(tester, x, mbs.boundary(x), m)) return x;
        flags[x] = 0;
    }
    return std::nullopt;
}

RemovableD find_removable_diamond_free(const std::vector<int>& active, CiTester& tester,
                                       const MarkovBoundaries& mbs, std::vector<char>& flags,
                                       const std::vector<int>& tie_rank) {
    auto order = scan_order(active, mbs, tie_rank);
    for (int x : order) {
        if (!flags[x]) continue;
        if (diamond_free_removable(tester, x, mbs.boundary(x))) return RemovableD{x, false};
        flags[x] = 0;
    }
    // Nothing qualifies: the graph is not diamond-free. Keep going with the
    // smallest boundary; the output can gain extra edges but never loses one.
    return RemovableD{order.front(), true};
}

NeighborSplit find_neighbors_bounded_clique(int x, CiTester& tester, const std::vector<int>& mb_x,
                                            int m) {
    NeighborSplit out;
    const int n_mb = static_cast<int>(mb_x.size());
    for (int yi = 0; yi < n_mb; ++yi) {
        const int y = mb_x[yi];
        std::vector<int> rest;  // mb_x without y
        rest.reserve(n_mb - 1);
        for (int i = 0; i < n_mb; ++i)
            if (i != yi) rest.push_back(mb_x[i]);
        bool co_parent = false;
        for_each_combination(n_mb - 1, m - 1, [&](const std::vector<int>& s_idx) {
            auto cond = conditioning_set(rest, s_idx, -1, -1, -1);
            if (tester.independent(x, y, cond)) {
                out.co_parents.push_back({x, y, std::move(cond)});
                co_parent = true;
                return false;
            }
            return true;
        });
        if (!co_parent) out.neighbors.push_back(y);
    }
    return out;
}

NeighborSplit find_neighbors_diamond_free(int x, CiTester& tester, const std::vector<int>& mb_x) {
    NeighborSplit out;
    static const std::vector<int> no_s;
    for (int y : mb_x) {
        bool co_parent = false;
        for (int z : mb_x) {
            if (z == y) continue;
            auto cond = conditioning_set(mb_x, no_s, y, z, -1);
            if (tester.independent(x, y, cond)) {
                out.co_parents.push_back({x, y, std::move(cond)});
                co_parent = true;
                break;
            }
        }
        if (!co_parent) out.neighbors.push_back(y);
    }
    return out;
}

LearnResult learn_skeleton(CountingCiTester& tester, MarkovBoundaries mbs, SideInfo side,
                           const LearnOptions& options) {
    if (side.kind == SideInfo::Kind::BoundedClique && side.m < 1)
        throw std::invalid_argument("clique-number bound must be >= 1");
    const int n = mbs.vertex_count();
    tester.reset_phase();

    LearnResult result;
    result.skeleton = Skeleton(n);

    std::vector<int> active(n);
    for (int i = 0; i < n; ++i) active[i] = i;
    std::vector<char> flags(n, 1);
    const std::vector<int> tie_rank = make_tie_rank(n, options);

    while (active.size() > 1) {
        int x;
        if (side.kind == SideInfo::Kind::BoundedClique) {
            auto found = find_removable_bounded_clique(active, tester, mbs, side.m, flags, tie_rank);
            if (!found)
                throw no_removable_error("no removable vertex under clique bound " +
                                         std::to_string(side.m));
            x = *found;
        } else {
            auto found = find_removable_diamond_free(active, tester, mbs, flags, tie_rank);
            x = found.vertex;
            result.fallback_used |= found.fallback;
        }

        const std::vector<int> mb_x = mbs.boundary(x);
        NeighborSplit split = side.kind == SideInfo::Kind::BoundedClique
                                  ? find_neighbors_bounded_clique(x, tester, mb_x, side.m)
                                  : find_neighbors_diamond_free(x, tester, mb_x);

        for (int nb : split.neighbors) result.skeleton.add_edge(x, nb);
        for (auto& entry : split.co_parents) result.sepsets.set(entry.x, entry.y, std::move(entry.s));
        // Everything outside the boundary is separated by the boundary itself.
        {
            auto mb_it = mb_x.begin();
            for (int y : active) {
                while (mb_it != mb_x.end() && *mb_it < y) ++mb_it;
                if (y == x || (mb_it != mb_x.end() && *mb_it == y)) continue;
                result.sepsets.set(x, y, mb_x);
            }
        }

        BoundaryUpdate update = update_markov_boundaries(x, tester, split.neighbors, std::move(mbs));
        mbs = std::move(update.boundaries);
        for (int v : update.changed) flags[v] = 1;

        active.erase(std::lower_bound(active.begin(), active.end(), x));
        result.removal_order.push_back(x);
    }
    if (!active.empty()) result.removal_order.push_back(active.front());
    result.stats = tester.phase_stats();
    return result;
}

AutoResult learn_skeleton_auto(CountingCiTester& tester, int n, const LearnOptions& options) {
    return learn_skeleton_auto(tester, tester, n, options);
}

AutoResult learn_skeleton_auto(CountingCiTester& mb_tester, CountingCiTester& learn_tester, int n,
                               const LearnOptions& options) {
    AutoResult out;
    mb_tester.reset_phase();
    MarkovBoundaries mbs = compute_markov_boundaries(mb_tester, n);
    out.boundary_stats = mb_tester.phase_stats();

    for (int m = 1; m <= std::max(1, n); ++m) {
        ++out.attempts;
        try {
            LearnResult r = learn_skeleton(learn_tester, mbs, SideInfo::bounded_clique(m), options);
            out.attempt_stats.push_back(r.stats);
            if (clique_number(r.skeleton) <= m) {
                out.result = std::move(r);
                out.m_used = m;
                return out;
            }
        } catch (const no_removable_error&) {
            out.attempt_stats.push_back(learn_tester.phase_stats());
        }
    }
    throw auto_exhausted_error("no clique bound up to n produced a verified skeleton");
}

std::vector<std::array<int, 3>> extract_v_structures(const Skeleton& skeleton, const SepSetMap& sepsets) {
    std::vector<std::array<int, 3>> out;
    for (int x = 0; x < skeleton.vertex_count(); ++x) {
        const auto& nbrs = skeleton.neighbors(x);
        for (size_t i = 0; i < nbrs.size(); ++i) {
            for (size_t j = i + 1; j < nbrs.size(); ++j) {
                int y = nbrs[i], z = nbrs[j];
                if (skeleton.has_edge(y, z)) continue;
                const std::vector<int>* s = sepsets.find(y, z);
                if (!s)
                    throw missing_sepset_error("no separating set recorded for " + std::to_string(y) +
                                               ", " + std::to_string(z));
                if (!std::binary_search(s->begin(), s->end(), x)) out.push_back({y, x, z});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace rslbn
