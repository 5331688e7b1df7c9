#include "rslbn/graph.hpp"

#include <algorithm>
#include <bit>
#include <queue>
#include <string>

namespace rslbn {

namespace {

std::string vertex_msg(const char* what, int v) {
    return std::string(what) + ": vertex " + std::to_string(v);
}

bool sorted_contains(const std::vector<int>& xs, int v) {
    return std::binary_search(xs.begin(), xs.end(), v);
}

void sorted_insert(std::vector<int>& xs, int v) {
    auto it = std::lower_bound(xs.begin(), xs.end(), v);
    if (it == xs.end() || *it != v) xs.insert(it, v);
}

}  // namespace

Dag::Dag(int n) : n_(n), parents_(n), children_(n) {
    if (n < 0) throw invalid_vertex_error("negative vertex count");
}

Dag Dag::from_edges(int n, std::span<const std::pair<int, int>> edges) {
    Dag g(n);
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw invalid_vertex_error(vertex_msg("edge endpoint out of range", u < 0 || u >= n ? u : v));
        if (u == v) throw invalid_vertex_error(vertex_msg("self-loop", u));
        if (sorted_contains(g.parents_[v], u))
            throw parse_error("duplicate edge " + std::to_string(u) + " -> " + std::to_string(v));
        sorted_insert(g.parents_[v], u);
        sorted_insert(g.children_[u], v);
        ++g.edge_count_;
    }
    // Kahn's algorithm; leftover vertices mean a directed cycle.
    std::vector<int> indeg(n);
    for (int v = 0; v < n; ++v) indeg[v] = static_cast<int>(g.parents_[v].size());
    std::queue<int> q;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) q.push(v);
    int seen = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        ++seen;
        for (int c : g.children_[v])
            if (--indeg[c] == 0) q.push(c);
    }
    if (seen != n) throw parse_error("edge list contains a directed cycle");
    return g;
}

void Dag::check_vertex(int v) const {
    if (v < 0 || v >= n_) throw invalid_vertex_error(vertex_msg("out of range", v));
}

const std::vector<int>& Dag::parents(int v) const {
    check_vertex(v);
    return parents_[v];
}

const std::vector<int>& Dag::children(int v) const {
    check_vertex(v);
    return children_[v];
}

std::vector<int> Dag::neighbors(int v) const {
    check_vertex(v);
    std::vector<int> out;
    out.reserve(parents_[v].size() + children_[v].size());
    std::set_union(parents_[v].begin(), parents_[v].end(), children_[v].begin(), children_[v].end(),
                   std::back_inserter(out));
    return out;
}

std::vector<int> Dag::co_parents(int v) const {
    check_vertex(v);
    std::vector<int> out;
    for (int c : children_[v]) {
        for (int p : parents_[c]) {
            if (p == v || adjacent(p, v)) continue;
            sorted_insert(out, p);
        }
    }
    return out;
}

bool Dag::has_edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    return sorted_contains(parents_[v], u);
}

bool Dag::adjacent(int u, int v) const { return has_edge(u, v) || has_edge(v, u); }

std::vector<std::pair<int, int>> Dag::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count_);
    for (int u = 0; u < n_; ++u)
        for (int v : children_[u]) out.emplace_back(u, v);
    return out;
}

std::vector<int> Dag::topological_order() const {
    std::vector<int> indeg(n_), order;
    order.reserve(n_);
    for (int v = 0; v < n_; ++v) indeg[v] = static_cast<int>(parents_[v].size());
    std::queue<int> q;
    for (int v = 0; v < n_; ++v)
        if (indeg[v] == 0) q.push(v);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        order.push_back(v);
        for (int c : children_[v])
            if (--indeg[c] == 0) q.push(c);
    }
    return order;
}

int Dag::max_in_degree() const {
    int m = 0;
    for (int v = 0; v < n_; ++v) m = std::max(m, static_cast<int>(parents_[v].size()));
    return m;
}

int Dag::max_degree() const {
    int m = 0;
    for (int v = 0; v < n_; ++v)
        m = std::max(m, static_cast<int>(parents_[v].size() + children_[v].size()));
    return m;
}

Skeleton::Skeleton(int n) : n_(n), adj_(n) {
    if (n < 0) throw invalid_vertex_error("negative vertex count");
}

void Skeleton::check_vertex(int v) const {
    if (v < 0 || v >= n_) throw invalid_vertex_error(vertex_msg("out of range", v));
}

void Skeleton::add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw invalid_vertex_error(vertex_msg("self-loop", u));
    if (has_edge(u, v)) return;
    sorted_insert(adj_[u], v);
    sorted_insert(adj_[v], u);
    uint64_t key = (static_cast<uint64_t>(std::min(u, v)) << 32) | static_cast<uint32_t>(std::max(u, v));
    auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
    edges_.insert(it, key);
}

bool Skeleton::has_edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    return sorted_contains(adj_[u], v);
}

const std::vector<int>& Skeleton::neighbors(int v) const {
    check_vertex(v);
    return adj_[v];
}

std::vector<std::pair<int, int>> Skeleton::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edges_.size());
    for (uint64_t key : edges_)
        out.emplace_back(static_cast<int>(key >> 32), static_cast<int>(key & 0xffffffffu));
    return out;
}

Skeleton skeleton_of(const Dag& g) {
    Skeleton s(g.vertex_count());
    for (auto [u, v] : g.edges()) s.add_edge(u, v);
    return s;
}

VertexSubset VertexSubset::of(const Dag& g, std::vector<int> vertices) {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    for (int v : vertices) g.check_vertex(v);
    return VertexSubset{std::move(vertices)};
}

bool d_separated(const Dag& g, int x, int y, std::span<const int> s) {
    g.check_vertex(x);
    g.check_vertex(y);
    if (x == y) throw invalid_vertex_error("d-separation query with x == y");
    for (int v : s) {
        g.check_vertex(v);
        if (v == x || v == y)
            throw invalid_vertex_error(vertex_msg("conditioning set contains an endpoint", v));
    }

    const int n = g.vertex_count();
    std::vector<char> in_s(n, 0);
    for (int v : s) in_s[v] = 1;

    // Ancestors of {x, y} ∪ s, seeds included.
    std::vector<char> anc(n, 0);
    std::vector<int> stack;
    auto push_anc = [&](int v) {
        if (!anc[v]) {
            anc[v] = 1;
            stack.push_back(v);
        }
    };
    push_anc(x);
    push_anc(y);
    for (int v : s) push_anc(v);
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int p : g.parents(v)) push_anc(p);
    }

    // Moralized adjacency restricted to the ancestral set.
    std::vector<std::vector<int>> moral(n);
    for (int v = 0; v < n; ++v) {
        if (!anc[v]) continue;
        const auto& pa = g.parents(v);
        for (int p : pa) {
            moral[v].push_back(p);
            moral[p].push_back(v);
        }
        for (size_t i = 0; i < pa.size(); ++i)
            for (size_t j = i + 1; j < pa.size(); ++j) {
                moral[pa[i]].push_back(pa[j]);
                moral[pa[j]].push_back(pa[i]);
            }
    }

    // Undirected reachability from x, never entering s.
    std::vector<char> visited(n, 0);
    visited[x] = 1;
    stack.push_back(x);
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : moral[v]) {
            if (visited[w] || in_s[w]) continue;
            if (w == y) return false;
            visited[w] = 1;
            stack.push_back(w);
        }
    }
    return true;
}

Dag induced_subgraph(const Dag& g, const VertexSubset& vs) {
    const auto& keep = vs.active;
    std::vector<int> pos(g.vertex_count(), -1);
    for (size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : g.edges())
        if (pos[u] >= 0 && pos[v] >= 0) edges.emplace_back(pos[u], pos[v]);
    return Dag::from_edges(static_cast<int>(keep.size()), edges);
}

bool is_diamond_free(const Skeleton& s) {
    for (auto [u, v] : s.edges()) {
        std::vector<int> common;
        std::set_intersection(s.neighbors(u).begin(), s.neighbors(u).end(), s.neighbors(v).begin(),
                              s.neighbors(v).end(), std::back_inserter(common));
        for (size_t i = 0; i < common.size(); ++i)
            for (size_t j = i + 1; j < common.size(); ++j)
                if (!s.has_edge(common[i], common[j])) return false;
    }
    return true;
}

bool is_diamond_free(const Dag& g) { return is_diamond_free(skeleton_of(g)); }

namespace {

// Word-array vertex mask for the clique search.
class Mask {
public:
    explicit Mask(int n) : bits_((n + 63) / 64, 0) {}
    void set(int v) { bits_[v >> 6] |= uint64_t{1} << (v & 63); }
    void clear(int v) { bits_[v >> 6] &= ~(uint64_t{1} << (v & 63)); }
    bool test(int v) const { return (bits_[v >> 6] >> (v & 63)) & 1; }
    bool empty() const {
        for (uint64_t w : bits_)
            if (w) return false;
        return true;
    }
    int count() const {
        int c = 0;
        for (uint64_t w : bits_) c += std::popcount(w);
        return c;
    }
    Mask intersect(const Mask& o) const {
        Mask r = *this;
        for (size_t i = 0; i < bits_.size(); ++i) r.bits_[i] &= o.bits_[i];
        return r;
    }
    int intersect_count(const Mask& o) const {
        int c = 0;
        for (size_t i = 0; i < bits_.size(); ++i) c += std::popcount(bits_[i] & o.bits_[i]);
        return c;
    }
    template <typename F>
    void for_each(F f) const {
        for (size_t i = 0; i < bits_.size(); ++i) {
            uint64_t w = bits_[i];
            while (w) {
                int b = std::countr_zero(w);
                f(static_cast<int>(i * 64 + b));
                w &= w - 1;
            }
        }
    }

private:
    std::vector<uint64_t> bits_;
};

struct CliqueSearch {
    const std::vector<Mask>& adj;
    int best = 0;

    void run(int r_size, Mask p, Mask x) {
        if (p.empty() && x.empty()) {
            best = std::max(best, r_size);
            return;
        }
        if (r_size + p.count() <= best) return;
        // Pivot on the vertex covering most of P.
        int pivot = -1, cover = -1;
        auto consider = [&](int v) {
            int c = p.intersect_count(adj[v]);
            if (c > cover) {
                cover = c;
                pivot = v;
            }
        };
        p.for_each(consider);
        x.for_each(consider);
        std::vector<int> candidates;
        p.for_each([&](int v) {
            if (!adj[pivot].test(v)) candidates.push_back(v);
        });
        for (int v : candidates) {
            run(r_size + 1, p.intersect(adj[v]), x.intersect(adj[v]));
            p.clear(v);
            x.set(v);
        }
    }
};

}  // namespace

int clique_number(const Skeleton& s) {
    const int n = s.vertex_count();
    if (n == 0) return 0;
    std::vector<Mask> adj(n, Mask(n));
    for (int v = 0; v < n; ++v)
        for (int w : s.neighbors(v)) adj[v].set(w);
    CliqueSearch search{adj};
    search.best = 1;
    Mask p(n), x(n);
    for (int v = 0; v < n; ++v) p.set(v);
    search.run(0, p, x);
    return search.best;
}

int clique_number(const Dag& g) { return clique_number(skeleton_of(g)); }

bool is_removable(const Dag& g, int x) {
    g.check_vertex(x);
    const auto nx = g.neighbors(x);
    for (int w : g.children(x)) {
        for (int u : nx) {
            if (u == w || g.adjacent(u, w)) continue;
            return false;  // condition 1
        }
        for (int y : g.children(x)) {
            if (y == w || !g.has_edge(y, w)) continue;
            for (int p : g.parents(y))
                if (p != w && !g.has_edge(p, w)) return false;  // condition 2
        }
    }
    return true;
}

std::vector<int> markov_boundary(const Dag& g, int x) {
    std::vector<int> mb = g.neighbors(x);
    for (int c : g.children(x))
        for (int p : g.parents(c)) {
            if (p == x) continue;
            auto it = std::lower_bound(mb.begin(), mb.end(), p);
            if (it == mb.end() || *it != p) mb.insert(it, p);
        }
    return mb;
}

std::vector<std::array<int, 3>> v_structures(const Dag& g) {
    std::vector<std::array<int, 3>> out;
    for (int x = 0; x < g.vertex_count(); ++x) {
        const auto& pa = g.parents(x);
        for (size_t i = 0; i < pa.size(); ++i)
            for (size_t j = i + 1; j < pa.size(); ++j)
                if (!g.adjacent(pa[i], pa[j])) out.push_back({pa[i], x, pa[j]});
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace rslbn
