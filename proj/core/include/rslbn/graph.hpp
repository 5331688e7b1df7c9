#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rslbn/errors.hpp"

namespace rslbn {

/// Directed acyclic graph over dense 0-based vertex indices.
/// Immutable after construction; acyclicity is validated at build time.
class Dag {
public:
    Dag() = default;
    explicit Dag(int n);

    /// Builds a DAG from directed (u, v) pairs meaning u -> v.
    /// Throws invalid_vertex_error on out-of-range indices or self-loops,
    /// parse_error on directed cycles and duplicate edges.
    static Dag from_edges(int n, std::span<const std::pair<int, int>> edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return edge_count_; }

    const std::vector<int>& parents(int v) const;
    const std::vector<int>& children(int v) const;

    /// Parents and children, sorted.
    std::vector<int> neighbors(int v) const;

    /// Non-neighbors sharing at least one child with v, sorted.
    std::vector<int> co_parents(int v) const;

    bool has_edge(int u, int v) const;       // directed u -> v
    bool adjacent(int u, int v) const;       // either direction

    std::vector<std::pair<int, int>> edges() const;  // sorted (u, v) pairs

    /// One topological order (parents before children).
    std::vector<int> topological_order() const;

    int max_in_degree() const;
    int max_degree() const;

    void check_vertex(int v) const;

private:
    int n_ = 0;
    int edge_count_ = 0;
    std::vector<std::vector<int>> parents_;
    std::vector<std::vector<int>> children_;
};

/// Undirected graph stored as canonical (lo, hi) pairs plus adjacency lists.
class Skeleton {
public:
    Skeleton() = default;
    explicit Skeleton(int n);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    void add_edge(int u, int v);
    bool has_edge(int u, int v) const;

    const std::vector<int>& neighbors(int v) const;
    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

    /// Canonical (lo, hi) pairs in lexicographic order.
    std::vector<std::pair<int, int>> edges() const;

    void check_vertex(int v) const;

private:
    int n_ = 0;
    std::vector<std::vector<int>> adj_;
    std::vector<uint64_t> edges_;  // packed lo<<32|hi, kept sorted
};

/// Skeleton (undirected version) of a DAG.
Skeleton skeleton_of(const Dag& g);

/// Sorted subset of the vertex range of some DAG.
struct VertexSubset {
    std::vector<int> active;  // sorted, unique

    static VertexSubset of(const Dag& g, std::vector<int> vertices);
};

/// True iff s d-separates x and y. Linear-time ancestral-moral reachability:
/// restrict to ancestors of {x, y} union s, moralize, test undirected
/// reachability from x to y avoiding s.
bool d_separated(const Dag& g, int x, int y, std::span<const int> s);

/// The induced DAG on vs, re-indexed so vertex i corresponds to vs.active[i].
Dag induced_subgraph(const Dag& g, const VertexSubset& vs);

/// True iff no four skeleton vertices induce exactly five edges (K4 minus
/// one edge). Scans each edge for a pair of non-adjacent common neighbors.
bool is_diamond_free(const Dag& g);
bool is_diamond_free(const Skeleton& s);

/// Exact clique number of the skeleton (Bron-Kerbosch with pivoting).
int clique_number(const Dag& g);
int clique_number(const Skeleton& s);

/// Graph-side removability: deleting x preserves every d-separation
/// relation among the remaining vertices. Checked structurally: for every
/// child w of x, (1) all neighbors of x are adjacent to or equal w, and
/// (2) parents of any y in Ch(x) ∩ Pa(w) are parents of w.
bool is_removable(const Dag& g, int x);

/// Pa(x) ∪ Ch(x) ∪ CP(x), sorted.
std::vector<int> markov_boundary(const Dag& g, int x);

/// All (y, x, z) with y -> x <- z, y < z, y and z non-adjacent. Sorted.
std::vector<std::array<int, 3>> v_structures(const Dag& g);

}  // namespace rslbn
