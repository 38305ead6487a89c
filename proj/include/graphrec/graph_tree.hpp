#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "binmatrix.hpp"

namespace graphrec {

enum class Origin : unsigned char { row, column, virtual_edge };

inline const char* origin_prefix(Origin o) {
    switch (o) {
    case Origin::row: return "r";
    case Origin::column: return "c";
    default: return "v";
    }
}

struct GraphEdge {
    int u = 0;
    int v = 0;
    Origin origin = Origin::column;
    int index = 0;   // matrix row or column index
    bool in_tree = false;
};

// An explicit realization (G, T): rows of the matrix are the tree edges,
// columns the remaining edges.
struct GraphTreePair {
    int num_vertices = 0;
    std::vector<GraphEdge> edges;

    int add_vertex() { return num_vertices++; }
    void add_edge(int u, int v, Origin o, int index, bool tree) { edges.push_back({u, v, o, index, tree}); }

    int count_tree_edges() const {
        return static_cast<int>(std::count_if(edges.begin(), edges.end(), [](const GraphEdge& e) { return e.in_tree; }));
    }
};

namespace detail {

struct RootedTree {
    std::vector<int> parent, parent_edge, depth, order;
};

// BFS over the tree edges from vertex 0; returns nullopt when the tree edges
// do not form a spanning tree.
inline std::optional<RootedTree> root_tree(const GraphTreePair& g) {
    const int n = g.num_vertices;
    if (n == 0) return RootedTree{};
    std::vector<std::vector<std::pair<int, int>>> adj(n);
    int tree_edges = 0;
    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) {
        const auto& e = g.edges[i];
        if (!e.in_tree) continue;
        if (e.u == e.v) return std::nullopt;
        ++tree_edges;
        adj[e.u].push_back({e.v, i});
        adj[e.v].push_back({e.u, i});
    }
    if (tree_edges != n - 1) return std::nullopt;
    RootedTree t;
    t.parent.assign(n, -1);
    t.parent_edge.assign(n, -1);
    t.depth.assign(n, -1);
    t.depth[0] = 0;
    t.order.push_back(0);
    for (std::size_t k = 0; k < t.order.size(); ++k) {
        int x = t.order[k];
        for (auto [y, ei] : adj[x])
            if (t.depth[y] < 0) {
                t.depth[y] = t.depth[x] + 1;
                t.parent[y] = x;
                t.parent_edge[y] = ei;
                t.order.push_back(y);
            }
    }
    if (static_cast<int>(t.order.size()) != n) return std::nullopt;
    return t;
}

// Edge indices of the tree path between a and b.
inline std::vector<int> tree_path(const RootedTree& t, int a, int b) {
    std::vector<int> left, right;
    while (t.depth[a] > t.depth[b]) { left.push_back(t.parent_edge[a]); a = t.parent[a]; }
    while (t.depth[b] > t.depth[a]) { right.push_back(t.parent_edge[b]); b = t.parent[b]; }
    while (a != b) {
        left.push_back(t.parent_edge[a]);
        a = t.parent[a];
        right.push_back(t.parent_edge[b]);
        b = t.parent[b];
    }
    left.insert(left.end(), right.rbegin(), right.rend());
    return left;
}

} // namespace detail

inline bool is_spanning_tree(const GraphTreePair& g) { return detail::root_tree(g).has_value(); }

// Rows are the tree edges ordered by origin index, columns the non-tree edges
// ordered by origin index; entry 1 iff the row edge lies on the column's
// fundamental path.
inline SparseBinaryMatrix representation_matrix(const GraphTreePair& g) {
    auto rt = detail::root_tree(g);
    if (!rt) throw std::invalid_argument("tree edges do not form a spanning tree");
    std::vector<int> tree_ids, cotree_ids;
    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i)
        (g.edges[i].in_tree ? tree_ids : cotree_ids).push_back(i);
    auto by_index = [&](int a, int b) { return g.edges[a].index < g.edges[b].index; };
    std::sort(tree_ids.begin(), tree_ids.end(), by_index);
    std::sort(cotree_ids.begin(), cotree_ids.end(), by_index);
    std::vector<int> row_of(g.edges.size(), -1);
    for (std::size_t k = 0; k < tree_ids.size(); ++k) row_of[tree_ids[k]] = static_cast<int>(k);
    std::vector<std::vector<int>> rows(tree_ids.size());
    for (std::size_t k = 0; k < cotree_ids.size(); ++k) {
        const auto& e = g.edges[cotree_ids[k]];
        for (int te : detail::tree_path(*rt, e.u, e.v)) rows[row_of[te]].push_back(static_cast<int>(k));
    }
    SparseBinaryMatrix M(static_cast<int>(tree_ids.size()), static_cast<int>(cotree_ids.size()), std::move(rows));
    std::vector<std::string> rl, cl;
    for (int i : tree_ids) rl.push_back("r" + std::to_string(g.edges[i].index + 1));
    for (int i : cotree_ids) cl.push_back("c" + std::to_string(g.edges[i].index + 1));
    M.set_labels(std::move(rl), std::move(cl));
    return M;
}

// True iff the certificate's tree edges are exactly rows 0..m-1, its other
// edges exactly columns 0..n-1, and its representation matrix equals M.
inline bool verify_realization(const SparseBinaryMatrix& M, const GraphTreePair& cert) {
    std::vector<int> rows_seen(M.num_rows(), 0), cols_seen(M.num_cols(), 0);
    for (const auto& e : cert.edges) {
        if (e.u < 0 || e.v < 0 || e.u >= cert.num_vertices || e.v >= cert.num_vertices) return false;
        if (e.in_tree) {
            if (e.origin != Origin::row || e.index < 0 || e.index >= M.num_rows() || rows_seen[e.index]++) return false;
        } else {
            if (e.origin != Origin::column || e.index < 0 || e.index >= M.num_cols() || cols_seen[e.index]++)
                return false;
        }
    }
    for (int s : rows_seen)
        if (!s) return false;
    for (int s : cols_seen)
        if (!s) return false;
    if (!is_spanning_tree(cert)) return false;
    return representation_matrix(cert).same_pattern(M);
}

// Plain multigraph helpers used by validation and by the test oracles.
struct SimpleGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
};

inline bool is_connected_without(const SimpleGraph& g, const std::vector<char>& removed) {
    std::vector<std::vector<int>> adj(g.n);
    for (auto [a, b] : g.edges)
        if (!removed[a] && !removed[b]) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
    int start = -1, alive = 0;
    for (int v = 0; v < g.n; ++v)
        if (!removed[v]) {
            ++alive;
            if (start < 0) start = v;
        }
    if (alive <= 1) return true;
    std::vector<char> seen(g.n, 0);
    std::vector<int> st{start};
    seen[start] = 1;
    int cnt = 1;
    while (!st.empty()) {
        int x = st.back();
        st.pop_back();
        for (int y : adj[x])
            if (!seen[y]) {
                seen[y] = 1;
                ++cnt;
                st.push_back(y);
            }
    }
    return cnt == alive;
}

inline bool is_connected(const SimpleGraph& g) { return is_connected_without(g, std::vector<char>(g.n, 0)); }

// k-vertex-connectivity by brute force; intended for small graphs.
inline bool is_k_connected(const SimpleGraph& g, int k) {
    if (g.n <= k) return false;
    std::vector<char> removed(g.n, 0);
    if (!is_connected(g)) return false;
    if (k >= 2)
        for (int a = 0; a < g.n; ++a) {
            removed[a] = 1;
            if (!is_connected_without(g, removed)) return false;
            if (k >= 3)
                for (int b = a + 1; b < g.n; ++b) {
                    removed[b] = 1;
                    bool ok = is_connected_without(g, removed);
                    removed[b] = 0;
                    if (!ok) return false;
                }
            removed[a] = 0;
        }
    return true;
}

// 2-connected in the block sense: a single edge or a loop-free bond counts.
inline bool is_biconnected_multigraph(const SimpleGraph& g) {
    for (auto [a, b] : g.edges)
        if (a == b) return false;
    if (g.n <= 2) return is_connected(g) && !g.edges.empty();
    return is_k_connected(g, 2);
}

inline bool is_simple(const SimpleGraph& g) {
    std::vector<std::pair<int, int>> e;
    for (auto [a, b] : g.edges) {
        if (a == b) return false;
        e.push_back({std::min(a, b), std::max(a, b)});
    }
    std::sort(e.begin(), e.end());
    return std::adjacent_find(e.begin(), e.end()) == e.end();
}

inline SimpleGraph underlying_graph(const GraphTreePair& g) {
    SimpleGraph s;
    s.n = g.num_vertices;
    for (const auto& e : g.edges) s.edges.push_back({e.u, e.v});
    return s;
}

} // namespace graphrec
