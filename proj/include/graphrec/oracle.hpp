#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "binmatrix.hpp"
#include "graph_tree.hpp"
#include "union_find.hpp"

namespace graphrec {

class OracleScaleError : public std::runtime_error {
public:
    OracleScaleError() : std::runtime_error("oracle scale exceeded") {}
};

inline constexpr int kOracleMaxBlockRows = 8;

struct OracleVerdict {
    bool graphic = false;
    std::optional<GraphTreePair> witness;
    std::uint64_t trees_checked = 0;
};

namespace detail {

// Labeled tree on vertices 0..k from a Prufer sequence of length k-1;
// returns the parent of every vertex when rooted at 0.
inline std::vector<int> prufer_parents(const std::vector<int>& seq, int nv) {
    std::vector<int> degree(nv, 1);
    for (int x : seq) ++degree[x];
    std::vector<std::vector<int>> adj(nv);
    for (int x : seq) {
        int leaf = 0;
        while (degree[leaf] != 1) ++leaf;
        adj[leaf].push_back(x);
        adj[x].push_back(leaf);
        --degree[leaf];
        --degree[x];
    }
    int u = -1, w = -1;
    for (int v = 0; v < nv; ++v)
        if (degree[v] == 1) (u < 0 ? u : w) = v;
    adj[u].push_back(w);
    adj[w].push_back(u);
    std::vector<int> parent(nv, -1), order{0};
    std::vector<char> seen(nv, 0);
    seen[0] = 1;
    for (std::size_t k = 0; k < order.size(); ++k)
        for (int y : adj[order[k]])
            if (!seen[y]) {
                seen[y] = 1;
                parent[y] = order[k];
                order.push_back(y);
            }
    return parent;
}

// Support (row set) is a path in the tree iff the edges form a connected
// subgraph with exactly two odd-degree vertices. Returns the path ends.
inline std::optional<std::pair<int, int>> support_path(const std::vector<int>& parent, const std::vector<int>& rows) {
    const int nv = static_cast<int>(parent.size());
    if (rows.empty()) return std::pair{0, 0};
    std::vector<int> deg(nv, 0);
    UnionFind uf(nv);
    for (int r : rows) {
        int a = r + 1, b = parent[r + 1];
        ++deg[a];
        ++deg[b];
        uf.unite_into(a, b);
    }
    int odd[2], nodd = 0, comp = -1;
    for (int v = 0; v < nv; ++v) {
        if (!deg[v]) continue;
        if (comp < 0) comp = uf.find(v);
        else if (uf.find(v) != comp) return std::nullopt;
        if (deg[v] % 2) {
            if (nodd == 2) return std::nullopt;
            odd[nodd++] = v;
        }
    }
    if (nodd != 2) return std::nullopt;
    return std::pair{odd[0], odd[1]};
}

struct BlockWitness {
    std::vector<int> parent;
    std::vector<std::pair<int, int>> column_ends;
};

// Enumerates all (k+1)^(k-1) labeled trees for a connected block.
inline std::optional<BlockWitness> oracle_block(const SparseBinaryMatrix& B, std::uint64_t& checked) {
    const int k = B.num_rows();
    if (k > kOracleMaxBlockRows) throw OracleScaleError();
    const int nv = k + 1;
    auto cols = B.columns();
    std::vector<int> seq(std::max(0, k - 1), 0);
    while (true) {
        ++checked;
        auto parent = prufer_parents(seq, nv);
        BlockWitness w{parent, {}};
        bool ok = true;
        for (const auto& c : cols) {
            auto ends = support_path(parent, c);
            if (!ends) {
                ok = false;
                break;
            }
            w.column_ends.push_back(*ends);
        }
        if (ok) return w;
        int i = 0;
        while (i < static_cast<int>(seq.size()) && ++seq[i] == nv) seq[i++] = 0;
        if (i == static_cast<int>(seq.size())) break;
    }
    return std::nullopt;
}

} // namespace detail

// Brute-force graphicness: per connected block, some labeled tree must make
// every column a path. Blocks larger than kOracleMaxBlockRows rows throw.
inline OracleVerdict oracle_is_graphic(const SparseBinaryMatrix& M) {
    OracleVerdict v;
    auto d = connected_blocks(M);
    for (const auto& b : d.blocks)
        if (static_cast<int>(b.row_indices.size()) > kOracleMaxBlockRows) throw OracleScaleError();
    GraphTreePair g;
    g.add_vertex();
    for (const auto& b : d.blocks) {
        auto w = detail::oracle_block(block_submatrix(M, b), v.trees_checked);
        if (!w) return v;
        const int nv = static_cast<int>(w->parent.size());
        std::vector<int> vmap(nv);
        for (int x = 0; x < nv; ++x) vmap[x] = x == 0 ? 0 : g.add_vertex();
        for (std::size_t i = 0; i < b.row_indices.size(); ++i)
            g.add_edge(vmap[i + 1], vmap[w->parent[i + 1]], Origin::row, b.row_indices[i], true);
        for (std::size_t j = 0; j < b.col_indices.size(); ++j)
            g.add_edge(vmap[w->column_ends[j].first], vmap[w->column_ends[j].second], Origin::column, b.col_indices[j],
                       false);
    }
    for (int r : d.zero_rows) g.add_edge(0, g.add_vertex(), Origin::row, r, true);
    for (int c : d.zero_cols) g.add_edge(0, 0, Origin::column, c, false);
    v.graphic = true;
    v.witness = std::move(g);
    return v;
}

struct GraphicInstance {
    GraphTreePair graph;
    SparseBinaryMatrix matrix;
};

// Connected multigraph on num_vertices vertices with a uniformly random
// labeled spanning tree plus random non-loop extra edges; tree edges become
// rows and the extra edges columns, both in random order.
inline GraphicInstance random_graphic_instance(std::uint64_t seed, int num_vertices, int num_edges,
                                               bool simple = false) {
    if (num_vertices < 1 || num_edges < num_vertices - 1) throw std::invalid_argument("infeasible instance size");
    if (num_vertices == 1 && num_edges > 0) throw std::invalid_argument("infeasible instance size");
    const long long max_simple = 1LL * num_vertices * (num_vertices - 1) / 2;
    if (simple && num_edges > max_simple) throw std::invalid_argument("infeasible instance size");
    std::mt19937_64 rng(seed);
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

    GraphTreePair g;
    g.num_vertices = num_vertices;
    std::vector<std::pair<int, int>> tree;
    if (num_vertices >= 2) {
        std::vector<int> seq(num_vertices - 2);
        for (int& x : seq) x = uniform(0, num_vertices - 1);
        auto parent = detail::prufer_parents(seq, num_vertices);
        for (int v = 1; v < num_vertices; ++v) tree.push_back({v, parent[v]});
    }
    std::shuffle(tree.begin(), tree.end(), rng);
    std::set<std::pair<int, int>> used;
    for (std::size_t i = 0; i < tree.size(); ++i) {
        g.add_edge(tree[i].first, tree[i].second, Origin::row, static_cast<int>(i), true);
        used.insert(std::minmax(tree[i].first, tree[i].second));
    }
    const int extra = num_edges - (num_vertices - 1);
    for (int j = 0; j < extra; ++j) {
        int a, b;
        do {
            a = uniform(0, num_vertices - 1);
            b = uniform(0, num_vertices - 2);
            if (b >= a) ++b;
        } while (simple && used.count(std::minmax(a, b)));
        used.insert(std::minmax(a, b));
        g.add_edge(a, b, Origin::column, j, false);
    }
    auto M = representation_matrix(g);
    return {std::move(g), std::move(M)};
}

// Transpose of M(K3,3, T) for parts {a,b,c}, {x,y,z} and T = {ax,bx,cx,ay,az}.
inline SparseBinaryMatrix derive_k33_dual() {
    enum { a, b, c, x, y, z };
    const char* name = "abcxyz";
    GraphTreePair g;
    g.num_vertices = 6;
    std::vector<std::pair<int, int>> tree{{a, x}, {b, x}, {c, x}, {a, y}, {a, z}};
    std::vector<std::pair<int, int>> cotree{{b, y}, {b, z}, {c, y}, {c, z}};
    std::vector<std::string> rl, cl;
    for (std::size_t i = 0; i < tree.size(); ++i) {
        g.add_edge(tree[i].first, tree[i].second, Origin::row, static_cast<int>(i), true);
        rl.push_back({name[tree[i].first], name[tree[i].second]});
    }
    for (std::size_t j = 0; j < cotree.size(); ++j) {
        g.add_edge(cotree[j].first, cotree[j].second, Origin::column, static_cast<int>(j), false);
        cl.push_back({name[cotree[j].first], name[cotree[j].second]});
    }
    auto T = representation_matrix(g).transpose();
    T.set_labels(cl, rl);
    return T;
}

// Transpose of M(K5, star at vertex 0): 6 rows (non-star edges) over the
// 4 spokes.
inline SparseBinaryMatrix derive_k5_dual() {
    GraphTreePair g;
    g.num_vertices = 5;
    std::vector<std::string> rl, cl;
    for (int i = 1; i <= 4; ++i) {
        g.add_edge(0, i, Origin::row, i - 1, true);
        rl.push_back("t" + std::to_string(i));
    }
    int j = 0;
    for (int u = 1; u <= 4; ++u)
        for (int w = u + 1; w <= 4; ++w) {
            g.add_edge(u, w, Origin::column, j++, false);
            cl.push_back("e" + std::to_string(u) + std::to_string(w));
        }
    auto T = representation_matrix(g).transpose();
    T.set_labels(cl, rl);
    return T;
}

} // namespace graphrec
