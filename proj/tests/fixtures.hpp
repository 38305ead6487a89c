#pragma once

#include <random>
#include <string>
#include <vector>

#include "graphrec/graphrec.hpp"

namespace fixtures {

using namespace graphrec;

// Vertices 1..6 stored as 0..5; tree a..e, non-tree f..j.
inline GraphTreePair small_graph() {
    GraphTreePair g;
    g.num_vertices = 6;
    const int tree[5][2] = {{2, 4}, {1, 2}, {3, 2}, {6, 3}, {5, 6}};
    const int cotree[5][2] = {{1, 3}, {1, 4}, {4, 6}, {5, 4}, {3, 5}};
    for (int i = 0; i < 5; ++i) g.add_edge(tree[i][0] - 1, tree[i][1] - 1, Origin::row, i, true);
    for (int j = 0; j < 5; ++j) g.add_edge(cotree[j][0] - 1, cotree[j][1] - 1, Origin::column, j, false);
    return g;
}

// Same tree labels, different graph: j=(4,5), d=(6,4), e=(5,6), h=(3,6), i=(5,3).
inline GraphTreePair small_graph_alt() {
    GraphTreePair g;
    g.num_vertices = 6;
    const int tree[5][2] = {{2, 4}, {1, 2}, {3, 2}, {6, 4}, {5, 6}};
    const int cotree[5][2] = {{1, 3}, {1, 4}, {3, 6}, {5, 3}, {4, 5}};
    for (int i = 0; i < 5; ++i) g.add_edge(tree[i][0] - 1, tree[i][1] - 1, Origin::row, i, true);
    for (int j = 0; j < 5; ++j) g.add_edge(cotree[j][0] - 1, cotree[j][1] - 1, Origin::column, j, false);
    return g;
}

inline SparseBinaryMatrix small_matrix() {
    auto M = SparseBinaryMatrix::from_strings({"01110", "11000", "10110", "00111", "00011"});
    M.set_labels({"a", "b", "c", "d", "e"}, {"f", "g", "h", "i", "j"});
    return M;
}

inline SparseBinaryMatrix wide_matrix() {
    auto M = SparseBinaryMatrix::from_strings(
        {"110100000", "111100000", "111010000", "111001000", "111000111", "000100000"});
    M.set_labels({"a", "b", "c", "d", "e", "f"}, {"g", "h", "i", "j", "k", "l", "m", "n", "o"});
    return M;
}

// r1 = 110, r2 = 101, r3..rm = 100.
inline SparseBinaryMatrix hub_matrix(int m) {
    std::vector<std::string> rows{"110", "101"};
    while (static_cast<int>(rows.size()) < m) rows.push_back("100");
    return SparseBinaryMatrix::from_strings(rows);
}

inline std::vector<int> random_permutation(int n, std::mt19937_64& rng) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

// Random 0/1 matrix with the given shape and density.
inline SparseBinaryMatrix random_matrix(int m, int n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution bit(p);
    std::vector<std::vector<int>> rows(m);
    for (auto& r : rows)
        for (int c = 0; c < n; ++c)
            if (bit(rng)) r.push_back(c);
    return SparseBinaryMatrix(m, n, std::move(rows));
}

// Random connected multigraph skeleton with a random spanning tree; loops excluded.
inline SkelGraph random_skeleton(int n, int extra, std::mt19937_64& rng) {
    SkelGraph g;
    g.n = n;
    for (int v = 1; v < n; ++v) g.add_edge(v, static_cast<int>(rng() % v), true);
    for (int k = 0; k < extra; ++k) {
        int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % (n - 1));
        if (b >= a) ++b;
        g.add_edge(a, b, false);
    }
    // relabel so the tree is not always rooted at 0 with increasing labels
    auto perm = random_permutation(n, rng);
    for (auto& [a, b] : g.ends) {
        a = perm[a];
        b = perm[b];
    }
    return g;
}

inline bool two_connected(const SkelGraph& g) {
    if (g.n < 2) return false;
    std::vector<char> none(g.num_edges(), 0);
    return articulation_vertices(g, none).empty();
}

// No single vertex deletion leaves an articulation vertex behind.
inline bool three_connected(const SkelGraph& g) {
    if (!two_connected(g)) return false;
    for (int v = 0; v < g.n; ++v) {
        std::vector<char> skip;
        for (auto [a, b] : g.ends) skip.push_back(a == v || b == v);
        for (int a : articulation_vertices(g, skip))
            if (a != v) return false;
    }
    return true;
}

// K_n minus `drop` random edges; the spanning tree is grown greedily in shuffled order.
inline SkelGraph random_dense_skeleton(int n, int drop, std::mt19937_64& rng) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) pairs.push_back({a, b});
    std::shuffle(pairs.begin(), pairs.end(), rng);
    pairs.resize(pairs.size() - std::min<std::size_t>(drop, pairs.size()));
    SkelGraph g;
    g.n = n;
    UnionFind uf(n);
    for (auto [a, b] : pairs) {
        bool t = !uf.same(a, b);
        if (t) uf.unite_into(uf.find(a), uf.find(b));
        g.add_edge(a, b, t);
    }
    return g;
}

} // namespace fixtures
