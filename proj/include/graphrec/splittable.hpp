#pragma once

#include <algorithm>
#include <cassert>
#include <optional>
#include <stdexcept>
#include <vector>

#include "skeleton.hpp"

namespace graphrec {

// H^v_Y: components of G - v - Y joined by the Y-edges not incident to v.
struct AuxiliaryGraph {
    int v = -1;
    int num_components = 0;
    std::vector<int> comp_of;                    // per vertex, -1 for v
    std::vector<std::pair<int, int>> edges;      // one per Y-edge avoiding v; loops included
    std::vector<char> loop;                      // per component
};

inline AuxiliaryGraph auxiliary_graph(const SkelGraph& g, int v, const std::vector<char>& inY) {
    AuxiliaryGraph h;
    h.v = v;
    h.comp_of.assign(g.n, -1);
    auto adj = g.adjacency();
    std::vector<int> st;
    for (int s = 0; s < g.n; ++s) {
        if (s == v || h.comp_of[s] >= 0) continue;
        int c = h.num_components++;
        h.comp_of[s] = c;
        st.assign(1, s);
        while (!st.empty()) {
            int x = st.back();
            st.pop_back();
            for (auto [y, ei] : adj[x])
                if (!inY[ei] && y != v && h.comp_of[y] < 0) {
                    h.comp_of[y] = c;
                    st.push_back(y);
                }
        }
    }
    h.loop.assign(h.num_components, 0);
    for (int i = 0; i < g.num_edges(); ++i) {
        if (!inY[i]) continue;
        auto [a, b] = g.ends[i];
        if (a == v || b == v) continue;
        int ca = h.comp_of[a], cb = h.comp_of[b];
        h.edges.push_back({ca, cb});
        if (ca == cb) h.loop[ca] = 1;
    }
    return h;
}

struct Bipartition {
    bool bipartite = false;
    std::vector<char> in_I;   // per component
};

// Two-colours H. Side I holds the component of `anchor` when given, otherwise
// the lowest-numbered component; other connected pieces of H are coloured
// from their lowest-numbered component.
inline Bipartition bipartition(const AuxiliaryGraph& h, int anchor = -1) {
    Bipartition b;
    std::vector<std::vector<int>> adj(h.num_components);
    for (auto [x, y] : h.edges) {
        if (x == y) return b;
        adj[x].push_back(y);
        adj[y].push_back(x);
    }
    std::vector<int> colour(h.num_components, -1);
    std::vector<int> order;
    if (anchor >= 0 && h.comp_of[anchor] >= 0) order.push_back(h.comp_of[anchor]);
    for (int c = 0; c < h.num_components; ++c) order.push_back(c);
    std::vector<int> st;
    for (int s : order) {
        if (colour[s] >= 0) continue;
        colour[s] = 1;
        st.assign(1, s);
        while (!st.empty()) {
            int x = st.back();
            st.pop_back();
            for (int y : adj[x]) {
                if (colour[y] < 0) {
                    colour[y] = 1 - colour[x];
                    st.push_back(y);
                } else if (colour[y] == colour[x]) {
                    return b;
                }
            }
        }
    }
    b.bipartite = true;
    b.in_I.assign(h.num_components, 0);
    for (int c = 0; c < h.num_components; ++c) b.in_I[c] = static_cast<char>(colour[c] == 1);
    return b;
}

inline bool is_splittable(const SkelGraph& g, int v, const std::vector<char>& inY) {
    return bipartition(auxiliary_graph(g, v, inY)).bipartite;
}

// Reference answer: test every vertex directly.
inline std::vector<int> splittable_bruteforce(const SkelGraph& g, const std::vector<char>& inY) {
    std::vector<int> out;
    for (int v = 0; v < g.n; ++v)
        if (is_splittable(g, v, inY)) out.push_back(v);
    return out;
}

// LCA on the spanning tree via an Euler tour and a sparse table of minima.
class TreeLca {
public:
    explicit TreeLca(const SkelGraph& g, int root = 0) {
        const int n = g.n;
        depth_.assign(n, -1);
        first_.assign(n, -1);
        if (n == 0) return;
        std::vector<std::vector<int>> adj(n);
        for (int i = 0; i < g.num_edges(); ++i)
            if (g.tree[i]) {
                adj[g.ends[i].first].push_back(g.ends[i].second);
                adj[g.ends[i].second].push_back(g.ends[i].first);
            }
        std::vector<std::pair<int, std::size_t>> st{{root, 0}};
        depth_[root] = 0;
        while (!st.empty()) {
            auto& [x, k] = st.back();
            if (k == 0) first_[x] = static_cast<int>(euler_.size());
            euler_.push_back(x);
            if (k < adj[x].size()) {
                int y = adj[x][k++];
                if (depth_[y] < 0) {
                    depth_[y] = depth_[x] + 1;
                    st.push_back({y, 0});
                } else {
                    euler_.pop_back();
                }
            } else {
                st.pop_back();
            }
        }
        for (int v = 0; v < n; ++v)
            if (depth_[v] < 0) throw std::invalid_argument("tree edges do not span the skeleton");
        build_table();
    }

    int depth(int v) const { return depth_[v]; }

    int lca(int a, int b) const {
        int l = first_[a], r = first_[b];
        if (l > r) std::swap(l, r);
        int k = log2_[r - l + 1];
        int x = table_[k][l], y = table_[k][r - (1 << k) + 1];
        return depth_[x] < depth_[y] ? x : y;
    }

    int dist(int a, int b) const { return depth_[a] + depth_[b] - 2 * depth_[lca(a, b)]; }

    bool on_path(int v, int a, int b) const { return dist(a, v) + dist(v, b) == dist(a, b); }

private:
    void build_table() {
        const int m = static_cast<int>(euler_.size());
        log2_.assign(m + 1, 0);
        for (int i = 2; i <= m; ++i) log2_[i] = log2_[i / 2] + 1;
        table_.assign(log2_[m] + 1, std::vector<int>(m));
        table_[0] = euler_;
        for (int k = 1; (1 << k) <= m; ++k)
            for (int i = 0; i + (1 << k) <= m; ++i) {
                int x = table_[k - 1][i], y = table_[k - 1][i + (1 << (k - 1))];
                table_[k][i] = depth_[x] < depth_[y] ? x : y;
            }
    }

    std::vector<int> depth_, first_, euler_, log2_;
    std::vector<std::vector<int>> table_;
};

struct TreePath {
    int a = -1;
    int b = -1;
};

// Intersection of two tree paths, or nullopt when they share no vertex.
inline std::optional<TreePath> intersect_paths(const TreeLca& t, TreePath p, TreePath q) {
    int c[4] = {t.lca(p.a, q.a), t.lca(p.a, q.b), t.lca(p.b, q.a), t.lca(p.b, q.b)};
    std::sort(c, c + 4, [&](int x, int y) { return t.depth(x) > t.depth(y); });
    int top = std::max(t.depth(t.lca(p.a, p.b)), t.depth(t.lca(q.a, q.b)));
    if (t.depth(c[0]) < top) return std::nullopt;
    return TreePath{c[0], c[1]};
}

// Q = the common vertices of the fundamental paths of all Y-edges.
inline std::optional<TreePath> path_intersection(const SkelGraph& g, const TreeLca& t, const std::vector<int>& Y) {
    if (Y.empty()) throw std::invalid_argument("path intersection of an empty set");
    TreePath cur{g.ends[Y[0]].first, g.ends[Y[0]].second};
    for (std::size_t k = 1; k < Y.size(); ++k) {
        auto nxt = intersect_paths(t, cur, TreePath{g.ends[Y[k]].first, g.ends[Y[k]].second});
        if (!nxt) return std::nullopt;
        cur = *nxt;
    }
    return cur;
}

// Articulation vertices of the graph formed by the edges with skip[e] == 0.
inline std::vector<int> articulation_vertices(const SkelGraph& g, const std::vector<char>& skip) {
    const int n = g.n;
    std::vector<std::vector<std::pair<int, int>>> adj(n);
    for (int i = 0; i < g.num_edges(); ++i) {
        if (skip[i]) continue;
        auto [a, b] = g.ends[i];
        if (a == b) continue;
        adj[a].push_back({b, i});
        adj[b].push_back({a, i});
    }
    std::vector<int> disc(n, -1), low(n, 0), parent_edge(n, -1);
    std::vector<char> art(n, 0);
    int timer = 0;
    struct Frame { int v; std::size_t k; int children; };
    for (int r = 0; r < n; ++r) {
        if (disc[r] >= 0) continue;
        std::vector<Frame> st{{r, 0, 0}};
        disc[r] = low[r] = timer++;
        while (!st.empty()) {
            Frame& f = st.back();
            if (f.k < adj[f.v].size()) {
                auto [y, ei] = adj[f.v][f.k++];
                if (ei == parent_edge[f.v]) continue;
                if (disc[y] < 0) {
                    disc[y] = low[y] = timer++;
                    parent_edge[y] = ei;
                    ++f.children;
                    st.push_back({y, 0, 0});
                } else {
                    low[f.v] = std::min(low[f.v], disc[y]);
                }
            } else {
                int v = f.v, children = f.children;
                st.pop_back();
                if (!st.empty()) {
                    int p = st.back().v;
                    low[p] = std::min(low[p], low[v]);
                    if (st.size() > 1 && low[v] >= disc[p]) art[p] = 1;
                } else if (children > 1) {
                    art[v] = 1;
                }
            }
        }
    }
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (art[v]) out.push_back(v);
    return out;
}

struct SplittableStats {
    int star_vertices = 0;
    int candidates = 0;           // articulation vertices on Q that were tested
    std::vector<int> candidate_list;
    std::optional<TreePath> q;
};

// Y-splittable vertices of a skeleton. For R skeletons the star shortcut
// applies; `general` disables every kind-based shortcut so the routine can be
// run on arbitrary 2-connected graphs.
inline std::vector<int> find_splittable_vertices(const SkelGraph& g, const std::vector<int>& Y, Kind kind,
                                                 SplittableStats* stats = nullptr, bool general = false) {
    std::vector<int> all(g.n);
    for (int v = 0; v < g.n; ++v) all[v] = v;
    if (Y.empty()) return all;
    if (!general && kind != Kind::R) return all;

    std::vector<int> hits(g.n, 0);
    for (int y : Y) {
        hits[g.ends[y].first]++;
        if (g.ends[y].second != g.ends[y].first) hits[g.ends[y].second]++;
    }
    std::vector<int> X;
    for (int v = 0; v < g.n; ++v)
        if (hits[v] == static_cast<int>(Y.size())) X.push_back(v);
    if (stats) stats->star_vertices = static_cast<int>(X.size());
    if (!general && X.size() == 2) return X;

    TreeLca lca(g);
    auto q = path_intersection(g, lca, Y);
    if (stats) stats->q = q;
    if (!q) return X;

    std::vector<char> inY(g.num_edges(), 0);
    for (int y : Y) inY[y] = 1;
    for (int a : articulation_vertices(g, inY)) {
        if (!lca.on_path(a, q->a, q->b)) continue;
        if (std::find(X.begin(), X.end(), a) != X.end()) continue;
        if (stats) {
            ++stats->candidates;
            stats->candidate_list.push_back(a);
        }
        if (is_splittable(g, a, inY)) X.push_back(a);
    }
    std::sort(X.begin(), X.end());
    return X;
}

// Splittable vertices that are incident to every edge flagged in `is_virtual`.
inline std::vector<int> find_tree_splittable_vertices(const SkelGraph& g, const std::vector<int>& Y, Kind kind,
                                                      const std::vector<char>& is_virtual) {
    auto X = find_splittable_vertices(g, Y, kind);
    for (int i = 0; i < g.num_edges(); ++i) {
        if (!is_virtual[i]) continue;
        std::vector<int> keep;
        for (int v : X)
            if (g.ends[i].first == v || g.ends[i].second == v) keep.push_back(v);
        X.swap(keep);
    }
    return X;
}

// Neighborhood split of v: for every edge incident to v, 1 if it moves to v1
// and 2 if it moves to v2; 0 for edges not incident to v.
inline std::vector<int> neighborhood_split(const SkelGraph& g, const std::vector<char>& inY, int v, int anchor = -1) {
    auto h = auxiliary_graph(g, v, inY);
    auto bp = bipartition(h, anchor);
    if (!bp.bipartite) throw std::logic_error("vertex is not splittable");
    std::vector<int> side(g.num_edges(), 0);
    for (int i = 0; i < g.num_edges(); ++i) {
        auto [a, b] = g.ends[i];
        if (a != v && b != v) continue;
        assert(a != b);
        int u = a == v ? b : a;
        bool toI = bp.in_I[h.comp_of[u]];
        side[i] = (static_cast<bool>(inY[i]) != toI) ? 1 : 2;
    }
    return side;
}

} // namespace graphrec
