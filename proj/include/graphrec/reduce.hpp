#pragma once

#include <deque>
#include <string>
#include <vector>

#include "spqr.hpp"
#include "splittable.hpp"

namespace graphrec {

// Per-row working state: the marked edges Y_R and the nodes that have been
// cut away from the reduced tree (dropped leaves and extracted local parts).
struct RowContext {
    std::vector<char> marked;
    std::vector<char> outside;

    bool is_marked(int e) const { return e < static_cast<int>(marked.size()) && marked[e]; }
    void mark(int e, bool on = true) {
        if (e >= static_cast<int>(marked.size())) marked.resize(e + 1, 0);
        marked[e] = on;
    }
    bool is_outside(int n) const { return n < static_cast<int>(outside.size()) && outside[n]; }
    void set_outside(int n) {
        if (n >= static_cast<int>(outside.size())) outside.resize(n + 1, 0);
        outside[n] = 1;
    }
};

// A virtual edge as seen from the reduced tree: its partner is still inside.
inline bool view_virtual(const SpqrForest& F, const RowContext& ctx, int e) {
    int p = F.partner(e);
    return p >= 0 && !ctx.is_outside(F.node_of(p));
}

enum class JournalKind { leaf_drop_empty, leaf_drop_full, series_local, parallel_local, kind_change };

inline const char* journal_kind_name(JournalKind k) {
    switch (k) {
    case JournalKind::leaf_drop_empty: return "leaf_drop_empty";
    case JournalKind::leaf_drop_full: return "leaf_drop_full";
    case JournalKind::series_local: return "series_local";
    case JournalKind::parallel_local: return "parallel_local";
    case JournalKind::kind_change: return "kind_change";
    }
    return "?";
}

// leaf drops: node = dropped leaf, edge = partner edge that became regular.
// local reductions: node = reduced node, edge = replacement edge in it,
// other = node holding the replaced edges, flag = replacement is marked.
// kind changes: node, from, to.
struct JournalEntry {
    JournalKind kind;
    int node = -1;
    int edge = -1;
    int other = -1;
    bool flag = false;
    Kind from = Kind::Q, to = Kind::Q;
};

using ReductionJournal = std::vector<JournalEntry>;

struct ReducedTree {
    std::vector<int> nodes;   // surviving nodes, BFS order from the input node
    ReductionJournal journal;
};

namespace detail {

inline std::vector<int> view_nodes_bfs(const SpqrForest& F, const RowContext& ctx, int start) {
    start = F.find_node(start);
    std::vector<int> order{start};
    std::vector<char> seen;
    auto see = [&](int n) {
        if (n >= static_cast<int>(seen.size())) seen.resize(n + 1, 0);
        bool was = seen[n];
        seen[n] = 1;
        return was;
    };
    see(start);
    for (std::size_t k = 0; k < order.size(); ++k)
        for (int e : F.edges_of(order[k]))
            if (view_virtual(F, ctx, e)) {
                int m = F.node_of(F.partner(e));
                if (!see(m)) order.push_back(m);
            }
    return order;
}

// Rebuilds the vertices of a cycle skeleton in list order.
inline void rethread_cycle(SpqrForest& F, int node) {
    auto edges = F.edges_of(node);
    const int k = static_cast<int>(edges.size());
    std::vector<int> vs(k);
    for (int i = 0; i < k; ++i) vs[i] = F.new_vertex();
    for (int i = 0; i < k; ++i) F.set_ends(edges[i], vs[i], vs[(i + 1) % k]);
}

// Moves `part` out of parallel node mu into a fresh P-node; returns the
// replacement edge left in mu.
inline int extract_parallel(SpqrForest& F, int mu, const std::vector<int>& part, bool replacement_in_tree,
                            int* new_node) {
    auto [a, b] = F.ends(part.front());
    int c = F.new_vertex(), d = F.new_vertex();
    int nu = F.new_node(Kind::P);
    for (int e : part) {
        auto [x, y] = F.ends(e);
        F.move_edge(e, nu);
        F.set_ends(e, x == a ? c : d, y == a ? c : d);
    }
    int e1 = F.add_virtual_pair(mu, a, b, replacement_in_tree, nu, c, d);
    if (new_node) *new_node = nu;
    return e1;
}

} // namespace detail

// Parallel reduction of node mu; marked edges and view-virtual edges come from ctx.
inline void reduce_parallel(SpqrForest& F, int mu, RowContext& ctx, ReductionJournal& journal) {
    mu = F.find_node(mu);
    if (F.kind(mu) != Kind::P) throw std::invalid_argument("reduce_parallel: node is not of kind P");
    std::vector<int> Ymu, Z;
    bool has_virtual = false;
    for (int e : F.edges_of(mu)) {
        if (view_virtual(F, ctx, e)) has_virtual = true;
        else if (ctx.is_marked(e)) Ymu.push_back(e);
        else Z.push_back(e);
    }
    if (Ymu.size() > 1) {
        int nu = -1;
        int e1 = detail::extract_parallel(F, mu, Ymu, false, &nu);
        ctx.set_outside(nu);
        for (int y : Ymu) ctx.mark(y, false);
        ctx.mark(e1);
        journal.push_back({JournalKind::parallel_local, mu, e1, nu, true});
    }
    if (Z.size() > 1) {
        bool meets_tree = false;
        for (int z : Z) meets_tree |= F.edge(z).in_tree;
        int nu = -1;
        int e1 = detail::extract_parallel(F, mu, Z, meets_tree, &nu);
        ctx.set_outside(nu);
        journal.push_back({JournalKind::parallel_local, mu, e1, nu, false});
    }
    if (!has_virtual) {
        F.set_kind(mu, Kind::Q);
        journal.push_back({JournalKind::kind_change, mu, -1, -1, false, Kind::P, Kind::Q});
    }
}

// Series reduction of node mu.
inline void reduce_series(SpqrForest& F, int mu, RowContext& ctx, ReductionJournal& journal) {
    mu = F.find_node(mu);
    if (F.kind(mu) != Kind::S) throw std::invalid_argument("reduce_series: node is not of kind S");
    auto all = F.edges_of(mu);
    std::vector<int> Z;
    for (int e : all)
        if (!view_virtual(F, ctx, e)) Z.push_back(e);
    if (Z.size() == all.size() || Z.size() <= 1) return;
    bool any_marked = false, all_tree = true;
    for (int z : Z) {
        any_marked |= ctx.is_marked(z);
        all_tree &= F.edge(z).in_tree;
    }
    int nu = F.new_node(Kind::S);
    for (int z : Z) {
        F.move_edge(z, nu);
        ctx.mark(z, false);
    }
    int e1 = F.add_virtual_pair(mu, F.new_vertex(), F.new_vertex(), all_tree, nu, F.new_vertex(), F.new_vertex());
    detail::rethread_cycle(F, mu);
    detail::rethread_cycle(F, nu);
    ctx.set_outside(nu);
    if (any_marked) ctx.mark(e1);
    journal.push_back({JournalKind::series_local, mu, e1, nu, any_marked});
}

// Full-propagation check for an R-leaf: the marked edges are exactly the non-tree
// edges whose fundamental path uses e, decided via splittability of e's ends.
inline bool full_propagation_test(const SkelGraph& g, const std::vector<char>& inY, int e_local) {
    if (!g.tree[e_local]) return false;
    bool any = false;
    for (char c : inY) any |= static_cast<bool>(c);
    if (!any) return false;
    auto [u, w] = g.ends[e_local];
    return is_splittable(g, u, inY) && is_splittable(g, w, inY);
}

namespace detail {

inline bool full_propagation_applies(const SpqrForest& F, const RowContext& ctx, int mu, int e) {
    if (!F.edge(e).in_tree) return false;
    switch (F.kind(mu)) {
    case Kind::S:
        return true;
    case Kind::P:
        for (int x : F.edges_of(mu))
            if (x != e && !F.edge(x).in_tree && !ctx.is_marked(x)) return false;
        return true;
    case Kind::R: {
        SkelGraph g = F.skeleton(mu);
        std::vector<char> inY(g.num_edges(), 0);
        int el = -1;
        for (int i = 0; i < g.num_edges(); ++i) {
            inY[i] = ctx.is_marked(g.id[i]);
            if (g.id[i] == e) el = i;
        }
        return full_propagation_test(g, inY, el);
    }
    case Kind::Q:
        return false;
    }
    return false;
}

inline int unique_view_virtual(const SpqrForest& F, const RowContext& ctx, int mu) {
    for (int e : F.edges_of(mu))
        if (view_virtual(F, ctx, e)) return e;
    return -1;
}

} // namespace detail

// Reduces the tree containing `start`. ctx.marked must hold Y.
inline ReducedTree reduce_tree(SpqrForest& F, int start, RowContext& ctx) {
    ReducedTree out;
    auto nodes = detail::view_nodes_bfs(F, ctx, start);
    int alive = static_cast<int>(nodes.size());
    std::unordered_map<int, int> deg, ycount;
    for (int n : nodes) {
        int d = 0, y = 0;
        for (int e : F.edges_of(n)) {
            if (view_virtual(F, ctx, e)) ++d;
            if (ctx.is_marked(e)) ++y;
        }
        deg[n] = d;
        ycount[n] = y;
    }
    std::vector<int> sorted = nodes;
    std::sort(sorted.begin(), sorted.end());
    std::deque<int> L, LR;
    for (int n : sorted)
        if (deg[n] == 1) L.push_back(n);

    while (!L.empty() && alive >= 2) {
        int mu = L.front();
        L.pop_front();
        int e = detail::unique_view_virtual(F, ctx, mu);
        int f = F.partner(e);
        int nu = F.node_of(f);
        if (ycount[mu] == 0) {
            ctx.set_outside(mu);
            --alive;
            if (--deg[nu] == 1) L.push_back(nu);
            out.journal.push_back({JournalKind::leaf_drop_empty, mu, f});
        } else {
            LR.push_back(mu);
        }
    }
    while (!LR.empty() && alive >= 2) {
        int mu = LR.front();
        LR.pop_front();
        int e = detail::unique_view_virtual(F, ctx, mu);
        int f = F.partner(e);
        int nu = F.node_of(f);
        if (detail::full_propagation_applies(F, ctx, mu, e)) {
            ctx.set_outside(mu);
            --alive;
            for (int x : F.edges_of(mu)) ctx.mark(x, false);
            ctx.mark(f);
            ++ycount[nu];
            if (--deg[nu] == 1) LR.push_back(nu);
            out.journal.push_back({JournalKind::leaf_drop_full, mu, f});
        }
    }
    for (int n : nodes) {
        if (ctx.is_outside(n)) continue;
        if (F.kind(n) == Kind::S) reduce_series(F, n, ctx, out.journal);
        else if (F.kind(n) == Kind::P) reduce_parallel(F, n, ctx, out.journal);
    }
    for (int n : nodes)
        if (!ctx.is_outside(n)) out.nodes.push_back(F.find_node(n));
    return out;
}

// Undoes the local reductions and kind changes of a journal, newest first.
// Dropped leaves need no work: they never left the forest.
inline void undo_reductions(SpqrForest& F, const ReductionJournal& journal) {
    for (auto it = journal.rbegin(); it != journal.rend(); ++it) {
        switch (it->kind) {
        case JournalKind::series_local:
        case JournalKind::parallel_local:
            merge_adjacent(F, it->edge);
            break;
        case JournalKind::kind_change:
            F.set_kind(it->node, it->from);
            break;
        default:
            break;
        }
    }
}

} // namespace graphrec
