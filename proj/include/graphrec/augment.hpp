#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "binmatrix.hpp"
#include "graph_tree.hpp"
#include "reduce.hpp"
#include "spqr.hpp"
#include "splittable.hpp"

namespace graphrec {

// Node and vertex pair between which the new row edge goes; ok == false
// when no splittable vertex exists.
struct SplitResult {
    bool ok = false;
    int node = -1;
    int v1 = -1, v2 = -1;
};

namespace detail {

inline int local_index(const std::vector<int>& labels, int x) {
    auto it = std::find(labels.begin(), labels.end(), x);
    return it == labels.end() ? -1 : static_cast<int>(it - labels.begin());
}

inline void replace_end(SpqrForest& F, int e, int from, int to) {
    auto [a, b] = F.ends(e);
    F.set_ends(e, a == from ? to : a, b == from ? to : b);
}

} // namespace detail

// Splits one vertex of a cycle (or two-edge Q skeleton) so both
// copies have degree one.
inline SplitResult extend_series(SpqrForest& F, int mu) {
    mu = F.find_node(mu);
    if (F.kind(mu) != Kind::S && F.kind(mu) != Kind::Q) throw std::invalid_argument("extend_series: wrong kind");
    auto edges = F.edges_of(mu);
    int x = F.ends(edges.front()).first;
    int g1 = -1, g2 = -1;
    for (int e : edges) {
        auto [a, b] = F.ends(e);
        if (a != x && b != x) continue;
        (g1 < 0 ? g1 : g2) = e;
        if (g2 >= 0) break;
    }
    if (g2 < 0) throw std::logic_error("extend_series: vertex of degree < 2");
    int v1 = F.new_vertex(), v2 = F.new_vertex();
    detail::replace_end(F, g1, x, v1);
    detail::replace_end(F, g2, x, v2);
    if (F.kind(mu) == Kind::Q) F.set_kind(mu, Kind::S);
    return {true, mu, v1, v2};
}

// Neighbourhood split of vertex v (a label) in skeleton mu.
// The component holding `anchor` (a label, or -1) lands on side I.
inline SplitResult bipartite_split(SpqrForest& F, int mu, const RowContext& ctx, int v, int anchor = -1) {
    mu = F.find_node(mu);
    std::vector<int> labels;
    SkelGraph g = F.skeleton(mu, &labels);
    std::vector<char> inY(g.num_edges(), 0);
    for (int i = 0; i < g.num_edges(); ++i) inY[i] = ctx.is_marked(g.id[i]);
    int vl = detail::local_index(labels, F.find_vertex(v));
    int al = anchor >= 0 ? detail::local_index(labels, F.find_vertex(anchor)) : -1;
    auto side = neighborhood_split(g, inY, vl, al);
    int v1 = F.new_vertex(), v2 = F.new_vertex();
    int vr = labels[vl];
    for (int i = 0; i < g.num_edges(); ++i)
        if (side[i]) detail::replace_end(F, g.id[i], vr, side[i] == 1 ? v1 : v2);
    return {true, mu, v1, v2};
}

// Splits skeleton mu for the row. `link` is the virtual edge of mu towards
// the already merged part of the tree (or -1); its far endpoint anchors the
// bipartition. With `merging`, the two-candidate R case splits one candidate
// in place.
inline SplitResult split_skeleton(SpqrForest& F, int mu, const RowContext& ctx, int link = -1, bool merging = false) {
    mu = F.find_node(mu);
    Kind k = F.kind(mu);
    if (k == Kind::Q) return extend_series(F, mu);

    std::vector<int> labels;
    SkelGraph g = F.skeleton(mu, &labels);
    std::vector<int> Y;
    std::vector<char> isv(g.num_edges(), 0);
    for (int i = 0; i < g.num_edges(); ++i) {
        if (ctx.is_marked(g.id[i])) Y.push_back(i);
        isv[i] = view_virtual(F, ctx, g.id[i]);
    }
    auto A = find_tree_splittable_vertices(g, Y, k, isv);

    auto split_at = [&](int a_local) {
        int anchor = -1;
        if (link >= 0) {
            auto [x, y] = F.ends(link);
            anchor = x == labels[a_local] ? y : x;
        }
        return bipartite_split(F, mu, ctx, labels[a_local], anchor);
    };

    switch (k) {
    case Kind::S:
        if (static_cast<int>(A.size()) == g.n) return extend_series(F, mu);
        if (A.size() == 1) return split_at(A[0]);
        return {};
    case Kind::P:
        if (A.empty()) return {};
        return split_at(A[0]);
    case Kind::R: {
        if (A.empty()) return {};
        if (A.size() == 1 || merging) return split_at(A[0]);
        int a1 = labels[A[0]], a2 = labels[A[1]];
        int e = -1;
        for (int i = 0; i < g.num_edges(); ++i) {
            auto [x, y] = g.ends[i];
            if ((x == A[0] && y == A[1]) || (x == A[1] && y == A[0])) {
                e = g.id[i];
                break;
            }
        }
        if (e < 0) throw std::logic_error("split_skeleton: splittable pair is not adjacent");
        bool t = F.edge(e).in_tree;
        int omega = F.new_node(Kind::S);
        F.move_edge(e, omega);
        int p = F.new_vertex(), q = F.new_vertex();
        F.set_ends(e, p, q);
        F.add_virtual_pair(mu, a1, a2, t, omega, p, q);
        return extend_series(F, omega);
    }
    case Kind::Q:
        break;
    }
    return {};
}

// Merges the surviving nodes of a reduced tree into one split node.
inline SplitResult merge_tree(SpqrForest& F, const std::vector<int>& nodes, const RowContext& ctx) {
    std::vector<int> sorted;
    for (int n : nodes) sorted.push_back(F.find_node(n));
    std::sort(sorted.begin(), sorted.end());
    int first = -1;
    for (int n : sorted) {
        int d = 0;
        for (int e : F.edges_of(n)) d += view_virtual(F, ctx, e);
        if (d == 1) {
            first = n;
            break;
        }
    }
    if (first < 0) throw std::logic_error("merge_tree: reduced tree has no leaf");
    auto order = detail::view_nodes_bfs(F, ctx, first);

    SplitResult acc = split_skeleton(F, order[0], ctx, -1, true);
    if (!acc.ok) return {};
    int mu1 = acc.node;
    for (std::size_t i = 1; i < order.size(); ++i) {
        int mui = F.find_node(order[i]);
        mu1 = F.find_node(mu1);
        int e = -1;
        for (int x : F.edges_of(mui))
            if (F.partner(x) >= 0 && F.node_of(F.partner(x)) == mu1) {
                e = x;
                break;
            }
        if (e < 0) throw std::logic_error("merge_tree: order is not connected");
        SplitResult r = split_skeleton(F, mui, ctx, e, true);
        if (!r.ok) return {};
        int f = F.partner(e);
        int x1 = F.find_vertex(r.v1), x2 = F.find_vertex(r.v2);
        int y1 = F.find_vertex(acc.v1), y2 = F.find_vertex(acc.v2);
        auto [ea, eb] = F.ends(e);
        auto [fa, fb] = F.ends(f);
        int xe = (ea == x1 || ea == x2) ? ea : eb;
        int we = xe == ea ? eb : ea;
        int xf = (fa == y1 || fa == y2) ? fa : fb;
        int wf = xf == fa ? fb : fa;
        int xe_other = xe == x1 ? x2 : x1;
        int xf_other = xf == y1 ? y2 : y1;
        F.identify(xf, xe);
        F.identify(wf, we);
        F.identify(xf_other, xe_other);
        F.remove_edge(e);
        F.remove_edge(f);
        mu1 = F.merge_nodes(mu1, mui);
    }
    F.set_kind(mu1, Kind::R);
    return {true, F.find_node(mu1), F.find_vertex(acc.v1), F.find_vertex(acc.v2)};
}

struct ProcessOutcome {
    bool accepted = false;
    SplitResult split;
    int reduced_nodes = 0;
    ReductionJournal journal;
};

// Reduces and splits one tree for the marked edges Y. The reductions are
// undone implicitly: extracted parts and dropped leaves stay attached
// through their virtual pairs. On rejection the
// forest may be partially edited; callers restore their snapshot.
inline ProcessOutcome process_tree(SpqrForest& F, const std::vector<int>& Y) {
    ProcessOutcome out;
    RowContext ctx;
    for (int y : Y) ctx.mark(y);
    auto red = reduce_tree(F, F.node_of(Y.front()), ctx);
    out.reduced_nodes = static_cast<int>(red.nodes.size());
    if (red.nodes.size() == 1) out.split = split_skeleton(F, red.nodes[0], ctx);
    else out.split = merge_tree(F, red.nodes, ctx);
    out.accepted = out.split.ok;
    out.journal = std::move(red.journal);
    return out;
}

// Merges every adjacent S-S or P-P pair in the tree containing `node`.
inline int repair_minimality(SpqrForest& F, int node) {
    int merges = 0;
    bool again = true;
    while (again) {
        again = false;
        for (int n : F.tree_nodes(node)) {
            Kind k = F.kind(n);
            if (k != Kind::S && k != Kind::P) continue;
            for (auto [m, e] : F.neighbours(n))
                if (F.kind(m) == k) {
                    merge_adjacent(F, e);
                    ++merges;
                    again = true;
                    break;
                }
            if (again) break;
        }
    }
    return merges;
}

enum class RowBranch { zero_row, new_tree, single_tree, multi_tree };

inline const char* row_branch_name(RowBranch b) {
    switch (b) {
    case RowBranch::zero_row: return "zero_row";
    case RowBranch::new_tree: return "new_tree";
    case RowBranch::single_tree: return "single_tree";
    case RowBranch::multi_tree: return "multi_tree";
    }
    return "?";
}

struct AddRowOutcome {
    bool accepted = false;
    RowBranch branch = RowBranch::zero_row;
    int trees_touched = 0;
    int reduced_nodes = 0;
    int repair_merges = 0;
    int fresh_columns = 0;
    long long ops = 0;
};

// Appends row `row` with the given column support. A rejected
// row leaves F exactly as it was.
inline AddRowOutcome add_row(SpqrForest& F, int row, const std::vector<int>& support) {
    AddRowOutcome out;
    if (F.row_edge(row) >= 0) throw std::invalid_argument("add_row: row already present");
    for (int c : support)
        if (c < 0) throw std::invalid_argument("add_row: negative column index");
    int max_col = support.empty() ? -1 : *std::max_element(support.begin(), support.end());
    F.resize_matrix(row + 1, max_col + 1);
    const long long ops_before = F.ops().total();

    std::vector<int> fresh;
    std::map<int, std::vector<int>> by_tree;
    std::vector<int> tree_order;
    for (int c : support) {
        int e = F.col_edge(c);
        if (e < 0) {
            fresh.push_back(c);
            continue;
        }
        int t = F.tree_of_edge(e);
        if (!by_tree.count(t)) tree_order.push_back(t);
        by_tree[t].push_back(e);
    }
    out.fresh_columns = static_cast<int>(fresh.size());
    out.trees_touched = static_cast<int>(tree_order.size());

    auto new_bond = [&](Kind kind, int& p, int& q) {
        int mu = F.new_node(kind);
        p = F.new_vertex();
        q = F.new_vertex();
        F.add_edge(mu, p, q, Origin::row, row, true);
        for (int c : fresh) F.add_edge(mu, p, q, Origin::column, c, false);
        return mu;
    };

    if (tree_order.empty()) {
        out.accepted = true;
        if (fresh.empty()) {
            out.branch = RowBranch::zero_row;
        } else {
            out.branch = RowBranch::new_tree;
            int p, q;
            new_bond(fresh.size() == 1 ? Kind::Q : Kind::P, p, q);
        }
        out.ops = F.ops().total() - ops_before;
        return out;
    }

    SpqrForest saved = F;
    std::vector<SplitResult> splits;
    for (int t : tree_order) {
        auto po = process_tree(F, by_tree[t]);
        out.reduced_nodes += po.reduced_nodes;
        if (!po.accepted) {
            out.ops = F.ops().total() - ops_before;
            out.branch = tree_order.size() == 1 ? RowBranch::single_tree : RowBranch::multi_tree;
            F = std::move(saved);
            return out;
        }
        splits.push_back(po.split);
    }

    int anchor_node;
    if (splits.size() == 1) {
        out.branch = RowBranch::single_tree;
        const auto& s = splits[0];
        if (fresh.empty()) {
            F.add_edge(s.node, s.v1, s.v2, Origin::row, row, true);
        } else {
            int p, q;
            int mu = new_bond(Kind::P, p, q);
            F.add_virtual_pair(s.node, s.v1, s.v2, true, mu, p, q);
        }
        anchor_node = s.node;
    } else {
        out.branch = RowBranch::multi_tree;
        int p, q;
        int mu = new_bond(Kind::P, p, q);
        for (const auto& s : splits) F.add_virtual_pair(s.node, s.v1, s.v2, true, mu, p, q);
        anchor_node = mu;
    }
    out.repair_merges = repair_minimality(F, anchor_node);
    out.accepted = true;
    out.ops = F.ops().total() - ops_before;
    return out;
}

// ---- certificates -------------------------------------------------------

// Realizes every tree and glues them at vertex 0; rows of the forest are
// renumbered through row_map (-1 drops a row). Rows in row_map that have no
// edge become pendant tree edges and columns without an edge become loops.
inline GraphTreePair assemble_certificate(const SpqrForest& F, const std::vector<int>& row_map, int num_cols) {
    GraphTreePair g;
    g.add_vertex();
    for (int root : F.tree_roots()) {
        GraphTreePair part = realize(F, root);
        std::vector<int> vmap(part.num_vertices);
        for (int v = 0; v < part.num_vertices; ++v) vmap[v] = v == 0 ? 0 : g.add_vertex();
        for (const auto& e : part.edges) {
            int idx = e.index;
            if (e.origin == Origin::row) {
                idx = row_map[e.index];
                if (idx < 0) throw std::logic_error("certificate: forest holds an unmapped row");
            }
            g.add_edge(vmap[e.u], vmap[e.v], e.origin, idx, e.in_tree);
        }
    }
    for (int r = 0; r < static_cast<int>(row_map.size()); ++r)
        if (row_map[r] >= 0 && F.row_edge(r) < 0) g.add_edge(0, g.add_vertex(), Origin::row, row_map[r], true);
    for (int c = 0; c < num_cols; ++c)
        if (F.col_edge(c) < 0) g.add_edge(0, 0, Origin::column, c, false);
    return g;
}

// ---- drivers ------------------------------------------------------------

struct RowTrace {
    int row = -1;
    bool accepted = false;
    AddRowOutcome detail;
};

struct AugmentOptions {
    bool stop_at_rejection = true;
    bool build_certificate = true;
    // Called after every accepted row.
    std::function<void(int row, const SpqrForest&)> on_accept;
};

struct GraphicResult {
    bool graphic = true;
    int first_rejected = -1;
    std::vector<int> kept_rows;
    std::vector<int> skipped_rows;
    std::vector<RowTrace> trace;
    SpqrForest forest;
    std::optional<GraphTreePair> certificate;
};

inline GraphicResult run_rows(const SparseBinaryMatrix& M, const AugmentOptions& opt) {
    GraphicResult res;
    res.forest = SpqrForest(M.num_rows(), M.num_cols());
    for (int r = 0; r < M.num_rows(); ++r) {
        auto o = add_row(res.forest, r, M.row(r));
        res.trace.push_back({r, o.accepted, o});
        if (o.accepted) {
            res.kept_rows.push_back(r);
            if (opt.on_accept) opt.on_accept(r, res.forest);
            continue;
        }
        res.skipped_rows.push_back(r);
        if (res.graphic) res.first_rejected = r;
        res.graphic = false;
        if (opt.stop_at_rejection) break;
    }
    if (opt.build_certificate && (res.graphic || !opt.stop_at_rejection)) {
        std::vector<int> row_map(M.num_rows(), -1);
        for (std::size_t k = 0; k < res.kept_rows.size(); ++k) row_map[res.kept_rows[k]] = static_cast<int>(k);
        res.certificate = assemble_certificate(res.forest, row_map, M.num_cols());
    }
    return res;
}

// Adds the rows in index order; graphic iff every row is accepted.
inline GraphicResult is_graphic(const SparseBinaryMatrix& M, AugmentOptions opt = {}) {
    opt.stop_at_rejection = true;
    return run_rows(M, opt);
}

// Greedy inclusion-wise maximal graphic row subset; the certificate realizes
// M restricted to kept_rows (renumbered in order).
inline GraphicResult maximal_graphic_rows(const SparseBinaryMatrix& M, AugmentOptions opt = {}) {
    opt.stop_at_rejection = false;
    return run_rows(M, opt);
}

} // namespace graphrec
