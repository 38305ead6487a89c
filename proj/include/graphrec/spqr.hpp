#pragma once

#include <algorithm>
#include <cassert>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "skeleton.hpp"
#include "union_find.hpp"

namespace graphrec {

struct EdgeRecord {
    Origin origin = Origin::virtual_edge;
    int index = -1;        // matrix row/column, -1 for virtual edges
    int node = -1;         // node label at the time of the last move; resolve with find
    int u = -1, v = -1;    // vertex labels; resolve with find
    bool in_tree = false;
    int partner = -1;
    int prev = -1, next = -1;
    bool alive = true;

    bool operator==(const EdgeRecord&) const = default;
};

struct NodeRecord {
    Kind kind = Kind::Q;
    int head = -1;
    int size = 0;
    bool alive = true;

    bool operator==(const NodeRecord&) const = default;
};

// A forest of SPQR trees. Nodes, skeleton vertices and trees are disjoint-set
// labels; every node keeps its edges in a circular doubly linked list so that
// merging two skeletons is a constant-time splice.
class SpqrForest {
public:
    SpqrForest() = default;
    SpqrForest(int num_rows, int num_cols) : row_edge_(num_rows, -1), col_edge_(num_cols, -1) {}

    void resize_matrix(int num_rows, int num_cols) {
        if (num_rows > static_cast<int>(row_edge_.size())) row_edge_.resize(num_rows, -1);
        if (num_cols > static_cast<int>(col_edge_.size())) col_edge_.resize(num_cols, -1);
    }

    // ---- construction -----------------------------------------------------

    int new_node(Kind k) {
        int id = static_cast<int>(nodes_.size());
        nodes_.push_back(NodeRecord{k, -1, 0, true});
        node_uf_.add();
        tree_uf_.add();
        return id;
    }

    int new_vertex() { return vertex_uf_.add(); }

    int add_edge(int node, int u, int v, Origin o, int index, bool in_tree) {
        node = find_node(node);
        int id = static_cast<int>(edges_.size());
        EdgeRecord r;
        r.origin = o;
        r.index = index;
        r.node = node;
        r.u = u;
        r.v = v;
        r.in_tree = in_tree;
        edges_.push_back(r);
        link(node, id);
        if (o == Origin::row) {
            resize_matrix(index + 1, 0);
            row_edge_[index] = id;
        } else if (o == Origin::column) {
            resize_matrix(0, index + 1);
            col_edge_[index] = id;
        }
        return id;
    }

    void pair_edges(int e, int f) {
        edges_[e].partner = f;
        edges_[f].partner = e;
        tree_uf_.unite_into(find_node(edges_[e].node), find_node(edges_[f].node), &ops_);
    }

    // Adds virtual edges a:{ua,va} and b:{ub,vb}; a carries the tree flag iff
    // a_in_tree. Returns the edge in node a.
    int add_virtual_pair(int a, int ua, int va, bool a_in_tree, int b, int ub, int vb) {
        int e = add_edge(a, ua, va, Origin::virtual_edge, -1, a_in_tree);
        int f = add_edge(b, ub, vb, Origin::virtual_edge, -1, !a_in_tree);
        pair_edges(e, f);
        return e;
    }

    void remove_edge(int e) {
        unlink(find_node(edges_[e].node), e);
        edges_[e].alive = false;
        if (edges_[e].partner >= 0 && edges_[edges_[e].partner].partner == e) edges_[edges_[e].partner].partner = -1;
        edges_[e].partner = -1;
    }

    void move_edge(int e, int node) {
        node = find_node(node);
        unlink(find_node(edges_[e].node), e);
        edges_[e].node = node;
        link(node, e);
    }

    void set_ends(int e, int u, int v) {
        edges_[e].u = u;
        edges_[e].v = v;
    }

    void set_tree(int e, bool t) { edges_[e].in_tree = t; }
    void set_kind(int node, Kind k) { nodes_[find_node(node)].kind = k; }

    // Identifies two skeleton vertices; `keep` stays the representative.
    void identify(int keep, int other) { vertex_uf_.unite_into(keep, other, &ops_); }

    // Splices the edge list of `absorb` into `keep` and unites their labels.
    int merge_nodes(int keep, int absorb) {
        keep = find_node(keep);
        absorb = find_node(absorb);
        if (keep == absorb) return keep;
        NodeRecord& k = nodes_[keep];
        NodeRecord& a = nodes_[absorb];
        if (a.head >= 0) {
            if (k.head < 0) {
                k.head = a.head;
            } else {
                int kp = edges_[k.head].prev, ap = edges_[a.head].prev;
                edges_[kp].next = a.head;
                edges_[a.head].prev = kp;
                edges_[ap].next = k.head;
                edges_[k.head].prev = ap;
            }
            ++ops_.list_ops;
        }
        k.size += a.size;
        a.head = -1;
        a.size = 0;
        a.alive = false;
        node_uf_.unite_into(keep, absorb, &ops_);
        tree_uf_.unite_into(keep, absorb, &ops_);
        return keep;
    }

    // ---- queries ----------------------------------------------------------

    int find_node(int n) const { return node_uf_.find(n, &ops_); }
    int find_vertex(int x) const { return vertex_uf_.find(x, &ops_); }
    int tree_of_node(int n) const { return tree_uf_.find(n, &ops_); }
    int node_of(int e) const { return find_node(edges_[e].node); }
    int tree_of_edge(int e) const { return tree_of_node(edges_[e].node); }
    std::pair<int, int> ends(int e) const { return {find_vertex(edges_[e].u), find_vertex(edges_[e].v)}; }

    const EdgeRecord& edge(int e) const { return edges_[e]; }
    const NodeRecord& node(int n) const { return nodes_[find_node(n)]; }
    Kind kind(int n) const { return node(n).kind; }
    int num_edge_records() const { return static_cast<int>(edges_.size()); }
    int num_node_records() const { return static_cast<int>(nodes_.size()); }
    int num_vertex_labels() const { return vertex_uf_.size(); }
    bool is_virtual(int e) const { return edges_[e].partner >= 0; }
    int partner(int e) const { return edges_[e].partner; }

    int row_edge(int r) const { return r < static_cast<int>(row_edge_.size()) ? row_edge_[r] : -1; }
    int col_edge(int c) const { return c < static_cast<int>(col_edge_.size()) ? col_edge_[c] : -1; }
    int num_rows() const { return static_cast<int>(row_edge_.size()); }
    int num_cols() const { return static_cast<int>(col_edge_.size()); }

    std::vector<int> edges_of(int n) const {
        std::vector<int> out;
        const NodeRecord& r = nodes_[find_node(n)];
        if (r.head < 0) return out;
        int e = r.head;
        do {
            out.push_back(e);
            e = edges_[e].next;
        } while (e != r.head);
        return out;
    }

    std::vector<int> alive_nodes() const {
        std::vector<int> out;
        for (int i = 0; i < static_cast<int>(nodes_.size()); ++i)
            if (nodes_[i].alive && node_uf_.find(i) == i) out.push_back(i);
        return out;
    }

    // Neighbouring nodes through virtual pairs, with the connecting edge in n.
    std::vector<std::pair<int, int>> neighbours(int n) const {
        std::vector<std::pair<int, int>> out;
        for (int e : edges_of(n))
            if (edges_[e].partner >= 0) out.push_back({node_of(edges_[e].partner), e});
        return out;
    }

    // All nodes of the SPQR tree that contains n, in BFS order.
    std::vector<int> tree_nodes(int n) const {
        n = find_node(n);
        std::vector<int> order{n};
        std::unordered_map<int, char> seen{{n, 1}};
        for (std::size_t k = 0; k < order.size(); ++k)
            for (auto [m, e] : neighbours(order[k]))
                if (!seen.count(m)) {
                    seen[m] = 1;
                    order.push_back(m);
                }
        return order;
    }

    // One representative node per SPQR tree.
    std::vector<int> tree_roots() const {
        std::vector<int> out;
        std::unordered_map<int, char> seen;
        for (int n : alive_nodes()) {
            int t = tree_of_node(n);
            if (!seen.count(t)) {
                seen[t] = 1;
                out.push_back(n);
            }
        }
        return out;
    }

    // Copies the skeleton of n into local indices. labels[i] is the vertex
    // label of local vertex i.
    SkelGraph skeleton(int n, std::vector<int>* labels = nullptr) const {
        SkelGraph g;
        std::unordered_map<int, int> local;
        std::vector<int> lab;
        auto idx = [&](int x) {
            x = find_vertex(x);
            auto it = local.find(x);
            if (it != local.end()) return it->second;
            local[x] = g.n;
            lab.push_back(x);
            return g.n++;
        };
        for (int e : edges_of(n)) {
            int a = idx(edges_[e].u);
            int b = idx(edges_[e].v);
            g.add_edge(a, b, edges_[e].in_tree, e);
        }
        if (labels) *labels = std::move(lab);
        return g;
    }

    OpCounter& ops() const { return ops_; }

    // Structural equality of the stored state, including label structures.
    bool same_state(const SpqrForest& o) const {
        return edges_ == o.edges_ && nodes_ == o.nodes_ && node_uf_ == o.node_uf_ && vertex_uf_ == o.vertex_uf_ &&
               tree_uf_ == o.tree_uf_ && row_edge_ == o.row_edge_ && col_edge_ == o.col_edge_;
    }

private:
    void link(int node, int e) {
        NodeRecord& r = nodes_[node];
        if (r.head < 0) {
            r.head = e;
            edges_[e].prev = edges_[e].next = e;
        } else {
            int h = r.head, p = edges_[h].prev;
            edges_[e].next = h;
            edges_[e].prev = p;
            edges_[p].next = e;
            edges_[h].prev = e;
        }
        ++r.size;
        ++ops_.list_ops;
    }

    void unlink(int node, int e) {
        NodeRecord& r = nodes_[node];
        if (r.size == 1) {
            r.head = -1;
        } else {
            int p = edges_[e].prev, nx = edges_[e].next;
            edges_[p].next = nx;
            edges_[nx].prev = p;
            if (r.head == e) r.head = nx;
        }
        edges_[e].prev = edges_[e].next = -1;
        --r.size;
        ++ops_.list_ops;
    }

    std::vector<EdgeRecord> edges_;
    std::vector<NodeRecord> nodes_;
    UnionFind node_uf_;
    UnionFind vertex_uf_;
    UnionFind tree_uf_;
    std::vector<int> row_edge_;
    std::vector<int> col_edge_;
    mutable OpCounter ops_;
};

// ---- realization --------------------------------------------------------

// Glues all skeletons of the tree containing `node` along their virtual pairs
// (first endpoint with first endpoint) and drops the virtual edges.
inline GraphTreePair realize(const SpqrForest& F, int node) {
    auto nodes = F.tree_nodes(node);
    std::unordered_map<int, int> local;
    UnionFind uf;
    auto idx = [&](int x) {
        x = F.find_vertex(x);
        auto it = local.find(x);
        if (it != local.end()) return it->second;
        int k = uf.add();
        local[x] = k;
        return k;
    };
    std::vector<int> regular;
    for (int n : nodes)
        for (int e : F.edges_of(n)) {
            const auto& r = F.edge(e);
            int a = idx(r.u), b = idx(r.v);
            if (r.partner < 0) {
                regular.push_back(e);
            } else if (e < r.partner) {
                const auto& p = F.edge(r.partner);
                uf.unite_into(a, idx(p.u));
                uf.unite_into(b, idx(p.v));
            }
        }
    GraphTreePair g;
    std::unordered_map<int, int> compact;
    auto vid = [&](int x) {
        int root = uf.find(idx(x));
        auto it = compact.find(root);
        if (it != compact.end()) return it->second;
        int k = g.add_vertex();
        compact[root] = k;
        return k;
    };
    for (int e : regular) {
        const auto& r = F.edge(e);
        g.add_edge(vid(r.u), vid(r.v), r.origin, r.index, r.in_tree);
    }
    return g;
}

// ---- validation ---------------------------------------------------------

namespace detail {

inline std::optional<std::string> check_skeleton(const SpqrForest& F, int n, int tree_size) {
    auto where = [&](const std::string& s) { return "node " + std::to_string(n) + ": " + s; };
    SkelGraph g = F.skeleton(n);
    const int m = g.num_edges();
    Kind k = F.kind(n);
    for (auto [a, b] : g.ends)
        if (a == b) return where("loop edge");
    int tree_edges = 0;
    for (char t : g.tree) tree_edges += t;
    if (tree_edges != g.n - 1) return where("tree edge count " + std::to_string(tree_edges) + " != |V|-1");
    UnionFind uf(g.n);
    for (int i = 0; i < m; ++i)
        if (g.tree[i]) {
            if (uf.same(g.ends[i].first, g.ends[i].second)) return where("tree edges contain a cycle");
            uf.unite_into(g.ends[i].first, g.ends[i].second);
        }
    auto adj = g.adjacency();
    switch (k) {
    case Kind::S: {
        if (m < 3) return where("S cycle length < 3");
        if (g.n != m) return where("S skeleton is not a cycle");
        for (int v = 0; v < g.n; ++v)
            if (adj[v].size() != 2) return where("S skeleton is not a cycle");
        if (!is_connected(g.simple())) return where("S skeleton is not a cycle");
        break;
    }
    case Kind::P:
        if (g.n != 2) return where("P skeleton must have 2 vertices");
        if (m < 3) return where("P skeleton must have at least 3 edges");
        break;
    case Kind::Q:
        if (g.n > 2 || m > 2 || m == 0) return where("Q skeleton too large");
        if (tree_size != 1) return where("Q node is not alone in its tree");
        break;
    case Kind::R:
        if (m < 4) return where("R skeleton has fewer than 4 edges");
        if (!is_simple(g.simple())) return where("R skeleton is not simple");
        if (!is_k_connected(g.simple(), 3)) return where("R skeleton is not 3-connected");
        break;
    }
    return std::nullopt;
}

} // namespace detail

// Reports the first violated structural invariant, or nullopt.
inline std::optional<std::string> validate(const SpqrForest& F) {
    const int E = F.num_edge_records();
    for (int e = 0; e < E; ++e) {
        const auto& r = F.edge(e);
        if (!r.alive) continue;
        std::string id = "edge " + std::to_string(e) + ": ";
        if (!F.node(r.node).alive) return id + "lives in a dead node";
        if ((r.origin == Origin::virtual_edge) != (r.partner >= 0)) return id + "virtual flag and partner disagree";
        if (r.partner >= 0) {
            const auto& p = F.edge(r.partner);
            if (r.partner == e) return id + "partner is itself";
            if (!p.alive || p.partner != e) return id + "partner is not an involution";
            if (r.in_tree == p.in_tree) return id + "virtual pair must have exactly one tree edge";
            if (F.node_of(e) == F.node_of(r.partner)) return id + "virtual pair inside one node";
        }
    }
    for (int r = 0; r < F.num_rows(); ++r) {
        int e = F.row_edge(r);
        if (e >= 0 && (!F.edge(e).alive || !F.edge(e).in_tree)) return "row " + std::to_string(r) + " edge invalid";
    }
    for (int c = 0; c < F.num_cols(); ++c) {
        int e = F.col_edge(c);
        if (e >= 0 && (!F.edge(e).alive || F.edge(e).in_tree)) return "column " + std::to_string(c) + " edge invalid";
    }
    for (int root : F.tree_roots()) {
        auto nodes = F.tree_nodes(root);
        int pairs = 0;
        for (int n : nodes) {
            int count = 0;
            for (int e : F.edges_of(n)) {
                ++count;
                if (F.node_of(e) != n) return "node " + std::to_string(n) + ": edge list holds a foreign edge";
                if (F.partner(e) >= 0) ++pairs;
            }
            if (count != F.node(n).size) return "node " + std::to_string(n) + ": size mismatch";
            if (F.tree_of_node(n) != F.tree_of_node(root)) return "node " + std::to_string(n) + ": tree label mismatch";
        }
        if (pairs % 2 || pairs / 2 != static_cast<int>(nodes.size()) - 1)
            return "tree at node " + std::to_string(root) + " is not a tree";
        for (int n : nodes)
            if (auto err = detail::check_skeleton(F, n, static_cast<int>(nodes.size()))) return err;
    }
    return std::nullopt;
}

// No two adjacent S-nodes and no two adjacent P-nodes.
inline bool check_minimal(const SpqrForest& F) {
    for (int n : F.alive_nodes()) {
        Kind k = F.kind(n);
        if (k != Kind::S && k != Kind::P) continue;
        for (auto [m, e] : F.neighbours(n))
            if (F.kind(m) == k) return false;
    }
    return true;
}

struct TreeStats {
    int nodes = 0;
    int regular_edges = 0;
    int skeleton_edges = 0;
    int skeleton_vertices = 0;
    int count_S = 0, count_P = 0, count_Q = 0, count_R = 0;

    bool within_size_bounds() const {
        if (regular_edges < 3) return true;
        int cap = 3 * regular_edges - 6;
        return skeleton_edges <= cap && skeleton_vertices <= cap && nodes <= regular_edges - 2;
    }
};

inline TreeStats tree_stats(const SpqrForest& F, int node) {
    TreeStats s;
    for (int n : F.tree_nodes(node)) {
        ++s.nodes;
        switch (F.kind(n)) {
        case Kind::S: ++s.count_S; break;
        case Kind::P: ++s.count_P; break;
        case Kind::Q: ++s.count_Q; break;
        case Kind::R: ++s.count_R; break;
        }
        SkelGraph g = F.skeleton(n);
        s.skeleton_edges += g.num_edges();
        s.skeleton_vertices += g.n;
        for (int e : F.edges_of(n))
            if (F.partner(e) < 0) ++s.regular_edges;
    }
    return s;
}

// Merges two adjacent nodes across the virtual pair (e in mu, f in nu),
// identifying endpoints first-with-first. The merged node keeps mu's kind;
// callers set the kind when it changes.
inline int merge_adjacent(SpqrForest& F, int e) {
    int f = F.partner(e);
    if (f < 0) throw std::invalid_argument("merge_adjacent: edge is not virtual");
    int mu = F.node_of(e), nu = F.node_of(f);
    auto [eu, ev] = F.ends(e);
    auto [fu, fv] = F.ends(f);
    F.identify(eu, fu);
    F.identify(ev, fv);
    F.remove_edge(e);
    F.remove_edge(f);
    return F.merge_nodes(mu, nu);
}

// Finds the virtual edge in mu whose partner lies in nu.
inline int connecting_edge(const SpqrForest& F, int mu, int nu) {
    nu = F.find_node(nu);
    for (int e : F.edges_of(mu))
        if (F.partner(e) >= 0 && F.node_of(F.partner(e)) == nu) return e;
    return -1;
}

inline int merge_adjacent(SpqrForest& F, int mu, int nu) {
    int e = connecting_edge(F, mu, nu);
    if (e < 0) throw std::invalid_argument("merge_adjacent: nodes are not adjacent");
    return merge_adjacent(F, e);
}

} // namespace graphrec
