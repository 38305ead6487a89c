#pragma once

#include <sstream>
#include <string>

#include <json.hpp>

#include "reduce.hpp"
#include "spqr.hpp"

namespace graphrec {

inline std::string edge_origin_label(const SpqrForest& F, int e) {
    const auto& r = F.edge(e);
    if (r.origin == Origin::virtual_edge) return "v" + std::to_string(e);
    return std::string(origin_prefix(r.origin)) + std::to_string(r.index + 1);
}

// nodes[{id, kind, tree, edges[{id, origin, in_tree, partner?, ends}]}]
inline nlohmann::json forest_to_json(const SpqrForest& F) {
    nlohmann::json nodes = nlohmann::json::array();
    for (int n : F.alive_nodes()) {
        nlohmann::json edges = nlohmann::json::array();
        for (int e : F.edges_of(n)) {
            const auto& r = F.edge(e);
            auto [u, v] = F.ends(e);
            nlohmann::json je{{"id", e}, {"origin", edge_origin_label(F, e)}, {"in_tree", r.in_tree}, {"ends", {u, v}}};
            if (r.partner >= 0) je["partner"] = r.partner;
            edges.push_back(std::move(je));
        }
        nodes.push_back({{"id", n}, {"kind", kind_name(F.kind(n))}, {"tree", F.tree_of_node(n)}, {"edges", edges}});
    }
    return nlohmann::json{{"nodes", nodes}};
}

// One cluster per skeleton; tree edges bold, virtual pairs dashed.
inline std::string forest_to_dot(const SpqrForest& F) {
    std::ostringstream os;
    os << "graph spqr {\n  compound=true;\n  node [shape=circle, width=0.25, label=\"\"];\n";
    for (int n : F.alive_nodes()) {
        os << "  subgraph cluster_" << n << " {\n    label=\"" << kind_name(F.kind(n)) << n << "\";\n";
        for (int e : F.edges_of(n)) {
            auto [u, v] = F.ends(e);
            os << "    n" << n << "_" << u << " -- n" << n << "_" << v << " [label=\"" << edge_origin_label(F, e)
               << "\"";
            if (F.edge(e).in_tree) os << ", style=bold";
            if (F.partner(e) >= 0) os << ", color=gray";
            os << "];\n";
        }
        os << "  }\n";
    }
    for (int n : F.alive_nodes())
        for (int e : F.edges_of(n)) {
            int f = F.partner(e);
            if (f < 0 || f < e) continue;
            auto [u, v] = F.ends(e);
            auto [fu, fv] = F.ends(f);
            (void)v;
            (void)fv;
            os << "  n" << n << "_" << u << " -- n" << F.node_of(f) << "_" << fu << " [style=dashed, constraint=false, label=\""
               << edge_origin_label(F, e) << "/" << edge_origin_label(F, f) << "\"];\n";
        }
    os << "}\n";
    return os.str();
}

inline nlohmann::json journal_to_json(const ReductionJournal& j) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& e : j) {
        nlohmann::json x{{"kind", journal_kind_name(e.kind)}, {"node", e.node}};
        if (e.edge >= 0) x["edge"] = e.edge;
        if (e.other >= 0) x["other"] = e.other;
        if (e.kind == JournalKind::kind_change) {
            x["from"] = kind_name(e.from);
            x["to"] = kind_name(e.to);
        }
        if (e.kind == JournalKind::series_local || e.kind == JournalKind::parallel_local) x["marked"] = e.flag;
        out.push_back(std::move(x));
    }
    return out;
}

inline nlohmann::json graph_to_json(const GraphTreePair& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : g.edges)
        edges.push_back({{"u", e.u}, {"v", e.v}, {"origin", std::string(origin_prefix(e.origin)) + std::to_string(e.index + 1)},
                         {"in_tree", e.in_tree}});
    return nlohmann::json{{"num_vertices", g.num_vertices}, {"edges", edges}};
}

} // namespace graphrec
