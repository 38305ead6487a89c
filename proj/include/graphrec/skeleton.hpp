#pragma once

#include <string>
#include <utility>
#include <vector>

#include "graph_tree.hpp"

namespace graphrec {

enum class Kind : unsigned char { S, P, Q, R };

inline const char* kind_name(Kind k) {
    switch (k) {
    case Kind::S: return "S";
    case Kind::P: return "P";
    case Kind::Q: return "Q";
    case Kind::R: return "R";
    }
    return "?";
}

// A skeleton copied out into local indices: vertices 0..n-1, edges with
// endpoints and spanning-tree flags. `id` maps back to forest edge ids when
// the graph was extracted from a forest.
struct SkelGraph {
    int n = 0;
    std::vector<std::pair<int, int>> ends;
    std::vector<char> tree;
    std::vector<int> id;

    int num_edges() const { return static_cast<int>(ends.size()); }

    int add_edge(int a, int b, bool t, int forest_id = -1) {
        ends.push_back({a, b});
        tree.push_back(t);
        id.push_back(forest_id);
        return num_edges() - 1;
    }

    std::vector<std::vector<std::pair<int, int>>> adjacency() const {
        std::vector<std::vector<std::pair<int, int>>> adj(n);
        for (int i = 0; i < num_edges(); ++i) {
            adj[ends[i].first].push_back({ends[i].second, i});
            if (ends[i].first != ends[i].second) adj[ends[i].second].push_back({ends[i].first, i});
        }
        return adj;
    }

    SimpleGraph simple() const { return SimpleGraph{n, ends}; }
};

} // namespace graphrec
