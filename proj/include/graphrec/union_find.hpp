#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace graphrec {

// Tally of the primitive operations that the complexity analysis charges for.
struct OpCounter {
    std::uint64_t finds = 0;
    std::uint64_t unions = 0;
    std::uint64_t list_ops = 0;

    std::uint64_t total() const { return finds + unions + list_ops; }
};

// Disjoint sets with path halving. The caller picks the surviving root on
// union so that per-set payloads can stay where they are.
class UnionFind {
public:
    UnionFind() = default;
    explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    int add() {
        parent_.push_back(static_cast<int>(parent_.size()));
        return static_cast<int>(parent_.size()) - 1;
    }

    int size() const { return static_cast<int>(parent_.size()); }

    int find(int x, OpCounter* ops = nullptr) const {
        if (ops) ++ops->finds;
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    // Links the set of `child` below the root of `keep`; returns that root.
    int unite_into(int keep, int child, OpCounter* ops = nullptr) {
        if (ops) ++ops->unions;
        int a = find(keep, ops);
        int b = find(child, ops);
        if (a != b) parent_[b] = a;
        return a;
    }

    bool same(int a, int b, OpCounter* ops = nullptr) const { return find(a, ops) == find(b, ops); }

    bool operator==(const UnionFind& o) const { return parent_ == o.parent_; }

private:
    mutable std::vector<int> parent_;
};

} // namespace graphrec
