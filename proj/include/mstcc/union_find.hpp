#pragma once

/// Disjoint sets over 0-based element ids, union by size with path halving.

#include <numeric>
#include <utility>
#include <vector>

namespace mstcc {

class DisjointSets
{
public:
    explicit DisjointSets(long n)
        : parent(static_cast<std::size_t>(n)),
          set_size(static_cast<std::size_t>(n), 1),
          count(n)
    {
        std::iota(parent.begin(), parent.end(), 0L);
    }

    long find(long a)
    {
        while (parent[a] != a)
        {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }

    /// Returns false when a and b were already in the same set.
    bool unite(long a, long b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        if (set_size[a] < set_size[b])
            std::swap(a, b);
        parent[b] = a;
        set_size[a] += set_size[b];
        --count;
        return true;
    }

    bool same(long a, long b) { return find(a) == find(b); }

    long components() const { return count; }

private:
    std::vector<long> parent;
    std::vector<long> set_size;
    long count;
};

}  // namespace mstcc
