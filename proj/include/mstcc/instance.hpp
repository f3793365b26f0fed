#pragma once

/// Core problem data: an edge-weighted undirected graph together with a set
/// of conflicting edge pairs. A feasible solution is a spanning tree using
/// at most one edge from each pair.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "union_find.hpp"

namespace mstcc {

/// Endpoints are 1-based vertex ids. Edges are identified by their 0-based
/// position in Instance::edges; the text format uses 1-based positions.
struct Edge
{
    long u = 0;
    long v = 0;
    long long cost = 0;

    bool operator==(const Edge&) const = default;
};

/// Unordered conflict pair, stored with first < second (0-based edge ids).
using ConflictPair = std::pair<long, long>;

struct Instance
{
    std::string name;
    long vertex_count = 0;
    std::vector<Edge> edges;                // parallel edges allowed
    std::vector<ConflictPair> conflicts;    // no duplicates

    long edge_count() const { return static_cast<long>(edges.size()); }
    long conflict_count() const { return static_cast<long>(conflicts.size()); }

    bool operator==(const Instance&) const = default;
};

/// Returns an empty list when the instance is well formed and connected.
/// Each violation is one line starting with a stable tag: BadVertexId,
/// SelfLoop, BadEdgeIndex, UnorderedConflictPair, DuplicateEdgeInPair,
/// DuplicateConflictPair, Disconnected.
inline std::vector<std::string> validate(const Instance& inst)
{
    std::vector<std::string> violations;
    const long n = inst.vertex_count;
    const long m = inst.edge_count();

    if (n < 1)
        violations.push_back("BadVertexId: vertex count must be positive");

    bool endpoints_ok = n >= 1;
    for (long i = 0; i < m; ++i)
    {
        const Edge& e = inst.edges[i];
        if (e.u < 1 || e.u > n || e.v < 1 || e.v > n)
        {
            violations.push_back("BadVertexId: edge " + std::to_string(i + 1)
                                 + " endpoint out of range");
            endpoints_ok = false;
        }
        else if (e.u == e.v)
            violations.push_back("SelfLoop: edge " + std::to_string(i + 1)
                                 + " joins a vertex to itself");
    }

    for (const auto& [a, b] : inst.conflicts)
    {
        if (a < 0 || a >= m || b < 0 || b >= m)
            violations.push_back("BadEdgeIndex: conflict pair ("
                                 + std::to_string(a + 1) + ","
                                 + std::to_string(b + 1) + ") out of range");
        else if (a == b)
            violations.push_back("DuplicateEdgeInPair: conflict pair repeats edge "
                                 + std::to_string(a + 1));
        else if (a > b)
            violations.push_back("UnorderedConflictPair: pair ("
                                 + std::to_string(a + 1) + ","
                                 + std::to_string(b + 1)
                                 + ") not stored with smaller index first");
    }

    std::vector<ConflictPair> sorted_pairs = inst.conflicts;
    std::sort(sorted_pairs.begin(), sorted_pairs.end());
    for (std::size_t i = 1; i < sorted_pairs.size(); ++i)
        if (sorted_pairs[i] == sorted_pairs[i - 1])
            violations.push_back("DuplicateConflictPair: pair ("
                                 + std::to_string(sorted_pairs[i].first + 1) + ","
                                 + std::to_string(sorted_pairs[i].second + 1)
                                 + ") listed twice");

    if (endpoints_ok && n >= 1)
    {
        DisjointSets components(n);
        for (const Edge& e : inst.edges)
            if (e.u != e.v)
                components.unite(e.u - 1, e.v - 1);
        if (components.components() > 1)
            violations.push_back("Disconnected: graph has "
                                 + std::to_string(components.components())
                                 + " components");
    }

    return violations;
}

/// Conflict graph: one node per edge of G, one edge per conflict pair.
/// Adjacency lists are sorted, symmetric and free of self-loops.
struct ConflictGraphView
{
    long node_count = 0;
    std::vector<std::vector<long>> neighbors;

    ConflictGraphView() = default;

    ConflictGraphView(long nodes, const std::vector<ConflictPair>& pairs)
        : node_count(nodes), neighbors(static_cast<std::size_t>(nodes))
    {
        for (const auto& [a, b] : pairs)
        {
            if (a == b)
                continue;
            neighbors[a].push_back(b);
            neighbors[b].push_back(a);
        }
        for (auto& list : neighbors)
        {
            std::sort(list.begin(), list.end());
            list.erase(std::unique(list.begin(), list.end()), list.end());
        }
    }

    explicit ConflictGraphView(const Instance& inst)
        : ConflictGraphView(inst.edge_count(), inst.conflicts)
    {
    }

    bool adjacent(long a, long b) const
    {
        return std::binary_search(neighbors[a].begin(), neighbors[a].end(), b);
    }

    long degree(long a) const { return static_cast<long>(neighbors[a].size()); }
};

}  // namespace mstcc
