#pragma once

/// Exact odd-cycle separation over the conflict graph: signed bipartite
/// duplication, early-stopping shortest paths, and walk-to-cycle cleanup.

#include <algorithm>
#include <limits>
#include <queue>
#include <set>
#include <utility>
#include <vector>

#include "cuts.hpp"
#include "instance.hpp"

namespace mstcc {

/// Signed duplication of the conflict graph: each fractional node u keeps a
/// plus copy 2t and a minus copy 2t+1, and every conflict pair links opposite
/// signs, so closed walks of odd length become plus-to-minus paths.
struct AuxiliaryGraph
{
    struct Arc
    {
        long head;
        double weight;
    };

    std::vector<long> retained;        /// conflict-graph node ids, ascending
    std::vector<long> slot;            /// node id -> retained index, -1 if absent
    std::vector<std::vector<Arc>> adj; /// arcs of both copies, weights > 0

    long node_count() const { return 2 * static_cast<long>(retained.size()); }
};

/// Builds the signed duplication of cg at the point x, dropping nodes whose
/// value is integral within int_tol. Pair weights are (1 - x_u - x_v) / 2,
/// lifted to 1e-6 whenever that falls below 1e-9.
inline AuxiliaryGraph build_auxiliary(const ConflictGraphView& cg,
                                      const std::vector<double>& x,
                                      double int_tol = 1e-5)
{
    AuxiliaryGraph aux;
    aux.slot.assign(cg.node_count, -1);
    for (long u = 0; u < cg.node_count; ++u)
    {
        if (x[u] > int_tol && x[u] < 1.0 - int_tol)
        {
            aux.slot[u] = static_cast<long>(aux.retained.size());
            aux.retained.push_back(u);
        }
    }
    aux.adj.assign(2 * aux.retained.size(), {});
    for (long u : aux.retained)
    {
        for (long v : cg.neighbors[u])
        {
            if (v <= u || aux.slot[v] < 0)
                continue;
            double weight = (1.0 - x[u] - x[v]) / 2.0;
            if (weight < 1e-9)
                weight = 1e-6;
            const long up = 2 * aux.slot[u];
            const long vp = 2 * aux.slot[v];
            aux.adj[up].push_back({vp + 1, weight});
            aux.adj[vp + 1].push_back({up, weight});
            aux.adj[up + 1].push_back({vp, weight});
            aux.adj[vp].push_back({up + 1, weight});
        }
    }
    return aux;
}

namespace detail {

/// Lexicographically least rotation of the cycle, in either direction.
inline std::vector<long> canonical_cycle(const std::vector<long>& cycle)
{
    const long k = static_cast<long>(cycle.size());
    long at = 0;
    for (long i = 1; i < k; ++i)
        if (cycle[i] < cycle[at])
            at = i;
    std::vector<long> forward(k);
    std::vector<long> backward(k);
    for (long i = 0; i < k; ++i)
    {
        forward[i] = cycle[(at + i) % k];
        backward[i] = cycle[(at - i + k) % k];
    }
    return std::min(forward, backward);
}

/// Excises repeated vertices from an odd closed walk: the first enclosed
/// segment is kept outright when odd (it is simple by then), spliced out when
/// even. Returns an empty vector when no odd cycle of length >= 3 survives.
inline std::vector<long> reduce_to_odd_cycle(std::vector<long> walk,
                                             std::vector<long>& first_seen)
{
    bool changed = true;
    while (changed)
    {
        changed = false;
        std::vector<long> touched;
        for (long idx = 0; idx < static_cast<long>(walk.size()); ++idx)
        {
            const long node = walk[idx];
            const long prev = first_seen[node];
            if (prev < 0)
            {
                first_seen[node] = idx;
                touched.push_back(node);
                continue;
            }
            if ((idx - prev) % 2 == 1)
            {
                std::vector<long> segment(walk.begin() + prev,
                                          walk.begin() + idx);
                for (long t : touched)
                    first_seen[t] = -1;
                return segment;
            }
            walk.erase(walk.begin() + prev, walk.begin() + idx);
            changed = true;
            break;
        }
        for (long t : touched)
            first_seen[t] = -1;
    }
    if (walk.size() < 3)
        walk.clear();
    return walk;
}

}  // namespace detail

/// For each fractional conflict-graph node u, finds a shortest plus-to-minus
/// path in the signed duplication, projects it back, cleans the walk to a
/// simple odd cycle, and emits the cycle's inequality when its violation at x
/// clears cut_tol. Cycles are deduplicated by their canonical rotation.
inline std::vector<Cut> separate_odd_cycles(const ConflictGraphView& cg,
                                            const std::vector<double>& x,
                                            double cut_tol = 1e-5,
                                            double int_tol = 1e-5)
{
    const AuxiliaryGraph aux = build_auxiliary(cg, x, int_tol);
    const long hn = aux.node_count();
    std::vector<Cut> cuts;
    if (hn == 0)
        return cuts;

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(hn);
    std::vector<long> parent(hn);
    std::vector<long> first_seen(cg.node_count, -1);
    std::set<std::vector<long>> seen;

    for (long t = 0; t < static_cast<long>(aux.retained.size()); ++t)
    {
        const long source = 2 * t;
        const long target = 2 * t + 1;

        // 1. SHORTEST PATH, STOPPING ONCE THE MINUS COPY IS SELECTED
        std::fill(dist.begin(), dist.end(), inf);
        std::fill(parent.begin(), parent.end(), -1L);
        using Entry = std::pair<double, long>;
        std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> pq;
        dist[source] = 0.0;
        pq.push({0.0, source});
        bool reached = false;
        while (!pq.empty())
        {
            const auto [d, v] = pq.top();
            pq.pop();
            if (d > dist[v])
                continue;
            if (v == target)
            {
                reached = true;
                break;
            }
            for (const AuxiliaryGraph::Arc& arc : aux.adj[v])
            {
                if (d + arc.weight < dist[arc.head])
                {
                    dist[arc.head] = d + arc.weight;
                    parent[arc.head] = v;
                    pq.push({dist[arc.head], arc.head});
                }
            }
        }
        if (!reached)
            continue;

        // 2. PROJECT THE PATH BY DROPPING SIGNS
        std::vector<long> walk;
        for (long v = target; v >= 0; v = parent[v])
            walk.push_back(aux.retained[v >> 1]);
        std::reverse(walk.begin(), walk.end());
        walk.pop_back();   // both endpoints project to u, keep one

        // 3. CLEAN THE WALK TO A SIMPLE ODD CYCLE
        const std::vector<long> cycle =
            detail::reduce_to_odd_cycle(std::move(walk), first_seen);
        if (cycle.empty())
            continue;

        // 4. EVALUATE AT x AND EMIT
        Cut cut;
        cut.kind = CutKind::OddCycle;
        cut.support = cycle;
        std::sort(cut.support.begin(), cut.support.end());
        cut.rhs = static_cast<double>(cycle.size() - 1) / 2.0;
        double total = 0.0;
        for (long u : cycle)
            total += x[u];
        cut.violation = total - cut.rhs;
        if (cut.violation <= cut_tol)
            continue;
        if (!seen.insert(detail::canonical_cycle(cycle)).second)
            continue;
        cuts.push_back(std::move(cut));
    }
    return cuts;
}

}  // namespace mstcc
