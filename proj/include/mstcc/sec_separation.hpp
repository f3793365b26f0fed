#pragma once

/// Exact subtour-elimination separation: a component check for integral
/// points, and two min-cut passes that together certify fractional points.

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include "cuts.hpp"
#include "instance.hpp"
#include "union_find.hpp"

namespace mstcc {

/// Directed network with adjacency lists; arcs 2k and 2k+1 are mutual reverses.
struct FlowNetwork
{
    struct Arc
    {
        long head;
        double cap;
    };

    long node_count;
    std::vector<Arc> arcs;
    std::vector<std::vector<long>> adj;

    explicit FlowNetwork(long nodes) : node_count(nodes), adj(nodes) {}

    /// Adds the arc tail->head plus its reverse, which may carry capacity too.
    void add_arc(long tail, long head, double cap, double reverse_cap = 0.0)
    {
        adj[tail].push_back(static_cast<long>(arcs.size()));
        arcs.push_back({head, cap});
        adj[head].push_back(static_cast<long>(arcs.size()));
        arcs.push_back({tail, reverse_cap});
    }
};

/// Value of a minimum s-t cut together with the node set on the source side.
struct MinCut
{
    double value;
    std::vector<char> source_side;
};

/// Highest-label preflow-push with the gap heuristic, run to a full max flow.
inline MinCut max_flow_min_cut(FlowNetwork net, long source, long sink)
{
    const long n = net.node_count;
    const double eps = 1e-12;
    const long ceiling = 2 * n + 1;

    std::vector<double> excess(n, 0.0);
    std::vector<long> height(n, 0);
    std::vector<long> ptr(n, 0);
    std::vector<long> level_count(ceiling + 1, 0);
    std::vector<std::vector<long>> bucket(ceiling + 1);
    std::vector<char> queued(n, 0);
    long highest = 0;

    height[source] = n;
    level_count[0] = n - 1;
    level_count[n] += 1;

    // Stale bucket entries are tolerated; pops revalidate height and excess.
    auto activate = [&](long v)
    {
        if (v == source || v == sink || queued[v] || excess[v] <= eps)
            return;
        queued[v] = 1;
        bucket[height[v]].push_back(v);
        highest = std::max(highest, height[v]);
    };

    // 1. SATURATE EVERY ARC LEAVING THE SOURCE
    for (long a : net.adj[source])
    {
        const double delta = net.arcs[a].cap;
        if (delta <= eps)
            continue;
        net.arcs[a].cap = 0.0;
        net.arcs[a ^ 1].cap += delta;
        excess[net.arcs[a].head] += delta;
        activate(net.arcs[a].head);
    }

    // 2. DISCHARGE ACTIVE NODES, HIGHEST LABEL FIRST
    while (highest >= 0)
    {
        if (bucket[highest].empty())
        {
            --highest;
            continue;
        }
        const long v = bucket[highest].back();
        bucket[highest].pop_back();
        if (!queued[v] || height[v] != highest)
            continue;
        queued[v] = 0;

        while (excess[v] > eps)
        {
            if (ptr[v] == static_cast<long>(net.adj[v].size()))
            {
                // Relabel to one above the lowest residual neighbour.
                long best = std::numeric_limits<long>::max();
                for (long a : net.adj[v])
                    if (net.arcs[a].cap > eps)
                        best = std::min(best, height[net.arcs[a].head] + 1);
                if (best > ceiling)
                    break;
                const long old_h = height[v];
                level_count[old_h] -= 1;
                height[v] = best;
                level_count[best] += 1;
                ptr[v] = 0;
                if (level_count[old_h] == 0 && old_h < n)
                {
                    // Gap: nothing below can be reached, lift the band over it.
                    for (long u = 0; u < n; ++u)
                    {
                        if (u == source || height[u] <= old_h || height[u] >= n)
                            continue;
                        level_count[height[u]] -= 1;
                        height[u] = n + 1;
                        level_count[n + 1] += 1;
                        if (queued[u])
                            bucket[n + 1].push_back(u);
                    }
                    highest = std::max(highest, n + 1);
                }
                continue;
            }
            const long a = net.adj[v][ptr[v]];
            FlowNetwork::Arc& arc = net.arcs[a];
            if (arc.cap > eps && height[v] == height[arc.head] + 1)
            {
                const double delta = std::min(excess[v], arc.cap);
                arc.cap -= delta;
                net.arcs[a ^ 1].cap += delta;
                excess[v] -= delta;
                excess[arc.head] += delta;
                activate(arc.head);
            }
            else
                ++ptr[v];
        }
    }

    // 3. SOURCE SIDE = RESIDUAL REACHABILITY FROM THE SOURCE
    MinCut cut;
    cut.value = excess[sink];
    cut.source_side.assign(n, 0);
    cut.source_side[source] = 1;
    std::vector<long> stack = {source};
    while (!stack.empty())
    {
        const long v = stack.back();
        stack.pop_back();
        for (long a : net.adj[v])
        {
            const long w = net.arcs[a].head;
            if (net.arcs[a].cap > eps && !cut.source_side[w])
            {
                cut.source_side[w] = 1;
                stack.push_back(w);
            }
        }
    }
    return cut;
}

/// Bidirected network carrying the current edge values both ways; arcs whose
/// value is below the threshold are dropped.
inline FlowNetwork support_network(const Instance& inst,
                                   const std::vector<double>& x,
                                   double threshold = 1e-9)
{
    FlowNetwork net(inst.vertex_count);
    for (long e = 0; e < inst.edge_count(); ++e)
        if (x[e] > threshold)
            net.add_arc(inst.edges[e].u - 1, inst.edges[e].v - 1, x[e], x[e]);
    return net;
}

namespace detail {

/// Appends the cycle-elimination cut on vertex_set when its violation at x
/// clears cut_tol; vertex sets already seen are skipped.
inline void append_sec_cut(const Instance& inst, const std::vector<double>& x,
                           const std::vector<long>& vertex_set, double cut_tol,
                           std::set<std::vector<long>>& seen,
                           std::vector<Cut>& cuts)
{
    const long size = static_cast<long>(vertex_set.size());
    if (size < 2 || size >= inst.vertex_count)
        return;
    if (!seen.insert(vertex_set).second)
        return;

    std::vector<char> in_set(inst.vertex_count + 1, 0);
    for (long v : vertex_set)
        in_set[v] = 1;

    Cut cut;
    cut.kind = CutKind::SubtourElimination;
    cut.rhs = static_cast<double>(size - 1);
    cut.vertex_set = vertex_set;
    double activity = 0.0;
    for (long e = 0; e < inst.edge_count(); ++e)
    {
        if (in_set[inst.edges[e].u] && in_set[inst.edges[e].v])
        {
            cut.support.push_back(e);
            activity += x[e];
        }
    }
    cut.violation = activity - cut.rhs;
    if (cut.violation > cut_tol)
        cuts.push_back(std::move(cut));
}

}  // namespace detail

/// One connected-component sweep for an integral point; emits the
/// cycle-elimination cut of every component holding too many edges.
inline std::vector<Cut> separate_sec_integral(const Instance& inst,
                                              const std::vector<double>& x,
                                              double cut_tol = 1e-5)
{
    const long n = inst.vertex_count;
    const long m = inst.edge_count();

    // 1. COMPONENTS OF THE CHOSEN EDGES
    DisjointSets comp(n + 1);
    for (long e = 0; e < m; ++e)
        if (x[e] > 0.5)
            comp.unite(inst.edges[e].u, inst.edges[e].v);

    std::vector<std::vector<long>> members(n + 1);
    for (long v = 1; v <= n; ++v)
        members[comp.find(v)].push_back(v);

    std::vector<double> inside(n + 1, 0.0);
    std::vector<std::vector<long>> support(n + 1);
    for (long e = 0; e < m; ++e)
    {
        const long ru = comp.find(inst.edges[e].u);
        if (ru == comp.find(inst.edges[e].v))
        {
            inside[ru] += x[e];
            support[ru].push_back(e);
        }
    }

    // 2. EMIT EVERY OVERFULL COMPONENT
    std::vector<Cut> cuts;
    for (long r = 1; r <= n; ++r)
    {
        const long size = static_cast<long>(members[r].size());
        if (size < 2 || size >= n)
            continue;
        const double rhs = static_cast<double>(size - 1);
        if (inside[r] > rhs + cut_tol)
        {
            Cut cut;
            cut.kind = CutKind::SubtourElimination;
            cut.support = std::move(support[r]);
            cut.rhs = rhs;
            cut.violation = inside[r] - rhs;
            cut.vertex_set = members[r];
            cuts.push_back(std::move(cut));
        }
    }
    return cuts;
}

/// Exact separation for a fractional point. A first pass roots min cuts at
/// vertex 1 and reads both shores of every deficient cut; a second pass then
/// maximises the violation over sets containing each vertex in turn, so a
/// violated inequality is found whenever one exists.
inline std::vector<Cut> separate_sec_fractional(const Instance& inst,
                                                const std::vector<double>& x,
                                                double cut_tol = 1e-5)
{
    const long n = inst.vertex_count;
    const long m = inst.edge_count();
    std::vector<Cut> cuts;
    std::set<std::vector<long>> seen;

    // 1. DEFICIENT-CUT PASS OVER THE BIDIRECTED SUPPORT NETWORK
    // A cut of value < 1 forces at least one shore to violate, because the
    // two induced totals then sum past (|S1|-1) + (|S2|-1).
    const FlowNetwork base = support_network(inst, x);
    for (long k = 2; k <= n; ++k)
    {
        const MinCut cut = max_flow_min_cut(base, 0, k - 1);
        if (cut.value >= 1.0 - 1e-5)
            continue;
        std::vector<long> near;
        std::vector<long> far;
        for (long v = 1; v <= n; ++v)
            (cut.source_side[v - 1] ? near : far).push_back(v);
        detail::append_sec_cut(inst, x, near, cut_tol, seen, cuts);
        detail::append_sec_cut(inst, x, far, cut_tol, seen, cuts);
    }

    // 2. COMPLETION PASS, ONE POINTED NETWORK PER VERTEX
    // Min cuts in this network realise max x(E(S)) - |S| over sets S holding
    // the pinned vertex, so the sweep reaches the globally worst set.
    std::vector<long> retained;
    double total = 0.0;
    for (long e = 0; e < m; ++e)
    {
        if (x[e] > 1e-9)
        {
            retained.push_back(e);
            total += x[e];
        }
    }
    const long r = static_cast<long>(retained.size());
    const long tau = r + n + 1;
    const double big = total + n + 4.0;
    for (long k = 1; k <= n; ++k)
    {
        FlowNetwork net(r + n + 2);
        for (long i = 0; i < r; ++i)
        {
            const Edge& edge = inst.edges[retained[i]];
            net.add_arc(0, 1 + i, x[retained[i]]);
            net.add_arc(1 + i, r + edge.u, big);
            net.add_arc(1 + i, r + edge.v, big);
        }
        for (long v = 1; v <= n; ++v)
            net.add_arc(r + v, tau, 1.0);
        net.add_arc(0, r + k, big);

        const MinCut cut = max_flow_min_cut(std::move(net), 0, tau);
        if (cut.value >= total + 1.0 - 1e-7)
            continue;
        std::vector<long> side;
        for (long v = 1; v <= n; ++v)
            if (cut.source_side[r + v])
                side.push_back(v);
        detail::append_sec_cut(inst, x, side, cut_tol, seen, cuts);
    }
    return cuts;
}

}  // namespace mstcc
