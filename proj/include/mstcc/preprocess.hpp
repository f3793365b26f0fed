#pragma once

/// Three-phase instance reduction. Phase 1 contracts bridges (their cost
/// moves to the objective offset, their conflict partners leave the graph,
/// self-loops created by the contraction are deleted). Phase 2 probes each
/// edge that still has conflicts: if forcing it into the solution
/// disconnects the graph along the implication chain, the edge can be
/// deleted. Phase 3 probes pairs the same way; a disconnecting pair becomes
/// a new conflict. Each phase reruns as long as the instance changes.

#include <algorithm>
#include <chrono>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "instance.hpp"
#include "union_find.hpp"

namespace mstcc {

enum class PreprocessStatus
{
    Reduced,
    Infeasible,
    SolvedOptimal
};

struct PreprocessOutcome
{
    Instance reduced;
    long long offset = 0;
    std::vector<long> contracted_edges;         // original edge ids fixed to 1
    std::vector<long> removed_edges;            // original edge ids fixed to 0
    std::vector<ConflictPair> added_conflicts;  // original edge ids
    PreprocessStatus status = PreprocessStatus::Reduced;
    std::optional<std::vector<long>> primal_solution;   // original edge ids
    std::vector<long> edge_map;                 // reduced edge id -> original edge id
    double elapsed = 0.0;
};

enum class ProbeVerdict
{
    Connected,
    Disconnected
};

struct ProbeResult
{
    ProbeVerdict verdict = ProbeVerdict::Connected;
    std::vector<long> implied_ones;     // contains the forced edges themselves
    std::vector<long> implied_zeros;
};

struct ForcedConflict : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

namespace detail {

/// Bridges of a multigraph given as arc lists (neighbor, edge id), one
/// depth-first pass with discovery/low labels. The arc mirroring the
/// entering edge is skipped by id, so a parallel pair is never a bridge.
inline std::vector<long> multigraph_bridges(
    const std::vector<std::vector<std::pair<long, long>>>& adj)
{
    const long k = static_cast<long>(adj.size());
    std::vector<long> disc(k, -1), low(k, 0);
    std::vector<long> bridges;
    long timer = 0;

    struct Frame
    {
        long node;
        long entry_edge;
        std::size_t next_arc;
    };
    std::vector<Frame> stack;

    for (long root = 0; root < k; ++root)
    {
        if (disc[root] != -1)
            continue;
        disc[root] = low[root] = timer++;
        stack.push_back({root, -1, 0});
        while (!stack.empty())
        {
            Frame& frame = stack.back();
            if (frame.next_arc < adj[frame.node].size())
            {
                const auto [to, edge] = adj[frame.node][frame.next_arc];
                ++frame.next_arc;
                if (edge == frame.entry_edge)
                    continue;
                if (disc[to] == -1)
                {
                    disc[to] = low[to] = timer++;
                    stack.push_back({to, edge, 0});  // frame reference dies here
                }
                else
                    low[frame.node] = std::min(low[frame.node], disc[to]);
            }
            else
            {
                const Frame done = frame;
                stack.pop_back();
                if (!stack.empty())
                {
                    Frame& parent = stack.back();
                    low[parent.node] = std::min(low[parent.node], low[done.node]);
                    if (low[done.node] > disc[parent.node])
                        bridges.push_back(done.entry_edge);
                }
            }
        }
    }
    std::sort(bridges.begin(), bridges.end());
    return bridges;
}

/// Mutable contraction state over an instance: merged vertices, surviving
/// edges, and the current conflict adjacency (original edge ids throughout).
struct WorkGraph
{
    const Instance* source;
    DisjointSets comp;
    std::vector<char> alive;
    std::vector<std::vector<long>> partners;    // sorted adjacency

    explicit WorkGraph(const Instance& inst)
        : source(&inst),
          comp(inst.vertex_count),
          alive(inst.edges.size(), 1),
          partners(inst.edges.size())
    {
        for (const auto& [a, b] : inst.conflicts)
        {
            partners[a].push_back(b);
            partners[b].push_back(a);
        }
        for (auto& list : partners)
            std::sort(list.begin(), list.end());
    }

    long edge_total() const { return source->edge_count(); }

    long live_vertices() const { return comp.components(); }

    std::pair<long, long> ends(long e)
    {
        return {comp.find(source->edges[e].u - 1),
                comp.find(source->edges[e].v - 1)};
    }

    bool has_conflicts(long e) const { return !partners[e].empty(); }

    bool in_conflict(long a, long b) const
    {
        return std::binary_search(partners[a].begin(), partners[a].end(), b);
    }

    void drop_edge(long e)
    {
        alive[e] = 0;
        for (long k : partners[e])
        {
            auto& list = partners[k];
            list.erase(std::lower_bound(list.begin(), list.end(), e));
        }
        partners[e].clear();
    }

    void add_pair(long a, long b)
    {
        partners[a].insert(std::lower_bound(partners[a].begin(), partners[a].end(), b), b);
        partners[b].insert(std::lower_bound(partners[b].begin(), partners[b].end(), a), a);
    }

    /// Connectivity of the surviving edges minus an excluded set.
    bool residual_connected(const std::vector<char>& excluded)
    {
        DisjointSets link = comp;
        for (long e = 0; e < edge_total(); ++e)
            if (alive[e] && !excluded[e])
                link.unite(source->edges[e].u - 1, source->edges[e].v - 1);
        return link.components() == 1;
    }

    /// Bridges of the surviving edges minus an excluded set, original ids.
    std::vector<long> residual_bridges(const std::vector<char>& excluded)
    {
        const long n = source->vertex_count;
        std::vector<long> index(static_cast<std::size_t>(n), -1);
        long live = 0;
        for (long v = 0; v < n; ++v)
        {
            const long r = comp.find(v);
            if (index[r] == -1)
                index[r] = live++;
        }
        std::vector<std::vector<std::pair<long, long>>> adj(static_cast<std::size_t>(live));
        for (long e = 0; e < edge_total(); ++e)
        {
            if (!alive[e] || excluded[e])
                continue;
            const auto [ru, rv] = ends(e);
            if (ru == rv)
                continue;
            adj[index[ru]].push_back({index[rv], e});
            adj[index[rv]].push_back({index[ru], e});
        }
        return multigraph_bridges(adj);
    }
};

/// Forced-edge implication chain to a fixpoint. Conflicts of forced edges
/// leave the residual graph; bridges of what remains become forced in turn;
/// Disconnected the moment the residual graph cannot span all vertices.
inline ProbeResult probe_forced(WorkGraph& work, const std::vector<long>& forced)
{
    const long m = work.edge_total();
    std::vector<char> is_one(static_cast<std::size_t>(m), 0);
    std::vector<char> is_zero(static_cast<std::size_t>(m), 0);
    std::vector<long> ones, zeros;

    for (long e : forced)
        if (!is_one[e])
        {
            is_one[e] = 1;
            ones.push_back(e);
        }

    ProbeResult result;
    bool settled = false;
    while (!settled)
    {
        bool grew = false;

        // 1. CONFLICTS OF FORCED EDGES LEAVE THE GRAPH
        for (std::size_t i = 0; i < ones.size(); ++i)
            for (long k : work.partners[ones[i]])
                if (!is_one[k] && !is_zero[k])
                {
                    is_zero[k] = 1;
                    zeros.push_back(k);
                    grew = true;
                }

        // 2. THE RESIDUAL GRAPH MUST STILL SPAN EVERY VERTEX
        if (!work.residual_connected(is_zero))
        {
            result.verdict = ProbeVerdict::Disconnected;
            break;
        }

        // 3. RESIDUAL BRIDGES BECOME FORCED
        bool clash = false;
        for (long b : work.residual_bridges(is_zero))
        {
            if (is_one[b])
                continue;
            for (long k : work.partners[b])
                if (is_one[k])
                {
                    // a forced chain needs b, but a forced edge excludes it
                    is_zero[b] = 1;
                    zeros.push_back(b);
                    clash = true;
                    break;
                }
            if (clash)
                break;
            is_one[b] = 1;
            ones.push_back(b);
            grew = true;
        }
        if (clash)
        {
            result.verdict = ProbeVerdict::Disconnected;
            break;
        }
        settled = !grew;
    }

    std::sort(ones.begin(), ones.end());
    std::sort(zeros.begin(), zeros.end());
    result.implied_ones = std::move(ones);
    result.implied_zeros = std::move(zeros);
    return result;
}

}  // namespace detail

/// Edges whose removal disconnects the instance graph.
inline std::vector<long> find_bridges(const Instance& inst)
{
    std::vector<std::vector<std::pair<long, long>>> adj(
        static_cast<std::size_t>(inst.vertex_count));
    for (long e = 0; e < inst.edge_count(); ++e)
    {
        const Edge& edge = inst.edges[e];
        if (edge.u == edge.v)
            continue;
        adj[edge.u - 1].push_back({edge.v - 1, e});
        adj[edge.v - 1].push_back({edge.u - 1, e});
    }
    return detail::multigraph_bridges(adj);
}

/// Implication chain from tentatively forcing a set of edges into the
/// solution. The forced set must be pairwise conflict-free.
inline ProbeResult propagate_forced(const Instance& inst,
                                    const std::vector<long>& forced)
{
    detail::WorkGraph work(inst);
    for (long e : forced)
        if (e < 0 || e >= inst.edge_count())
            throw std::invalid_argument("propagate_forced: edge id out of range");
    for (std::size_t i = 0; i < forced.size(); ++i)
        for (std::size_t j = i + 1; j < forced.size(); ++j)
            if (work.in_conflict(forced[i], forced[j]))
                throw ForcedConflict("propagate_forced: forced edges "
                                     + std::to_string(forced[i] + 1) + " and "
                                     + std::to_string(forced[j] + 1)
                                     + " conflict");
    return detail::probe_forced(work, forced);
}

inline PreprocessOutcome preprocess(const Instance& inst)
{
    const auto t0 = std::chrono::steady_clock::now();
    PreprocessOutcome out;
    detail::WorkGraph work(inst);
    const long m = inst.edge_count();
    const std::vector<char> nothing(static_cast<std::size_t>(m), 0);

    long long best_cost = 0;
    std::vector<long> best_tree;
    bool have_primal = false;

    auto remove_fixed_zero = [&](long e)
    {
        work.drop_edge(e);
        out.removed_edges.push_back(e);
    };

    // Lift a probe fixpoint into a candidate tree of the original instance:
    // surviving edges minus the probe zeros, plus everything contracted.
    auto consider_primal = [&](const ProbeResult& probe)
    {
        if (probe.verdict != ProbeVerdict::Connected)
            return;
        std::vector<char> excluded(static_cast<std::size_t>(m), 0);
        for (long e : probe.implied_zeros)
            excluded[e] = 1;
        std::vector<long> candidate = out.contracted_edges;
        for (long e = 0; e < m; ++e)
            if (work.alive[e] && !excluded[e])
                candidate.push_back(e);
        if (static_cast<long>(candidate.size()) != inst.vertex_count - 1)
            return;
        DisjointSets span(inst.vertex_count);
        for (long e : candidate)
            span.unite(inst.edges[e].u - 1, inst.edges[e].v - 1);
        if (span.components() != 1)
            return;
        std::vector<char> inside(static_cast<std::size_t>(m), 0);
        for (long e : candidate)
            inside[e] = 1;
        for (const auto& [a, b] : inst.conflicts)
            if (inside[a] && inside[b])
                return;
        long long cost = 0;
        for (long e : candidate)
            cost += inst.edges[e].cost;
        if (!have_primal || cost < best_cost)
        {
            have_primal = true;
            best_cost = cost;
            std::sort(candidate.begin(), candidate.end());
            best_tree = std::move(candidate);
        }
    };

    // PHASE 1: CONTRACT BRIDGES UNTIL NONE REMAIN
    auto phase1 = [&]() -> PreprocessStatus
    {
        for (;;)
        {
            if (!work.residual_connected(nothing))
                return PreprocessStatus::Infeasible;
            if (work.live_vertices() == 1)
                return PreprocessStatus::SolvedOptimal;
            const std::vector<long> bridges = work.residual_bridges(nothing);
            if (bridges.empty())
                return PreprocessStatus::Reduced;

            const long e = bridges.front();
            out.offset += inst.edges[e].cost;
            out.contracted_edges.push_back(e);
            const auto [ru, rv] = work.ends(e);
            work.alive[e] = 0;
            const std::vector<long> doomed = work.partners[e];
            for (long k : doomed)
                remove_fixed_zero(k);
            work.partners[e].clear();
            work.comp.unite(ru, rv);
            for (long f = 0; f < m; ++f)
            {
                if (!work.alive[f])
                    continue;
                const auto [a, b] = work.ends(f);
                if (a == b)
                    remove_fixed_zero(f);
            }
        }
    };

    auto finalize = [&](PreprocessStatus status)
    {
        out.status = status;

        // reduced instance from the surviving state
        std::vector<long> vertex_id(static_cast<std::size_t>(inst.vertex_count), 0);
        long live = 0;
        for (long v = 0; v < inst.vertex_count; ++v)
        {
            const long r = work.comp.find(v);
            if (vertex_id[r] == 0)
                vertex_id[r] = ++live;
        }
        out.reduced.vertex_count = live;
        std::vector<long> new_id(static_cast<std::size_t>(m), -1);
        for (long e = 0; e < m; ++e)
        {
            if (!work.alive[e])
                continue;
            const auto [ru, rv] = work.ends(e);
            new_id[e] = out.reduced.edge_count();
            out.edge_map.push_back(e);
            out.reduced.edges.push_back({std::min(vertex_id[ru], vertex_id[rv]),
                                         std::max(vertex_id[ru], vertex_id[rv]),
                                         inst.edges[e].cost});
        }
        std::set<ConflictPair> pairs;
        for (long e = 0; e < m; ++e)
            if (work.alive[e])
                for (long k : work.partners[e])
                    if (work.alive[k])
                        pairs.insert({std::min(new_id[e], new_id[k]),
                                      std::max(new_id[e], new_id[k])});
        out.reduced.conflicts.assign(pairs.begin(), pairs.end());
        out.reduced.name = std::to_string(out.reduced.vertex_count) + "-"
                           + std::to_string(out.reduced.edge_count()) + "-"
                           + std::to_string(out.reduced.conflict_count());

        if (status == PreprocessStatus::SolvedOptimal)
        {
            std::vector<long> tree = out.contracted_edges;
            std::sort(tree.begin(), tree.end());
            out.primal_solution = std::move(tree);
        }
        else if (status != PreprocessStatus::Infeasible && have_primal)
            out.primal_solution = best_tree;

        out.elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
    };

    PreprocessStatus status = phase1();
    if (status != PreprocessStatus::Reduced)
    {
        finalize(status);
        return out;
    }

    for (;;)
    {
        // PHASE 2: PROBE SINGLE EDGES THAT STILL HAVE CONFLICTS
        bool swept_clean = false;
        while (!swept_clean)
        {
            swept_clean = true;
            for (long e = 0; e < m; ++e)
            {
                if (!work.alive[e] || !work.has_conflicts(e))
                    continue;
                const ProbeResult probe = detail::probe_forced(work, {e});
                if (probe.verdict == ProbeVerdict::Disconnected)
                {
                    remove_fixed_zero(e);
                    status = phase1();
                    if (status != PreprocessStatus::Reduced)
                    {
                        finalize(status);
                        return out;
                    }
                    swept_clean = false;
                    break;
                }
                consider_primal(probe);
            }
        }

        // PHASE 3: PROBE NON-CONFLICTING PAIRS, AT LEAST ONE SIDE CONFLICTED
        bool added = false;
        for (long a = 0; a < m && !added; ++a)
        {
            if (!work.alive[a])
                continue;
            for (long b = a + 1; b < m; ++b)
            {
                if (!work.alive[b] || work.in_conflict(a, b))
                    continue;
                if (!work.has_conflicts(a) && !work.has_conflicts(b))
                    continue;
                const ProbeResult probe = detail::probe_forced(work, {a, b});
                if (probe.verdict == ProbeVerdict::Disconnected)
                {
                    work.add_pair(a, b);
                    out.added_conflicts.push_back({a, b});
                    added = true;
                    break;
                }
                consider_primal(probe);
            }
        }
        if (!added)
            break;
    }

    finalize(PreprocessStatus::Reduced);
    return out;
}

}  // namespace mstcc
