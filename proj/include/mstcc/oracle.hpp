#pragma once

/// Naive reference implementations used by the test suites. Everything here
/// is deliberately independent of the solver modules (own union-find, own
/// graph scans), so results stay meaningful as cross-checks.

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cuts.hpp"
#include "instance.hpp"

namespace mstcc {

struct TooLarge : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

struct OracleResult
{
    enum class Status
    {
        Optimal,
        Infeasible
    };

    Status status = Status::Infeasible;
    long long cost = 0;
    std::vector<long> tree;             // edge ids, ascending
    long long trees_enumerated = 0;     // spanning trees visited, conflict-free or not
};

namespace oracle_detail {

/// Local union-find, kept separate from the solver's on purpose.
struct Dsu
{
    std::vector<long> parent;

    explicit Dsu(long n) : parent(static_cast<std::size_t>(n))
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

    bool unite(long a, long b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        parent[b] = a;
        return true;
    }
};

struct TreeSearch
{
    const Instance& inst;
    long target_edges;
    std::vector<char> chosen;
    OracleResult best;

    explicit TreeSearch(const Instance& instance)
        : inst(instance),
          target_edges(instance.vertex_count - 1),
          chosen(instance.edges.size(), 0)
    {
    }

    bool conflict_free() const
    {
        for (const auto& [a, b] : inst.conflicts)
            if (chosen[a] && chosen[b])
                return false;
        return true;
    }

    /// Remaining edges still allow connecting every component.
    bool can_connect(const Dsu& state, long idx) const
    {
        Dsu closure = state;
        for (long k = idx; k < inst.edge_count(); ++k)
            closure.unite(inst.edges[k].u - 1, inst.edges[k].v - 1);
        long components = 0;
        for (long v = 0; v < inst.vertex_count; ++v)
            if (closure.find(v) == v)
                ++components;
        return components == 1;
    }

    void visit(long idx, long picked, const Dsu& state)
    {
        if (picked == target_edges)
        {
            ++best.trees_enumerated;
            if (!conflict_free())
                return;
            long long cost = 0;
            for (long e = 0; e < inst.edge_count(); ++e)
                if (chosen[e])
                    cost += inst.edges[e].cost;
            if (best.status == OracleResult::Status::Infeasible || cost < best.cost)
            {
                best.status = OracleResult::Status::Optimal;
                best.cost = cost;
                best.tree.clear();
                for (long e = 0; e < inst.edge_count(); ++e)
                    if (chosen[e])
                        best.tree.push_back(e);
            }
            return;
        }
        if (idx == inst.edge_count())
            return;
        if (picked + (inst.edge_count() - idx) < target_edges)
            return;
        if (!can_connect(state, idx))
            return;

        const Edge& e = inst.edges[idx];
        Dsu included = state;
        if (included.unite(e.u - 1, e.v - 1))
        {
            chosen[idx] = 1;
            visit(idx + 1, picked + 1, included);
            chosen[idx] = 0;
        }
        visit(idx + 1, picked, state);
    }
};

}  // namespace oracle_detail

/// Exhaustive optimum by spanning tree enumeration (edge include/exclude
/// with connectivity pruning). Guarded to n <= 12.
inline OracleResult brute_force_solve(const Instance& inst)
{
    if (inst.vertex_count > 12)
        throw TooLarge("brute_force_solve: guard admits at most 12 vertices");

    oracle_detail::TreeSearch search(inst);
    if (inst.vertex_count == 1)
    {
        search.best.status = OracleResult::Status::Optimal;
        search.best.trees_enumerated = 1;
        return search.best;
    }
    oracle_detail::Dsu state(inst.vertex_count);
    search.visit(0, 0, state);
    return search.best;
}

/// Classic minimum spanning tree, ties broken by edge id; conflicts ignored.
inline std::pair<long long, std::vector<long>> kruskal_mst(const Instance& inst)
{
    std::vector<long> order(inst.edges.size());
    std::iota(order.begin(), order.end(), 0L);
    std::sort(order.begin(), order.end(), [&](long a, long b)
    {
        if (inst.edges[a].cost != inst.edges[b].cost)
            return inst.edges[a].cost < inst.edges[b].cost;
        return a < b;
    });

    oracle_detail::Dsu state(inst.vertex_count);
    long long cost = 0;
    std::vector<long> tree;
    for (long e : order)
        if (state.unite(inst.edges[e].u - 1, inst.edges[e].v - 1))
        {
            cost += inst.edges[e].cost;
            tree.push_back(e);
        }
    if (static_cast<long>(tree.size()) != inst.vertex_count - 1)
        throw std::invalid_argument("kruskal_mst: disconnected graph");
    std::sort(tree.begin(), tree.end());
    return {cost, tree};
}

/// Most violated subtour elimination constraint by scanning every nonempty
/// proper vertex subset; none when the best violation is within 1e-5.
/// Guarded to n <= 10.
inline std::optional<Cut> naive_sec_violation(const Instance& inst,
                                              const std::vector<double>& x)
{
    const long n = inst.vertex_count;
    if (n > 10)
        throw TooLarge("naive_sec_violation: guard admits at most 10 vertices");

    double best_violation = 0.0;
    unsigned long best_mask = 0;
    for (unsigned long mask = 1; mask + 1 < (1ul << n); ++mask)
    {
        double inside = 0.0;
        for (long e = 0; e < inst.edge_count(); ++e)
            if ((mask >> (inst.edges[e].u - 1) & 1ul)
                && (mask >> (inst.edges[e].v - 1) & 1ul))
                inside += x[e];
        const long size = __builtin_popcountl(mask);
        const double violation = inside - static_cast<double>(size - 1);
        if (violation > best_violation)
        {
            best_violation = violation;
            best_mask = mask;
        }
    }

    if (best_violation <= 1e-5)
        return std::nullopt;

    Cut cut;
    cut.kind = CutKind::SubtourElimination;
    for (long v = 0; v < n; ++v)
        if (best_mask >> v & 1ul)
            cut.vertex_set.push_back(v + 1);
    for (long e = 0; e < inst.edge_count(); ++e)
        if ((best_mask >> (inst.edges[e].u - 1) & 1ul)
            && (best_mask >> (inst.edges[e].v - 1) & 1ul))
            cut.support.push_back(e);
    cut.rhs = static_cast<double>(cut.vertex_set.size()) - 1.0;
    cut.violation = best_violation;
    return cut;
}

/// Most violated odd-cycle inequality by enumerating every simple odd cycle
/// of the conflict graph; none when the best violation is within 1e-5.
/// Guarded to 12 nodes.
inline std::optional<Cut> naive_odd_cycle_violation(const ConflictGraphView& cg,
                                                    const std::vector<double>& x)
{
    if (cg.node_count > 12)
        throw TooLarge("naive_odd_cycle_violation: guard admits at most 12 nodes");

    double best_violation = 0.0;
    std::vector<long> best_cycle;
    std::vector<long> path;
    std::vector<char> on_path(static_cast<std::size_t>(cg.node_count), 0);

    // Each simple cycle is visited once: smallest node first, and the second
    // node smaller than the last to fix the direction.
    auto extend = [&](auto&& self, long node) -> void
    {
        for (long next : cg.neighbors[node])
        {
            if (next == path.front())
            {
                if (path.size() >= 3 && path.size() % 2 == 1
                    && path[1] < path.back())
                {
                    double total = 0.0;
                    for (long u : path)
                        total += x[u];
                    const double violation =
                        total - static_cast<double>(path.size() - 1) / 2.0;
                    if (violation > best_violation)
                    {
                        best_violation = violation;
                        best_cycle = path;
                    }
                }
                continue;
            }
            if (next < path.front() || on_path[next])
                continue;
            path.push_back(next);
            on_path[next] = 1;
            self(self, next);
            on_path[next] = 0;
            path.pop_back();
        }
    };

    for (long start = 0; start < cg.node_count; ++start)
    {
        path.assign(1, start);
        on_path[start] = 1;
        extend(extend, start);
        on_path[start] = 0;
    }

    if (best_violation <= 1e-5)
        return std::nullopt;

    Cut cut;
    cut.kind = CutKind::OddCycle;
    cut.support = best_cycle;
    std::sort(cut.support.begin(), cut.support.end());
    cut.rhs = static_cast<double>(best_cycle.size() - 1) / 2.0;
    cut.violation = best_violation;
    return cut;
}

}  // namespace mstcc
