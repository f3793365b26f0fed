#pragma once

/// Branch-and-cut search: root model assembly, an exact cut loop combining
/// cycle-elimination and odd-cycle separation, orthogonality-filtered cut
/// selection, most-fractional branching, and best-bound node selection.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "clique_enum.hpp"
#include "cuts.hpp"
#include "instance.hpp"
#include "lp_core.hpp"
#include "oddcycle_separation.hpp"
#include "sec_separation.hpp"
#include "union_find.hpp"

namespace mstcc {

enum class SolveStatus
{
    Optimal,
    FeasibleWithGap,
    Infeasible,
    TimeLimit
};

/// Search parameters; the defaults match the reported experimental setup.
struct SolverConfig
{
    double time_limit_s = 5000.0;
    double int_tol = 1e-5;
    double cut_tol = 1e-5;
    double abs_gap = 0.9999;
    double ortho_threshold = 0.1;
    bool enable_oci = true;
    bool enable_cliques = true;
    long clique_cap = 0;                 /// 0 picks max(|C|, 10000)
    long long objective_offset = 0;      /// folded into every reported value
    std::optional<std::vector<long>> initial_tree;   /// warm incumbent
};

/// One open subproblem; bounds are rebuilt from the fixings when visited.
struct SearchNode
{
    std::vector<long> fixed_zero;
    std::vector<long> fixed_one;
    double parent_bound;
    long depth;
    long seq;
};

struct SearchStats
{
    long nodes = 0;
    long branchings = 0;
    long lp_solves = 0;
    long cuts_sec = 0;
    long cuts_odd_cycle = 0;
    long cuts_clique = 0;
    long cuts_edge_pair = 0;
    long bound_violations = 0;
    double wall_seconds = 0.0;
};

struct SolveResult
{
    SolveStatus status;
    std::optional<double> primal;
    double dual;
    std::optional<std::vector<long>> incumbent;
    std::optional<double> root_lp_bound;
    SearchStats stats;
};

/// Conflict rows for the root model: maximal-clique inequalities when they
/// are enabled, one pairwise inequality per conflict otherwise.
inline std::vector<Cut> root_conflict_rows(const Instance& inst,
                                           const SolverConfig& cfg)
{
    if (cfg.enable_cliques)
        return initial_stable_constraints(inst, cfg.clique_cap);
    std::vector<Cut> rows;
    for (const ConflictPair& pair : inst.conflicts)
    {
        Cut cut;
        cut.kind = CutKind::EdgePair;
        cut.support = {pair.first, pair.second};
        cut.rhs = 1.0;
        cut.violation = 0.0;
        rows.push_back(std::move(cut));
    }
    return rows;
}

namespace detail {

/// Edge costs, unit box, and the cardinality row; conflict rows come on top.
inline LpModel base_model(const Instance& inst)
{
    const long m = inst.edge_count();
    LpModel model;
    model.objective.reserve(m);
    for (const Edge& edge : inst.edges)
        model.objective.push_back(static_cast<double>(edge.cost));
    model.var_bounds.assign(m, {0.0, 1.0});

    LpRow cardinality;
    cardinality.coeffs.reserve(m);
    for (long e = 0; e < m; ++e)
        cardinality.coeffs.push_back({e, 1.0});
    cardinality.sense = RowSense::Equal;
    cardinality.rhs = static_cast<double>(inst.vertex_count - 1);
    model.rows.push_back(std::move(cardinality));
    return model;
}

}  // namespace detail

/// Root relaxation: edge costs, unit box, the cardinality row, and the
/// conflict rows picked by the configuration.
inline LpModel build_root(const Instance& inst, const SolverConfig& cfg)
{
    return add_rows(detail::base_model(inst), root_conflict_rows(inst, cfg));
}

/// Keeps the most violated cut and every further cut nearly orthogonal to
/// it; ordering is violation descending, then support size, then support.
inline std::vector<Cut> select_cuts(std::vector<Cut> violated,
                                    const SolverConfig& cfg)
{
    std::sort(violated.begin(), violated.end(),
              [](const Cut& a, const Cut& b)
              {
                  if (a.violation != b.violation)
                      return a.violation > b.violation;
                  if (a.support.size() != b.support.size())
                      return a.support.size() < b.support.size();
                  return a.support < b.support;
              });
    std::vector<Cut> kept;
    for (Cut& cut : violated)
    {
        if (kept.empty())
        {
            kept.push_back(std::move(cut));
            continue;
        }
        const std::vector<long>& top = kept.front().support;
        const std::vector<long>& own = cut.support;
        long shared = 0;
        for (std::size_t i = 0, j = 0; i < top.size() && j < own.size();)
        {
            if (top[i] < own[j])
                ++i;
            else if (top[i] > own[j])
                ++j;
            else
            {
                ++shared;
                ++i;
                ++j;
            }
        }
        const double cosine =
            static_cast<double>(shared)
            / std::sqrt(static_cast<double>(top.size())
                        * static_cast<double>(own.size()));
        if (cosine <= cfg.ortho_threshold + 1e-12)
            kept.push_back(std::move(cut));
    }
    return kept;
}

namespace detail {

/// Exact integer cost of the edge set when it is a conflict-free spanning
/// tree of inst; no value otherwise.
inline std::optional<long long> feasible_tree_cost(const Instance& inst,
                                                   const std::vector<long>& tree)
{
    const long n = inst.vertex_count;
    const long m = inst.edge_count();
    if (static_cast<long>(tree.size()) != n - 1)
        return std::nullopt;
    std::vector<char> chosen(m, 0);
    DisjointSets comp(n + 1);
    long long cost = 0;
    for (long e : tree)
    {
        if (e < 0 || e >= m || chosen[e])
            return std::nullopt;
        chosen[e] = 1;
        cost += inst.edges[e].cost;
        if (!comp.unite(inst.edges[e].u, inst.edges[e].v))
            return std::nullopt;
    }
    // n - 1 acyclic edges over ids 0..n leave the sentinel plus one component.
    if (comp.components() != 2)
        return std::nullopt;
    for (const ConflictPair& pair : inst.conflicts)
        if (chosen[pair.first] && chosen[pair.second])
            return std::nullopt;
    return cost;
}

}  // namespace detail

/// Exact solver; expects a preprocessed instance and reports every objective
/// with cfg.objective_offset already folded in.
inline SolveResult solve(const Instance& inst, const SolverConfig& cfg)
{
    const auto start = std::chrono::steady_clock::now();
    const auto elapsed = [&start]()
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now()
                                             - start)
            .count();
    };
    const double inf = std::numeric_limits<double>::infinity();
    const long m = inst.edge_count();
    const double offset = static_cast<double>(cfg.objective_offset);
    const ConflictGraphView cg(inst);

    SolveResult result;
    SearchStats& stats = result.stats;

    // 1. ROOT MODEL AND THE GLOBAL CUT POOL
    std::vector<Cut> pool = root_conflict_rows(inst, cfg);
    for (const Cut& cut : pool)
    {
        if (cut.kind == CutKind::Clique)
            ++stats.cuts_clique;
        else
            ++stats.cuts_edge_pair;
    }
    LpModel model = add_rows(detail::base_model(inst), pool);

    // 2. WARM INCUMBENT, REVERIFIED
    std::optional<std::vector<long>> inc_tree;
    long long inc_cost = 0;
    if (cfg.initial_tree)
    {
        const auto cost = detail::feasible_tree_cost(inst, *cfg.initial_tree);
        if (!cost)
            throw std::invalid_argument(
                "initial tree is not a conflict-free spanning tree");
        inc_tree = *cfg.initial_tree;
        std::sort(inc_tree->begin(), inc_tree->end());
        inc_cost = *cost;
    }

    // 3. BEST-BOUND SEARCH
    struct NodeOrder
    {
        bool operator()(const SearchNode& a, const SearchNode& b) const
        {
            if (a.parent_bound != b.parent_bound)
                return a.parent_bound > b.parent_bound;
            if (a.depth != b.depth)
                return a.depth < b.depth;
            return a.seq > b.seq;
        }
    };
    std::priority_queue<SearchNode, std::vector<SearchNode>, NodeOrder> open;
    open.push({{}, {}, -inf, 0, 0});
    long seq_counter = 1;
    bool timed_out = false;
    double interrupted_bound = inf;
    std::optional<double> root_bound;

    while (!open.empty())
    {
        if (elapsed() > cfg.time_limit_s)
        {
            timed_out = true;
            break;
        }
        SearchNode node = open.top();
        open.pop();
        ++stats.nodes;
        if (inc_tree
            && node.parent_bound >= static_cast<double>(inc_cost) - cfg.abs_gap)
            continue;

        // Node bounds: unit box, then the fixings and their conflict partners.
        std::vector<std::pair<double, double>> bounds(m, {0.0, 1.0});
        for (long e : node.fixed_zero)
            bounds[e] = {0.0, 0.0};
        bool clash = false;
        for (long e : node.fixed_one)
        {
            bounds[e] = {1.0, 1.0};
            for (long p : cg.neighbors[e])
            {
                if (std::binary_search(node.fixed_one.begin(),
                                       node.fixed_one.end(), p))
                {
                    clash = true;
                    break;
                }
                bounds[p] = {0.0, 0.0};
            }
            if (clash)
                break;
        }
        if (clash)
            continue;

        bool first_lp = true;
        double bound = node.parent_bound;
        while (true)
        {
            if (elapsed() > cfg.time_limit_s)
            {
                timed_out = true;
                interrupted_bound = std::max(node.parent_bound, bound);
                break;
            }

            LpModel node_model = model;
            node_model.var_bounds = bounds;
            const LpSolution sol = solve_lp(node_model);
            ++stats.lp_solves;
            if (sol.status == LpStatus::Infeasible)
                break;
            bound = sol.objective_value;
            if (node.depth == 0)
                root_bound = bound;
            if (first_lp)
            {
                if (bound < node.parent_bound - 1e-7)
                    ++stats.bound_violations;
                first_lp = false;
            }
            if (inc_tree
                && bound >= static_cast<double>(inc_cost) - cfg.abs_gap)
                break;

            const std::vector<double>& x = sol.values;
            bool integral = true;
            for (long e = 0; e < m && integral; ++e)
                integral = std::abs(x[e] - std::nearbyint(x[e])) <= cfg.int_tol;

            // 3a. SEPARATE
            std::vector<Cut> found;
            if (integral)
            {
                found = separate_sec_integral(inst, x, cfg.cut_tol);
                if (found.empty())
                {
                    std::vector<long> tree;
                    for (long e = 0; e < m; ++e)
                        if (x[e] > 0.5)
                            tree.push_back(e);
                    const auto cost = detail::feasible_tree_cost(inst, tree);
                    if (!cost)
                        throw NumericalFailure(
                            "integral point failed the tree check");
                    if (!inc_tree || *cost < inc_cost)
                    {
                        inc_tree = std::move(tree);
                        inc_cost = *cost;
                    }
                    break;
                }
            }
            else
            {
                found = separate_sec_fractional(inst, x, cfg.cut_tol);
                if (cfg.enable_oci)
                {
                    std::vector<Cut> odd =
                        separate_odd_cycles(cg, x, cfg.cut_tol, cfg.int_tol);
                    for (Cut& cut : odd)
                        found.push_back(std::move(cut));
                }
            }

            // 3b. BRANCH WHEN NOTHING SEPARATES
            if (found.empty())
            {
                long pick = -1;
                double best = 2.0;
                for (long e = 0; e < m; ++e)
                {
                    if (std::abs(x[e] - std::nearbyint(x[e])) <= cfg.int_tol)
                        continue;
                    const double score = std::abs(x[e] - 0.5);
                    if (score < best)
                    {
                        best = score;
                        pick = e;
                    }
                }
                if (pick < 0)
                    throw NumericalFailure("no fractional variable to branch on");
                ++stats.branchings;

                SearchNode one;
                one.fixed_zero = node.fixed_zero;
                one.fixed_one = node.fixed_one;
                one.fixed_one.insert(std::upper_bound(one.fixed_one.begin(),
                                                      one.fixed_one.end(), pick),
                                     pick);
                one.parent_bound = bound;
                one.depth = node.depth + 1;
                one.seq = seq_counter;

                SearchNode zero;
                zero.fixed_zero = node.fixed_zero;
                zero.fixed_zero.insert(std::upper_bound(zero.fixed_zero.begin(),
                                                        zero.fixed_zero.end(),
                                                        pick),
                                       pick);
                zero.fixed_one = node.fixed_one;
                zero.parent_bound = bound;
                zero.depth = node.depth + 1;
                zero.seq = seq_counter + 1;
                seq_counter += 2;

                open.push(std::move(one));
                open.push(std::move(zero));
                break;
            }

            // 3c. ADD THE SELECTED CUTS GLOBALLY
            std::vector<Cut> fresh;
            for (Cut& cut : found)
            {
                bool duplicate = false;
                for (const Cut& held : pool)
                    if (same_row(cut, held))
                    {
                        duplicate = true;
                        break;
                    }
                for (const Cut& held : fresh)
                    if (!duplicate && same_row(cut, held))
                        duplicate = true;
                if (!duplicate)
                    fresh.push_back(std::move(cut));
            }
            if (fresh.empty())
                throw NumericalFailure("separated a cut already in the pool");
            std::vector<Cut> selected = select_cuts(std::move(fresh), cfg);
            for (const Cut& cut : selected)
            {
                if (cut.kind == CutKind::SubtourElimination)
                    ++stats.cuts_sec;
                else if (cut.kind == CutKind::OddCycle)
                    ++stats.cuts_odd_cycle;
            }
            model = add_rows(std::move(model), selected);
            for (Cut& cut : selected)
                pool.push_back(std::move(cut));
        }
        if (timed_out)
            break;
    }

    // 4. REPORT
    stats.wall_seconds = elapsed();
    if (root_bound)
        result.root_lp_bound = *root_bound + offset;
    if (timed_out)
    {
        double open_best = interrupted_bound;
        while (!open.empty())
        {
            open_best = std::min(open_best, open.top().parent_bound);
            open.pop();
        }
        if (inc_tree)
        {
            result.status = SolveStatus::FeasibleWithGap;
            result.primal = static_cast<double>(inc_cost) + offset;
            result.incumbent = std::move(inc_tree);
            result.dual =
                std::min(open_best, static_cast<double>(inc_cost)) + offset;
        }
        else
        {
            result.status = SolveStatus::TimeLimit;
            result.dual = open_best == inf ? -inf : open_best + offset;
        }
        return result;
    }
    if (inc_tree)
    {
        result.status = SolveStatus::Optimal;
        result.primal = static_cast<double>(inc_cost) + offset;
        result.dual = *result.primal;
        result.incumbent = std::move(inc_tree);
        return result;
    }
    result.status = SolveStatus::Infeasible;
    result.dual = inf;
    return result;
}

}  // namespace mstcc
