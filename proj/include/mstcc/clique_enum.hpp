#pragma once

/// Maximal cliques of the conflict graph by pivoted recursive enumeration,
/// and the stable-set rows installed a priori: one inequality per maximal
/// clique with at least two members, or one row per conflict pair when the
/// clique count exceeds the cap.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "cuts.hpp"
#include "instance.hpp"

namespace mstcc {

struct CapExceeded : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

using Clique = std::vector<long>;   // members, ascending

namespace detail {

inline std::vector<long> sorted_intersection(const std::vector<long>& a,
                                             const std::vector<long>& b)
{
    std::vector<long> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(out));
    return out;
}

struct CliqueSearch
{
    const ConflictGraphView& cg;
    long cap;
    std::vector<Clique> found;
    Clique current;

    CliqueSearch(const ConflictGraphView& graph, long limit)
        : cg(graph), cap(limit)
    {
    }

    /// Candidates still extend the clique, excluded would but were already
    /// covered; both sorted. Pivot on the node covering most candidates.
    void expand(std::vector<long> candidates, std::vector<long> excluded)
    {
        if (candidates.empty())
        {
            if (excluded.empty() && current.size() >= 2)
            {
                found.push_back(current);
                std::sort(found.back().begin(), found.back().end());
                if (static_cast<long>(found.size()) > cap)
                    throw CapExceeded("maximal clique count exceeds cap "
                                      + std::to_string(cap));
            }
            return;
        }

        long pivot = -1;
        long covered = -1;
        for (const std::vector<long>* pool : {&candidates, &excluded})
            for (long u : *pool)
            {
                const long hits = static_cast<long>(
                    sorted_intersection(candidates, cg.neighbors[u]).size());
                if (hits > covered)
                {
                    covered = hits;
                    pivot = u;
                }
            }

        std::vector<long> outside;
        std::set_difference(candidates.begin(), candidates.end(),
                            cg.neighbors[pivot].begin(), cg.neighbors[pivot].end(),
                            std::back_inserter(outside));

        for (long v : outside)
        {
            current.push_back(v);
            expand(sorted_intersection(candidates, cg.neighbors[v]),
                   sorted_intersection(excluded, cg.neighbors[v]));
            current.pop_back();
            candidates.erase(
                std::lower_bound(candidates.begin(), candidates.end(), v));
            excluded.insert(
                std::lower_bound(excluded.begin(), excluded.end(), v), v);
        }
    }
};

}  // namespace detail

/// Every maximal clique with >= 2 members, each sorted, in deterministic
/// enumeration order. Isolated nodes would give singleton cliques; variable
/// bounds already cover those, so they are dropped. Throws CapExceeded as
/// soon as more than cap cliques have been produced.
inline std::vector<Clique> maximal_cliques(const ConflictGraphView& cg, long cap)
{
    detail::CliqueSearch search(cg, cap);
    std::vector<long> candidates;
    for (long u = 0; u < cg.node_count; ++u)
        if (cg.degree(u) > 0)
            candidates.push_back(u);
    search.expand(std::move(candidates), {});
    return std::move(search.found);
}

/// Rows that make any solution conflict-free: clique inequalities when the
/// enumeration fits under the cap, else one edge inequality per pair.
/// cap <= 0 selects the default max(|C|, 10000).
inline std::vector<Cut> initial_stable_constraints(const Instance& inst, long cap)
{
    std::vector<Cut> cuts;
    if (inst.conflicts.empty())
        return cuts;
    if (cap <= 0)
        cap = std::max<long>(inst.conflict_count(), 10000);

    try
    {
        const ConflictGraphView cg(inst);
        for (Clique& clique : maximal_cliques(cg, cap))
        {
            Cut cut;
            cut.kind = CutKind::Clique;
            cut.support = std::move(clique);
            cut.rhs = 1.0;
            cuts.push_back(std::move(cut));
        }
    }
    catch (const CapExceeded&)
    {
        cuts.clear();
        for (const auto& [a, b] : inst.conflicts)
        {
            Cut cut;
            cut.kind = CutKind::EdgePair;
            cut.support = {a, b};
            cut.rhs = 1.0;
            cuts.push_back(std::move(cut));
        }
    }
    return cuts;
}

}  // namespace mstcc
