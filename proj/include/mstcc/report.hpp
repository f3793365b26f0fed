#pragma once

/// Pipeline composition and reporting: runs preprocessing, hands the reduced
/// instance to the search with the offset and primal candidate mapped over,
/// and renders JSON, human-readable, and ablation CSV views of the outcome.

#include <cmath>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "bnc_driver.hpp"
#include "instance.hpp"
#include "preprocess.hpp"

namespace mstcc {

/// Outcome of preprocess + solve with every value in original-instance terms.
struct PipelineResult
{
    PreprocessOutcome pre;
    std::optional<SolveResult> search;   /// absent when preprocessing is terminal
    SolveStatus status = SolveStatus::Optimal;
    std::optional<double> primal;
    double dual = 0.0;
    std::optional<std::vector<long>> tree;   /// original edge ids, sorted
    std::optional<double> root_lp_bound;
    double wall_seconds = 0.0;
};

inline const char* status_name(SolveStatus status)
{
    switch (status)
    {
    case SolveStatus::Optimal:
        return "optimal";
    case SolveStatus::FeasibleWithGap:
        return "feasible_with_gap";
    case SolveStatus::Infeasible:
        return "infeasible";
    default:
        return "time_limit";
    }
}

inline const char* status_name(PreprocessStatus status)
{
    switch (status)
    {
    case PreprocessStatus::Reduced:
        return "reduced";
    case PreprocessStatus::Infeasible:
        return "infeasible";
    default:
        return "solved";
    }
}

/// Preprocesses inst, then searches the reduced instance unless preprocessing
/// already settled it. The reduction offset and the cheapest primal candidate
/// are threaded into the search, and the incumbent is lifted back to original
/// edge ids by appending the contracted edges.
inline PipelineResult run_pipeline(const Instance& inst, SolverConfig cfg)
{
    const double inf = std::numeric_limits<double>::infinity();
    PipelineResult out;
    out.pre = preprocess(inst);
    const PreprocessOutcome& pre = out.pre;

    if (pre.status == PreprocessStatus::Infeasible)
    {
        out.status = SolveStatus::Infeasible;
        out.dual = inf;
        out.wall_seconds = pre.elapsed;
        return out;
    }
    if (pre.status == PreprocessStatus::SolvedOptimal)
    {
        out.status = SolveStatus::Optimal;
        out.primal = static_cast<double>(pre.offset);
        out.dual = *out.primal;
        out.tree = pre.primal_solution;
        out.wall_seconds = pre.elapsed;
        return out;
    }

    // 1. MAP THE PRIMAL CANDIDATE ONTO REDUCED EDGE IDS
    cfg.objective_offset = pre.offset;
    if (pre.primal_solution)
    {
        std::vector<long> back(inst.edge_count(), -1);
        for (long j = 0; j < static_cast<long>(pre.edge_map.size()); ++j)
            back[pre.edge_map[j]] = j;
        std::vector<long> warm;
        for (long e : *pre.primal_solution)
            if (back[e] >= 0)
                warm.push_back(back[e]);
        cfg.initial_tree = std::move(warm);
    }

    // 2. SEARCH THE REDUCED INSTANCE
    out.search = solve(pre.reduced, cfg);
    const SolveResult& res = *out.search;
    out.status = res.status;
    out.primal = res.primal;
    out.dual = res.dual;
    out.root_lp_bound = res.root_lp_bound;
    out.wall_seconds = pre.elapsed + res.stats.wall_seconds;

    // 3. LIFT THE INCUMBENT BACK
    if (res.incumbent)
    {
        std::vector<long> tree = pre.contracted_edges;
        for (long j : *res.incumbent)
            tree.push_back(pre.edge_map[j]);
        std::sort(tree.begin(), tree.end());
        out.tree = std::move(tree);
    }
    return out;
}

namespace detail {

/// JSON value for a bound: null when absent or not finite.
inline nlohmann::json bound_json(const std::optional<double>& value)
{
    if (!value || !std::isfinite(*value))
        return nullptr;
    return *value;
}

}  // namespace detail

/// Schema-stable report; timing fields are the only nondeterministic entries.
inline nlohmann::json report_json(const Instance& inst,
                                  const PipelineResult& out,
                                  const SolverConfig& cfg)
{
    const PreprocessOutcome& pre = out.pre;
    nlohmann::json doc;
    doc["instance"] = {
        {"conflicts", inst.conflict_count()},
        {"edges", inst.edge_count()},
        {"name", inst.name},
        {"vertices", inst.vertex_count},
    };
    doc["config"] = {
        {"abs_gap", cfg.abs_gap},
        {"clique_cap", cfg.clique_cap},
        {"cut_tol", cfg.cut_tol},
        {"enable_cliques", cfg.enable_cliques},
        {"enable_oci", cfg.enable_oci},
        {"int_tol", cfg.int_tol},
        {"ortho_threshold", cfg.ortho_threshold},
        {"time_limit_s", cfg.time_limit_s},
    };
    doc["preprocessing"] = {
        {"conflicts_added", pre.added_conflicts.size()},
        {"edges_contracted", pre.contracted_edges.size()},
        {"edges_fixed", pre.contracted_edges.size() + pre.removed_edges.size()},
        {"offset", pre.offset},
        {"reduced_conflicts", pre.reduced.conflict_count()},
        {"reduced_edges", pre.reduced.edge_count()},
        {"reduced_vertices", pre.reduced.vertex_count},
        {"seconds", pre.elapsed},
        {"status", status_name(pre.status)},
    };
    SearchStats stats;
    if (out.search)
        stats = out.search->stats;
    doc["cuts"] = {
        {"clique", stats.cuts_clique},
        {"edge_pair", stats.cuts_edge_pair},
        {"odd_cycle", stats.cuts_odd_cycle},
        {"sec", stats.cuts_sec},
    };
    doc["search"] = {
        {"bound_violations", stats.bound_violations},
        {"branchings", stats.branchings},
        {"lp_solves", stats.lp_solves},
        {"nodes", stats.nodes},
        {"seconds", stats.wall_seconds},
    };
    nlohmann::json result;
    result["dual"] = detail::bound_json(out.dual);
    result["primal"] = detail::bound_json(out.primal);
    result["root_lp"] = detail::bound_json(out.root_lp_bound);
    result["status"] = status_name(out.status);
    if (out.tree)
    {
        nlohmann::json edges = nlohmann::json::array();
        for (long e : *out.tree)
            edges.push_back(e + 1);   // 1-based, matching the file format
        result["tree"] = std::move(edges);
    }
    else
        result["tree"] = nullptr;
    doc["result"] = std::move(result);
    doc["wall_seconds"] = out.wall_seconds;
    return doc;
}

/// Short plain-text account of one pipeline run.
inline std::string report_human(const Instance& inst, const PipelineResult& out)
{
    const PreprocessOutcome& pre = out.pre;
    std::ostringstream text;
    text << std::fixed << std::setprecision(3);
    text << "instance " << inst.name << ": " << inst.vertex_count
         << " vertices, " << inst.edge_count() << " edges, "
         << inst.conflict_count() << " conflicts\n";
    text << "preprocessing: " << status_name(pre.status) << ", "
         << pre.contracted_edges.size() + pre.removed_edges.size()
         << " edges fixed (" << pre.contracted_edges.size() << " contracted), "
         << pre.added_conflicts.size() << " conflicts added, offset "
         << pre.offset << ", " << pre.elapsed << " s\n";
    text << "status: " << status_name(out.status) << "\n";
    text << std::setprecision(6);
    if (out.root_lp_bound)
        text << "root LP bound: " << *out.root_lp_bound << "\n";
    if (out.primal)
        text << "primal: " << *out.primal << "\n";
    if (std::isfinite(out.dual))
        text << "dual: " << out.dual << "\n";
    if (out.search)
    {
        const SearchStats& stats = out.search->stats;
        text << "cuts: " << stats.cuts_sec << " cycle-elimination, "
             << stats.cuts_odd_cycle << " odd-cycle, " << stats.cuts_clique
             << " clique, " << stats.cuts_edge_pair << " edge-pair\n";
        text << "search: " << stats.nodes << " nodes, " << stats.branchings
             << " branchings, " << stats.lp_solves << " LP solves\n";
    }
    text << std::setprecision(3);
    text << "wall time: " << out.wall_seconds << " s\n";
    return text.str();
}

/// One ablation configuration and its bounds.
struct AblationRow
{
    std::string config;
    SolveStatus status = SolveStatus::Optimal;
    std::optional<double> root_lp;
    std::optional<double> primal;
    double dual = 0.0;
};

struct AblationTable
{
    PreprocessOutcome pre;
    std::vector<AblationRow> rows;
};

/// Preprocesses once, then solves the reduced instance under the four cut
/// configurations; a terminal reduction yields four identical rows.
inline AblationTable run_ablation(const Instance& inst, SolverConfig base)
{
    static const std::pair<const char*, std::pair<bool, bool>> kVariants[] = {
        {"plain", {false, false}},
        {"oci", {true, false}},
        {"cliques", {false, true}},
        {"oci_cliques", {true, true}},
    };

    AblationTable table;
    table.pre = preprocess(inst);
    const PreprocessOutcome& pre = table.pre;

    for (const auto& [name, flags] : kVariants)
    {
        AblationRow row;
        row.config = name;
        if (pre.status == PreprocessStatus::Infeasible)
        {
            row.status = SolveStatus::Infeasible;
            row.dual = std::numeric_limits<double>::infinity();
        }
        else if (pre.status == PreprocessStatus::SolvedOptimal)
        {
            row.status = SolveStatus::Optimal;
            row.primal = static_cast<double>(pre.offset);
            row.root_lp = row.primal;
            row.dual = *row.primal;
        }
        else
        {
            SolverConfig cfg = base;
            cfg.enable_oci = flags.first;
            cfg.enable_cliques = flags.second;
            cfg.objective_offset = pre.offset;
            if (pre.primal_solution)
            {
                std::vector<long> back(inst.edge_count(), -1);
                for (long j = 0; j < static_cast<long>(pre.edge_map.size()); ++j)
                    back[pre.edge_map[j]] = j;
                std::vector<long> warm;
                for (long e : *pre.primal_solution)
                    if (back[e] >= 0)
                        warm.push_back(back[e]);
                cfg.initial_tree = std::move(warm);
            }
            const SolveResult res = solve(pre.reduced, cfg);
            row.status = res.status;
            row.root_lp = res.root_lp_bound;
            row.primal = res.primal;
            row.dual = res.dual;
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

/// CSV rendering with percent improvements over the plain configuration.
inline std::string ablation_csv(const AblationTable& table)
{
    const auto cell = [](const std::optional<double>& value)
    {
        if (!value || !std::isfinite(*value))
            return std::string();
        std::ostringstream s;
        s << std::setprecision(12) << *value;
        return s.str();
    };
    const auto pct = [](const std::optional<double>& value,
                        const std::optional<double>& plain)
    {
        if (!value || !plain || !std::isfinite(*value) || !std::isfinite(*plain)
            || std::abs(*plain) < 1e-12)
            return 0.0;
        return 100.0 * (*value - *plain) / std::abs(*plain);
    };

    const AblationRow& plain = table.rows.front();
    std::ostringstream csv;
    csv << "config,root_lp,primal,dual,root_improv_pct,dual_improv_pct\n";
    for (const AblationRow& row : table.rows)
    {
        csv << row.config << ',' << cell(row.root_lp) << ',' << cell(row.primal)
            << ',' << cell(row.dual) << ',' << std::setprecision(12)
            << pct(row.root_lp, plain.root_lp) << ','
            << pct(row.dual, plain.dual) << '\n';
    }
    return csv.str();
}

}  // namespace mstcc
