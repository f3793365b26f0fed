#pragma once

/// Command-line front end: solve, preprocess, generate, validate, ablate.
/// All reports are written under --out; summaries go to standard output.

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "generator.hpp"
#include "instance.hpp"
#include "instance_io.hpp"
#include "report.hpp"

namespace mstcc {
namespace detail {

/// Instance names come from files; keep only filesystem-friendly characters.
inline std::string safe_file_stem(const std::string& name)
{
    std::string stem;
    for (char c : name)
        stem.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '-'
                               || c == '_' || c == '.'
                           ? c
                           : '_');
    return stem.empty() ? std::string("instance") : stem;
}

inline std::filesystem::path prepare_out_path(const std::string& out_dir,
                                              const std::string& file_name)
{
    std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    return dir / file_name;
}

inline void write_text_file(const std::filesystem::path& path,
                            const std::string& text)
{
    std::ofstream stream(path);
    if (!stream)
        throw std::runtime_error("cannot write " + path.string());
    stream << text;
}

inline int exit_code(SolveStatus status)
{
    return status == SolveStatus::Optimal || status == SolveStatus::Infeasible
               ? 0
               : 2;
}

/// Structural defects abort a solve; disconnection is left to the pipeline,
/// which turns it into an infeasibility certificate.
inline bool report_fatal_issues(const std::vector<std::string>& issues)
{
    bool fatal = false;
    for (const std::string& issue : issues)
    {
        if (issue.rfind("Disconnected:", 0) == 0)
            continue;
        std::cerr << "error: " << issue << "\n";
        fatal = true;
    }
    return fatal;
}

inline int run_solve(const std::string& path, const std::string& out_dir,
                     const SolverConfig& cfg)
{
    const Instance inst = read_instance_file(path);
    if (report_fatal_issues(validate(inst)))
        return 1;

    const PipelineResult out = run_pipeline(inst, cfg);
    const auto report_path = prepare_out_path(
        out_dir, safe_file_stem(inst.name) + ".report.json");
    write_text_file(report_path, report_json(inst, out, cfg).dump(2) + "\n");

    std::cout << report_human(inst, out);
    std::cout << "report: " << report_path.string() << "\n";
    return exit_code(out.status);
}

inline int run_preprocess(const std::string& path, const std::string& out_dir)
{
    const Instance inst = read_instance_file(path);
    if (report_fatal_issues(validate(inst)))
        return 1;

    const PreprocessOutcome pre = preprocess(inst);
    const auto reduced_path = prepare_out_path(
        out_dir, safe_file_stem(inst.name) + ".reduced.inst");
    write_instance_file(pre.reduced, reduced_path.string());

    std::cout << "instance " << inst.name << ": " << inst.vertex_count
              << " vertices, " << inst.edge_count() << " edges, "
              << inst.conflict_count() << " conflicts\n";
    std::cout << "status: " << status_name(pre.status) << "\n";
    std::cout << "edges fixed: "
              << pre.contracted_edges.size() + pre.removed_edges.size() << " ("
              << pre.contracted_edges.size() << " contracted)\n";
    std::cout << "conflicts added: " << pre.added_conflicts.size() << "\n";
    std::cout << "offset: " << pre.offset << "\n";
    std::cout << "reduced: " << pre.reduced.vertex_count << " vertices, "
              << pre.reduced.edge_count() << " edges, "
              << pre.reduced.conflict_count() << " conflicts\n";
    std::cout << "reduced instance: " << reduced_path.string() << "\n";
    return 0;
}

inline int run_generate(const GeneratorSpec& spec, const std::string& out_dir)
{
    const Instance inst = generate_instance(spec);
    const auto path =
        prepare_out_path(out_dir, safe_file_stem(inst.name) + ".inst");
    write_instance_file(inst, path.string());
    std::cout << path.string() << "\n";
    return 0;
}

inline int run_validate(const std::string& path)
{
    const Instance inst = read_instance_file(path);
    const std::vector<std::string> issues = validate(inst);
    for (const std::string& issue : issues)
        std::cout << issue << "\n";
    if (issues.empty())
    {
        std::cout << "ok: " << inst.name << " (" << inst.vertex_count
                  << " vertices, " << inst.edge_count() << " edges, "
                  << inst.conflict_count() << " conflicts)\n";
        return 0;
    }
    return 1;
}

inline int run_ablate(const std::string& path, const std::string& out_dir,
                      const SolverConfig& cfg)
{
    const Instance inst = read_instance_file(path);
    if (report_fatal_issues(validate(inst)))
        return 1;

    const AblationTable table = run_ablation(inst, cfg);
    const std::string csv = ablation_csv(table);
    const auto csv_path = prepare_out_path(
        out_dir, safe_file_stem(inst.name) + ".ablation.csv");
    write_text_file(csv_path, csv);

    std::cout << csv;
    int worst = 0;
    for (const AblationRow& row : table.rows)
        worst = std::max(worst, exit_code(row.status));
    return worst;
}

}  // namespace detail

/// Parses the arguments (program name excluded) and runs one subcommand.
/// Returns the process exit status: 0 for optimality or infeasibility
/// certificates, 2 when a time limit was hit, 1 for input errors.
inline int run(const std::vector<std::string>& args)
{
    CLI::App app{"exact solver for minimum spanning trees under conflict "
                 "constraints"};
    app.require_subcommand(1);

    std::string file;
    std::string out_dir = ".";
    SolverConfig cfg;
    bool no_oci = false;
    bool no_cliques = false;

    GeneratorSpec spec;
    std::string family = "type1";

    CLI::App* solve_cmd =
        app.add_subcommand("solve", "preprocess and solve an instance file");
    solve_cmd->add_option("file", file, "instance file")->required();
    solve_cmd->add_option("--time-limit", cfg.time_limit_s,
                          "time limit in seconds");
    solve_cmd->add_flag("--no-oci", no_oci, "disable odd-cycle separation");
    solve_cmd->add_flag("--no-cliques", no_cliques,
                        "use pairwise conflict rows instead of cliques");
    solve_cmd->add_option("--clique-cap", cfg.clique_cap,
                          "maximal-clique budget, 0 for automatic");
    solve_cmd->add_option("--out", out_dir, "report directory");

    CLI::App* pre_cmd = app.add_subcommand(
        "preprocess", "reduce an instance and write the result");
    pre_cmd->add_option("file", file, "instance file")->required();
    pre_cmd->add_option("--out", out_dir, "output directory");

    CLI::App* gen_cmd =
        app.add_subcommand("generate", "write a random instance");
    gen_cmd->add_option("--n", spec.n, "vertex count")->required();
    gen_cmd->add_option("--m", spec.m, "edge count")->required();
    gen_cmd->add_option("--p", spec.p, "conflict count")->required();
    gen_cmd->add_option("--family", family, "type1 or type2");
    gen_cmd->add_option("--seed", spec.seed, "random seed");
    gen_cmd->add_option("--cost-lo", spec.cost_lo, "minimum edge cost");
    gen_cmd->add_option("--cost-hi", spec.cost_hi, "maximum edge cost");
    gen_cmd->add_option("--out", out_dir, "output directory");

    CLI::App* val_cmd =
        app.add_subcommand("validate", "check an instance file");
    val_cmd->add_option("file", file, "instance file")->required();

    CLI::App* abl_cmd = app.add_subcommand(
        "ablate", "solve under the four cut configurations");
    abl_cmd->add_option("file", file, "instance file")->required();
    abl_cmd->add_option("--time-limit", cfg.time_limit_s,
                        "time limit in seconds");
    abl_cmd->add_option("--clique-cap", cfg.clique_cap,
                        "maximal-clique budget, 0 for automatic");
    abl_cmd->add_option("--out", out_dir, "output directory");

    try
    {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    cfg.enable_oci = !no_oci;
    cfg.enable_cliques = !no_cliques;

    try
    {
        if (solve_cmd->parsed())
            return detail::run_solve(file, out_dir, cfg);
        if (pre_cmd->parsed())
            return detail::run_preprocess(file, out_dir);
        if (gen_cmd->parsed())
        {
            if (family == "type1")
                spec.family = Family::Type1;
            else if (family == "type2")
                spec.family = Family::Type2;
            else
                throw std::invalid_argument("family must be type1 or type2");
            return detail::run_generate(spec, out_dir);
        }
        if (val_cmd->parsed())
            return detail::run_validate(file);
        if (abl_cmd->parsed())
            return detail::run_ablate(file, out_dir, cfg);
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace mstcc
