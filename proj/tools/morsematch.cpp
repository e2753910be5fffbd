/**
 * Command-line front end: build matching complexes, compute homology,
 * search for optimal gradient vector fields, list gradient paths and
 * export Hasse diagrams.
 *
 * Exit codes: 0 success (for optimize: verdict optimal), 1 usage, I/O or
 * parse errors, 2 optimize budget exhausted.
 */

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <string>

#include "morsematch/cancellation.hpp"
#include "morsematch/complex.hpp"
#include "morsematch/homology.hpp"
#include "morsematch/optimize.hpp"

namespace mm = morsematch;

namespace {

int cmd_build(int n, const std::string& out_path)
{
    mm::SimplicialComplex cplx = mm::build_matching_complex(n);
    if (!out_path.empty())
        mm::write_complex_file(out_path, cplx);
    std::cout << "f = " << mm::format_counts(cplx.f_vector())
              << ", chi = " << mm::euler_characteristic(cplx) << "\n";
    return 0;
}

int cmd_homology(const std::string& complex_path)
{
    mm::SimplicialComplex cplx = mm::read_complex_file(complex_path);
    mm::HomologySummary summary = mm::homology_of(mm::simplicial_chain_complex(cplx));
    std::cout << mm::homology_report(summary);
    return 0;
}

int cmd_optimize(const std::string& complex_path, const mm::SearchConfig& config,
                 const std::string& cert_path)
{
    mm::SimplicialComplex cplx = mm::read_complex_file(complex_path);
    mm::OptimalityCertificate cert = mm::optimize(cplx, config);
    if (!cert_path.empty())
        mm::write_certificate_file(cert_path, cert);
    std::cout << "critical_vector = " << mm::format_counts(cert.critical_vector) << "\n";
    std::cout << "lower_bounds = " << mm::format_counts(cert.lower_bounds) << "\n";
    if (cert.verdict != mm::Verdict::optimal) {
        std::cout << "verdict = budget-exhausted\n";
        return 2;
    }
    std::cout << "verdict = optimal\n";
    return 0;
}

int cmd_paths(const std::string& complex_path, const std::string& gvf_path,
              const std::string& source_text)
{
    mm::SimplicialComplex cplx = mm::read_complex_file(complex_path);
    mm::GradientVectorField field = mm::read_gvf_file(gvf_path, cplx);
    if (!mm::is_acyclic(field))
        throw std::runtime_error("gradient field in " + gvf_path + " is not acyclic");
    mm::Matching source = mm::parse_matching(source_text);

    auto paths = mm::enumerate_paths(field, source);
    for (std::size_t i = 0; i < paths.size(); ++i) {
        std::cout << "path " << (i + 1) << ":";
        for (const mm::Matching& cell : paths[i].cells)
            std::cout << " " << mm::to_string(cell);
        std::cout << "\n";
    }
    std::cout << "endpoints:\n";
    for (const auto& [endpoint, count] : mm::path_endpoints(field, source))
        std::cout << mm::to_string(endpoint) << ": " << count << "\n";
    return 0;
}

int cmd_export_dot(const std::string& complex_path, const std::string& gvf_path,
                   const std::string& out_path)
{
    mm::SimplicialComplex cplx = mm::read_complex_file(complex_path);
    mm::GradientVectorField field = mm::read_gvf_file(gvf_path, cplx);

    std::ofstream out(out_path);
    if (!out)
        throw std::runtime_error("cannot open " + out_path + " for writing");
    out << "digraph gradient {\n";
    for (int d = 0; d <= cplx.dimension(); ++d) {
        for (int i = 0; i < cplx.cell_count(d); ++i) {
            mm::CellRef ref{d, i};
            const std::string name = std::to_string(d) + ":" + to_string(cplx.cell(ref));
            out << "  \"" << name << "\" [label=\"" << to_string(cplx.cell(ref)) << "\"";
            if (field.is_critical(ref))
                out << ", peripheries=2";
            out << "];\n";
        }
    }
    for (int d = 1; d <= cplx.dimension(); ++d) {
        for (int i = 0; i < cplx.cell_count(d); ++i) {
            mm::CellRef sigma{d, i};
            const std::string sigma_name =
                std::to_string(d) + ":" + to_string(cplx.cell(sigma));
            for (int j : cplx.facet_indices(sigma)) {
                mm::CellRef tau{d - 1, j};
                const std::string tau_name =
                    std::to_string(d - 1) + ":" + to_string(cplx.cell(tau));
                if (field.up_partner(tau) == i)
                    out << "  \"" << tau_name << "\" -> \"" << sigma_name
                        << "\" [style=bold];\n";
                else
                    out << "  \"" << sigma_name << "\" -> \"" << tau_name << "\";\n";
            }
        }
    }
    out << "}\n";
    if (!out.flush())
        throw std::runtime_error("failed writing " + out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"discrete Morse theory on matching complexes of complete graphs"};
    app.require_subcommand(1);

    int n = 0;
    std::string out_path, complex_path, gvf_path, source_text, cert_path;
    std::string strategy_text = "random", simultaneous_text = "on";
    mm::SearchConfig config;

    CLI::App* build = app.add_subcommand("build", "build the matching complex M_n");
    build->add_option("-n", n, "order of the complete graph")->required();
    build->add_option("--out", out_path, "complex file to write");

    CLI::App* homology = app.add_subcommand("homology", "integer homology of a complex file");
    homology->add_option("complex", complex_path, "complex file")->required();

    CLI::App* optimize =
        app.add_subcommand("optimize", "search for an optimal gradient vector field");
    optimize->add_option("complex", complex_path, "complex file")->required();
    optimize->add_option("--strategy", strategy_text, "initial-field strategy: lex|random");
    optimize->add_option("--seed", config.seed, "random seed");
    optimize->add_option("--max-restarts", config.max_restarts, "restart budget");
    optimize->add_option("--max-cancellations", config.max_cancellations_per_restart,
                         "cancellation budget per restart");
    optimize->add_option("--simultaneous", simultaneous_text,
                         "simultaneous cancellation: on|off");
    optimize->add_option("--out", cert_path, "certificate file to write");

    CLI::App* paths = app.add_subcommand("paths", "gradient paths from a critical cell");
    paths->add_option("complex", complex_path, "complex file")->required();
    paths->add_option("gvf", gvf_path, "gradient vector field file")->required();
    paths->add_option("source", source_text, "critical source cell, e.g. 1-2,3-4")->required();

    CLI::App* export_dot =
        app.add_subcommand("export-dot", "modified Hasse diagram as a DOT file");
    export_dot->add_option("complex", complex_path, "complex file")->required();
    export_dot->add_option("gvf", gvf_path, "gradient vector field file")->required();
    export_dot->add_option("--out", out_path, "DOT file to write")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed())
            return cmd_build(n, out_path);
        if (homology->parsed())
            return cmd_homology(complex_path);
        if (optimize->parsed()) {
            config.strategy = mm::parse_strategy(strategy_text);
            if (simultaneous_text != "on" && simultaneous_text != "off")
                throw std::invalid_argument("--simultaneous expects on or off");
            config.simultaneous_enabled = simultaneous_text == "on";
            return cmd_optimize(complex_path, config, cert_path);
        }
        if (paths->parsed())
            return cmd_paths(complex_path, gvf_path, source_text);
        if (export_dot->parsed())
            return cmd_export_dot(complex_path, gvf_path, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
