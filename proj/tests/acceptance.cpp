/**
 * Acceptance suite: one pass/fail line per criterion, nonzero exit if
 * any fails.
 *
 * Usage: acceptance <cli-binary> <fixture-gvf> <scratch-dir>
 */

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "morsematch/cancellation.hpp"
#include "morsematch/optimize.hpp"
#include "support/oracles.hpp"

using namespace morsematch;
namespace mt = morsematch::testing;

namespace {

std::string cli_path, fixture_path, scratch_dir;
int failures = 0;

void report(int number, const std::string& description, bool pass)
{
    std::cout << "criterion " << number << (pass ? " PASS" : " FAIL") << ": " << description
              << "\n";
    if (!pass)
        ++failures;
}

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

CommandResult run_cli(const std::string& args)
{
    const std::string out_file = scratch_dir + "/cli_output.txt";
    const std::string command = cli_path + " " + args + " > " + out_file + " 2>&1";
    int status = std::system(command.c_str());
    CommandResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_file);
    std::stringstream buffer;
    buffer << in.rdbuf();
    result.output = buffer.str();
    return result;
}

bool contains(const std::string& haystack, const std::string& needle)
{
    return haystack.find(needle) != std::string::npos;
}

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

GradientVectorField field_from_certificate(const SimplicialComplex& cplx,
                                           const OptimalityCertificate& cert)
{
    GradientVectorField field = empty_field(cplx);
    for (const auto& [tau, sigma] : cert.pairs)
        field = add_pair(field, tau, sigma);
    return field;
}

bool same_homology(const HomologySummary& a, const HomologySummary& b)
{
    return a.betti == b.betti && a.torsion == b.torsion;
}

void criterion_1_f_vector()
{
    auto start = std::chrono::steady_clock::now();
    CommandResult result = run_cli("build -n 7 --out " + scratch_dir + "/m7.cplx");
    double elapsed = seconds_since(start);

    bool pass = result.exit_code == 0 && contains(result.output, "f = (21, 105, 105)") &&
                contains(result.output, "chi = 21") && elapsed < 1.0;

    // The builder must agree with the independent brute-force enumerator.
    pass = pass && mt::oracle_f_vector(7) == std::vector<int>{21, 105, 105} &&
           build_matching_complex(7).f_vector() == mt::oracle_f_vector(7);
    report(1, "build -n 7 reports f = (21, 105, 105), chi = 21 in under 1 s", pass);
}

void criterion_2_homology()
{
    auto start = std::chrono::steady_clock::now();
    CommandResult result = run_cli("homology " + scratch_dir + "/m7.cplx");
    double elapsed = seconds_since(start);
    bool pass = result.exit_code == 0 && contains(result.output, "H_0 = Z\n") &&
                contains(result.output, "H_1 = Z/3\n") &&
                contains(result.output, "H_2 = Z^20\n") &&
                contains(result.output, "lower_bounds = (1, 1, 21)") && elapsed < 30.0;
    report(2, "M_7 homology is Z, Z/3, Z^20 with lower bounds (1, 1, 21) in under 30 s",
           pass);
}

void criterion_3_optimality()
{
    auto start = std::chrono::steady_clock::now();
    CommandResult result = run_cli("optimize " + scratch_dir + "/m7.cplx --seed 1 --out " +
                                   scratch_dir + "/m7.cert");
    double elapsed = seconds_since(start);

    bool pass = result.exit_code == 0 &&
                contains(result.output, "critical_vector = (1, 1, 21)") &&
                contains(result.output, "verdict = optimal") && elapsed < 300.0;
    if (pass) {
        SimplicialComplex m7 = build_matching_complex(7);
        OptimalityCertificate cert = read_certificate_file(scratch_dir + "/m7.cert");
        pass = cert.verdict == Verdict::optimal &&
               cert.critical_vector == CriticalVector{1, 1, 21} &&
               verify_certificate(m7, cert);
    }
    report(3, "optimize finds an optimal field with vector (1, 1, 21) on M_7 "
              "within the default budget and the certificate verifies",
           pass);
}

void criterion_4_topology_preservation()
{
    bool pass = true;
    for (int n = 4; n <= 7 && pass; ++n) {
        SimplicialComplex cplx = build_matching_complex(n);
        HomologySummary expected = homology_of(simplicial_chain_complex(cplx));
        SearchConfig config;
        config.seed = 40 + n;
        config.max_restarts = 16;
        OptimalityCertificate cert = optimize(cplx, config);
        GradientVectorField field = field_from_certificate(cplx, cert);
        pass = pass && same_homology(homology_of(morse_boundary(field)), expected);
    }
    for (int n = 4; n <= 5 && pass; ++n) {
        SimplicialComplex cplx = build_matching_complex(n);
        HomologySummary expected = homology_of(simplicial_chain_complex(cplx));
        for (std::uint64_t seed = 0; seed < 200 && pass; ++seed) {
            GradientVectorField field = mt::random_acyclic_field(cplx, seed);
            pass = pass && same_homology(homology_of(morse_boundary(field)), expected);
        }
    }
    report(4, "Morse homology equals simplicial homology for optimizer outputs on "
              "M_4..M_7 and 200 random fields each on M_4 and M_5",
           pass);
}

void criterion_5_bookkeeping()
{
    SimplicialComplex m5 = build_matching_complex(5);
    bool pass = true;
    for (std::uint64_t seed = 0; seed < 500 && pass; ++seed) {
        GradientVectorField field = mt::random_acyclic_field(m5, seed);
        CriticalVector before = critical_vector(field);
        for (const auto& [eta, sigma] : find_cancellable_pairs(field)) {
            GradientVectorField after = cancel_pair(field, eta, sigma);
            CriticalVector expected = before;
            --expected[eta.dimension()];
            --expected[sigma.dimension()];
            if (!is_acyclic(after) || critical_vector(after) != expected) {
                pass = false;
                break;
            }
            GradientPath used;
            for (const GradientPath& path : enumerate_paths(field, eta))
                if (path.endpoint() == sigma)
                    used = path;
            std::set<Matching> touched(used.cells.begin(), used.cells.end());
            touched.insert(eta);
            const SimplicialComplex& cplx = field.complex();
            for (int d = 0; d <= cplx.dimension() && pass; ++d)
                for (int i = 0; i < cplx.cell_count(d); ++i) {
                    if (touched.count(cplx.cells(d)[i]))
                        continue;
                    CellRef ref{d, i};
                    if (field.up_partner(ref) != after.up_partner(ref) ||
                        field.down_partner(ref) != after.down_partner(ref)) {
                        pass = false;
                        break;
                    }
                }
            if (!pass)
                break;
        }
    }
    report(5, "each cancellation on 500 random M_5 fields drops (c_p, c_p+1) by one, "
              "stays acyclic and leaves off-path cells untouched",
           pass);
}

void criterion_6_fixture()
{
    SimplicialComplex m7 = build_matching_complex(7);
    GradientVectorField field = read_gvf_file(fixture_path, m7);
    const Matching eta1 = parse_matching("2-5,3-6,4-7");
    const Matching eta2 = parse_matching("1-5,2-4,6-7");
    const Matching eta3 = parse_matching("1-5,2-6,4-7");
    const Matching sigma1 = parse_matching("1-2,4-5");
    const Matching sigma2 = parse_matching("1-2,4-6");
    const Matching sigma3 = parse_matching("1-3,4-5");
    const Matching sigma4 = parse_matching("1-3,4-6");

    bool pass = is_acyclic(field);
    pass = pass && enumerate_paths(field, eta1).size() == 2 &&
           path_endpoints(field, eta1) == std::map<Matching, int>{{sigma4, 1}, {sigma1, 1}};
    pass = pass && enumerate_paths(field, eta2).size() == 2 &&
           path_endpoints(field, eta2) == std::map<Matching, int>{{sigma2, 1}, {sigma3, 1}};
    pass = pass && path_endpoints(field, eta3).count(sigma4) == 0;

    auto check = check_simultaneous(field, {eta1, eta2, eta3}, {sigma4, sigma3, sigma1});
    pass = pass && check.accepted() && check.plan.entries.size() == 3 &&
           check.plan.entries[0].sigma == sigma4 && check.plan.entries[1].sigma == sigma3 &&
           check.plan.entries[2].sigma == sigma1;

    // The same data through the CLI surface.
    CommandResult cli = run_cli("paths " + scratch_dir + "/m7.cplx " + fixture_path +
                                " 2-5,3-6,4-7");
    pass = pass && cli.exit_code == 0 && contains(cli.output, "1-3,4-6: 1") &&
           contains(cli.output, "1-2,4-5: 1");
    report(6, "fixture paths: eta_1 -> {sigma_4, sigma_1}, eta_2 -> {sigma_2, sigma_3}, "
              "no eta_3 path to sigma_4, and the triple cancellation accepts uniquely",
           pass);
}

void criterion_7_small_instances()
{
    SearchConfig config;
    config.seed = 70;
    config.max_restarts = 16;

    HomologySummary h3 = homology_of(simplicial_chain_complex(build_matching_complex(3)));
    bool pass = h3.betti == std::vector<int>{3};
    OptimalityCertificate m3 = optimize(build_matching_complex(3), config);
    pass = pass && m3.verdict == Verdict::optimal && m3.critical_vector == CriticalVector{3};

    HomologySummary h4 = homology_of(simplicial_chain_complex(build_matching_complex(4)));
    pass = pass && h4.betti == std::vector<int>{3, 0};
    OptimalityCertificate m4 = optimize(build_matching_complex(4), config);
    pass = pass && m4.verdict == Verdict::optimal &&
           m4.critical_vector == CriticalVector{3, 0};

    SimplicialComplex m5 = build_matching_complex(5);
    pass = pass && m5.cell_count(0) == 10 && m5.cell_count(1) == 15;
    for (int v = 0; v < m5.cell_count(0); ++v)
        pass = pass && static_cast<int>(m5.cofacet_indices(CellRef{0, v}).size()) == 3;
    OptimalityCertificate c5 = optimize(m5, config);
    pass = pass && c5.verdict == Verdict::optimal &&
           c5.critical_vector == CriticalVector{1, 6};

    report(7, "small instances: M_3 (Z^3, vector (3)), M_4 (Z^3, vector (3, 0)), "
              "M_5 is the 3-regular Petersen graph with optimal vector (1, 6)",
           pass);
}

void criterion_8_determinism()
{
    const std::string flags = " --seed 99 --strategy random --max-restarts 32";
    CommandResult first =
        run_cli("optimize " + scratch_dir + "/m7.cplx" + flags + " --out " + scratch_dir +
                "/det_a.cert");
    CommandResult second =
        run_cli("optimize " + scratch_dir + "/m7.cplx" + flags + " --out " + scratch_dir +
                "/det_b.cert");
    auto slurp = [](const std::string& path) {
        std::ifstream in(path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    };
    std::string a = slurp(scratch_dir + "/det_a.cert");
    std::string b = slurp(scratch_dir + "/det_b.cert");
    bool pass = first.exit_code == second.exit_code && !a.empty() && a == b;

    // Thread count must not affect the bytes either.
    SimplicialComplex m7 = build_matching_complex(7);
    SearchConfig config;
    config.seed = 99;
    config.max_restarts = 32;
    std::string texts[2];
    int threads[2] = {1, 4};
    for (int i = 0; i < 2; ++i) {
        SearchConfig c = config;
        c.threads = threads[i];
        std::ostringstream out;
        write_certificate(out, optimize(m7, c));
        texts[i] = out.str();
    }
    pass = pass && texts[0] == texts[1] && texts[0] == a;
    report(8, "identical flags and seed produce byte-identical certificates across runs "
              "and thread counts",
           pass);
}

}  // namespace

int main(int argc, char** argv)
{
    if (argc != 4) {
        std::cerr << "usage: acceptance <cli-binary> <fixture-gvf> <scratch-dir>\n";
        return 2;
    }
    cli_path = argv[1];
    fixture_path = argv[2];
    scratch_dir = argv[3];
    std::filesystem::create_directories(scratch_dir);

    criterion_1_f_vector();
    criterion_2_homology();
    criterion_3_optimality();
    criterion_4_topology_preservation();
    criterion_5_bookkeeping();
    criterion_6_fixture();
    criterion_7_small_instances();
    criterion_8_determinism();

    if (failures > 0) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
