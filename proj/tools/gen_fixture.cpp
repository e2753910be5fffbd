/**
 * Generates data/f_star_local.gvf: a gradient vector field on M_7 whose
 * gradient-path structure around three marked critical 2-cells matches
 * the shipped fixture expectations exactly:
 *
 *   eta_1 = 2-5,3-6,4-7  ->  paths end at sigma_4 and sigma_1 only
 *   eta_2 = 1-5,2-4,6-7  ->  paths end at sigma_2 and sigma_3 only
 *   eta_3 = 1-5,2-6,4-7  ->  paths end at sigma_1, sigma_2, sigma_3,
 *                            one each, and never at sigma_4
 *
 * with sigma_1..sigma_4 = 1-2,4-5 / 1-2,4-6 / 1-3,4-5 / 1-3,4-6.
 *
 * The base pairs encode the two known paths under eta_1 and the two
 * under eta_2.  Completing them is constrained more than it looks:
 *
 *  - Every 1-cell reachable from a marked 2-cell must be paired, either
 *    down to a 0-cell or up into a 2-cell whose whole subtree yields no
 *    further endpoints.
 *  - The down-paired cells, read as edges on 0-cells, must form a
 *    forest: around a cycle every orientation of its edges closes a
 *    V-path loop in the 0/1 layer.
 *  - The side branches forced by the base pairs form two cycles in that
 *    sense, so some of them must instead be paired upward into "quiet"
 *    chains that bottom out on down-paired cells.
 *
 * The completion below threads those chains through the fresh pairs 2-3
 * and 5-6 (chain_pairs), hangs the three endpoint paths for eta_3 on
 * top (spine_pairs), and pairs the remaining dead cells down a tree
 * (dead_cells, oriented away from per-component roots).  Everything is
 * re-verified through the library before the file is written, so a
 * regenerated file is either byte-identical or the tool fails loudly.
 */

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "morsematch/cancellation.hpp"
#include "morsematch/complex.hpp"
#include "morsematch/gradient.hpp"

namespace mm = morsematch;

namespace {

struct Target {
    mm::Matching eta;
    std::map<mm::Matching, int> endpoints;
};

// The two known paths under eta_1 and the two under eta_2.
const std::pair<const char*, const char*> base_pairs[] = {
    {"2-5,3-6", "1-7,2-5,3-6"}, {"1-7,2-5", "1-7,2-5,4-6"},
    {"2-5,4-6", "1-3,2-5,4-6"}, {"1-7,3-6", "1-7,3-6,4-5"},
    {"3-6,4-5", "1-2,3-6,4-5"}, {"1-5,2-4", "1-5,2-4,3-7"},
    {"1-5,3-7", "1-5,3-7,4-6"}, {"3-7,4-6", "1-2,3-7,4-6"},
    {"2-4,6-7", "1-3,2-4,6-7"}, {"1-3,6-7", "1-3,4-5,6-7"},
};

// Quiet chains that absorb the forced side branches of the base paths;
// each 2-cell's remaining facets are down-paired cells or earlier links.
const std::pair<const char*, const char*> chain_pairs[] = {
    {"1-7,4-6", "1-7,2-3,4-6"}, {"1-5,4-6", "1-5,2-3,4-6"},
    {"1-5,2-3", "1-5,2-3,6-7"}, {"2-3,6-7", "2-3,4-5,6-7"},
    {"2-3,4-5", "1-7,2-3,4-5"}, {"2-5,4-7", "1-3,2-5,4-7"},
    {"1-3,4-7", "1-3,4-7,5-6"}, {"4-7,5-6", "1-2,4-7,5-6"},
    {"1-2,4-7", "1-2,3-6,4-7"}, {"1-2,5-6", "1-2,3-7,5-6"},
    {"3-7,5-6", "2-4,3-7,5-6"}, {"2-4,5-6", "1-3,2-4,5-6"},
};

// The three endpoint paths under eta_3.
const std::pair<const char*, const char*> spine_pairs[] = {
    {"1-5,2-6", "1-5,2-6,3-7"}, {"2-6,3-7", "2-6,3-7,4-5"},
    {"3-7,4-5", "1-2,3-7,4-5"}, {"2-6,4-7", "1-3,2-6,4-7"},
    {"1-3,2-6", "1-3,2-6,4-5"},
};

// Side branches that are paired down to 0-cells.  As edges on 0-cells
// they must stay a forest; see above.
const char* dead_cells[] = {
    "1-3,2-5", "1-3,2-4", "2-4,3-7", "1-2,3-7", "1-2,3-6", "3-6,4-7", "1-3,5-6",
    "1-5,6-7", "4-5,6-7", "1-7,4-5", "1-7,2-3", "2-3,4-6", "2-6,4-5", "1-5,4-7",
};

/** Orient the dead-cell forest away from each component's least vertex. */
std::vector<std::pair<mm::Matching, mm::Matching>> orient_dead_cells(
    const mm::SimplicialComplex& cplx)
{
    const int n0 = cplx.cell_count(0);
    std::vector<std::vector<std::pair<int, int>>> incident(n0);  // (other end, 1-cell)
    for (const char* text : dead_cells) {
        int t = cplx.require(mm::parse_matching(text)).index;
        const auto& ends = cplx.facet_indices(mm::CellRef{1, t});
        incident[ends[0]].push_back({ends[1], t});
        incident[ends[1]].push_back({ends[0], t});
    }
    std::vector<std::pair<mm::Matching, mm::Matching>> pairs;
    std::vector<char> visited(n0, 0);
    for (int root = 0; root < n0; ++root) {
        if (visited[root] || incident[root].empty())
            continue;
        visited[root] = 1;
        std::vector<int> stack{root};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (const auto& [w, t] : incident[v]) {
                if (visited[w])
                    continue;
                visited[w] = 1;  // the child endpoint takes the edge
                pairs.emplace_back(cplx.cells(0)[w], cplx.cells(1)[t]);
                stack.push_back(w);
            }
        }
    }
    return pairs;
}

}  // namespace

int main(int argc, char** argv)
{
    const std::string out_path = argc > 1 ? argv[1] : "data/f_star_local.gvf";

    mm::SimplicialComplex m7 = mm::build_matching_complex(7);

    const mm::Matching eta1 = mm::parse_matching("2-5,3-6,4-7");
    const mm::Matching eta2 = mm::parse_matching("1-5,2-4,6-7");
    const mm::Matching eta3 = mm::parse_matching("1-5,2-6,4-7");
    const mm::Matching sigma1 = mm::parse_matching("1-2,4-5");
    const mm::Matching sigma2 = mm::parse_matching("1-2,4-6");
    const mm::Matching sigma3 = mm::parse_matching("1-3,4-5");
    const mm::Matching sigma4 = mm::parse_matching("1-3,4-6");

    const std::vector<Target> targets = {
        {eta1, {{sigma4, 1}, {sigma1, 1}}},
        {eta2, {{sigma2, 1}, {sigma3, 1}}},
        {eta3, {{sigma1, 1}, {sigma2, 1}, {sigma3, 1}}},
    };

    mm::GradientVectorField field = mm::empty_field(m7);
    for (const auto& [tau, sigma] : base_pairs)
        field = mm::add_pair(field, mm::parse_matching(tau), mm::parse_matching(sigma));
    for (const auto& [tau, sigma] : chain_pairs)
        field = mm::add_pair(field, mm::parse_matching(tau), mm::parse_matching(sigma));
    for (const auto& [tau, sigma] : spine_pairs)
        field = mm::add_pair(field, mm::parse_matching(tau), mm::parse_matching(sigma));
    for (const auto& [vertex, cell] : orient_dead_cells(m7))
        field = mm::add_pair(field, vertex, cell);

    // Re-check everything with the library proper before writing.
    if (!mm::is_acyclic(field)) {
        std::cerr << "completion is not acyclic\n";
        return 1;
    }
    for (const Target& target : targets) {
        if (!field.is_critical(m7.require(target.eta))) {
            std::cerr << mm::to_string(target.eta) << " lost criticality\n";
            return 1;
        }
        auto hist = mm::path_endpoints(field, target.eta);
        if (hist != target.endpoints) {
            std::cerr << "endpoint histogram mismatch under " << mm::to_string(target.eta)
                      << ":";
            for (const auto& [cell, count] : hist)
                std::cerr << " " << mm::to_string(cell) << "x" << count;
            std::cerr << "\n";
            return 1;
        }
    }
    auto check = mm::check_simultaneous(field, {eta1, eta2, eta3}, {sigma4, sigma3, sigma1});
    if (!check.accepted()) {
        std::cerr << "simultaneous cancellation check failed: " << check.detail << "\n";
        return 1;
    }

    mm::write_gvf_file(out_path, field);
    std::cout << "wrote " << out_path << " with " << field.total_pairs() << " pairs\n";
    return 0;
}
