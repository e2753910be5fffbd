#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <array>
#include <set>

#include "morsematch/cancellation.hpp"
#include "support/oracles.hpp"

using namespace morsematch;
namespace mt = morsematch::testing;

namespace {

GradientVectorField with_pairs(const SimplicialComplex& cplx,
                               const std::vector<std::pair<const char*, const char*>>& pairs)
{
    GradientVectorField field = empty_field(cplx);
    for (const auto& [tau, sigma] : pairs)
        field = add_pair(field, parse_matching(tau), parse_matching(sigma));
    return field;
}

/**
 * Pairing status of every cell not in `excluded`, as (dim, index,
 * up-partner, down-partner) tuples.
 */
std::vector<std::array<int, 4>> off_path_status(const GradientVectorField& field,
                                                const std::set<Matching>& excluded)
{
    std::vector<std::array<int, 4>> status;
    const SimplicialComplex& cplx = field.complex();
    for (int d = 0; d <= cplx.dimension(); ++d)
        for (int i = 0; i < cplx.cell_count(d); ++i) {
            if (excluded.count(cplx.cells(d)[i]))
                continue;
            CellRef ref{d, i};
            status.push_back({d, i, field.up_partner(ref), field.down_partner(ref)});
        }
    return status;
}

std::set<Matching> path_cells(const GradientPath& path, const Matching& eta)
{
    std::set<Matching> cells(path.cells.begin(), path.cells.end());
    cells.insert(eta);
    return cells;
}

}  // namespace

TEST_CASE("cancelling a length-0 path pairs the cells directly")
{
    SimplicialComplex m4 = build_matching_complex(4);
    GradientVectorField field = empty_field(m4);
    GradientVectorField next =
        cancel_pair(field, parse_matching("1-2,3-4"), parse_matching("1-2"));
    CHECK(next.total_pairs() == 1);
    CHECK(next.pairs() ==
          std::vector<std::pair<Matching, Matching>>{
              {parse_matching("1-2"), parse_matching("1-2,3-4")}});
    CHECK(is_acyclic(next));
}

TEST_CASE("cancellation requires critical cells and a unique path")
{
    SimplicialComplex m4 = build_matching_complex(4);
    GradientVectorField field = empty_field(m4);
    CHECK_THROWS_AS(cancel_pair(field, parse_matching("1-2,3-4"), parse_matching("1-3")),
                    NoPathError);

    GradientVectorField paired =
        cancel_pair(field, parse_matching("1-2,3-4"), parse_matching("1-2"));
    CHECK_THROWS_AS(cancel_pair(paired, parse_matching("1-2,3-4"), parse_matching("3-4")),
                    std::invalid_argument);
}

TEST_CASE("two converging paths forbid cancellation and reversal breaks acyclicity")
{
    SimplicialComplex m5 = build_matching_complex(5);
    GradientVectorField field = with_pairs(m5, {
                                                   {"1-2", "1-2,4-5"},
                                                   {"3-4", "1-5,3-4"},
                                                   {"1-5", "1-5,2-3"},
                                                   {"2-3", "2-3,4-5"},
                                               });
    REQUIRE(is_acyclic(field));

    Matching eta = parse_matching("1-2,3-4");
    Matching sigma = parse_matching("4-5");
    auto hist = path_endpoints(field, eta);
    REQUIRE(hist[sigma] == 2);
    CHECK_THROWS_AS(cancel_pair(field, eta, sigma), NonUniquePathError);

    // Reversing one of the two paths anyway closes a V-path loop.
    auto paths = enumerate_paths(field, eta);
    for (const GradientPath& path : paths) {
        if (path.endpoint() != sigma)
            continue;
        GradientVectorField reversed = mt::force_reverse(field, eta, path);
        CHECK_FALSE(is_acyclic(reversed));
        CHECK_FALSE(mt::oracle_is_acyclic(reversed));
    }
}

TEST_CASE("cancellation bookkeeping on random fields")
{
    SimplicialComplex m5 = build_matching_complex(5);
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        GradientVectorField field = mt::random_acyclic_field(m5, seed);
        CriticalVector before = critical_vector(field);
        for (const auto& [eta, sigma] : find_cancellable_pairs(field)) {
            GradientVectorField after = cancel_pair(field, eta, sigma);
            REQUIRE(is_acyclic(after));

            CriticalVector expected = before;
            --expected[eta.dimension()];
            --expected[sigma.dimension()];
            REQUIRE(critical_vector(after) == expected);

            // Off-path cells keep their exact pairing status.
            GradientPath used;
            for (const GradientPath& path : enumerate_paths(field, eta))
                if (path.endpoint() == sigma)
                    used = path;
            std::set<Matching> touched = path_cells(used, eta);
            REQUIRE(off_path_status(field, touched) == off_path_status(after, touched));
        }
    }
}

TEST_CASE("reversing the reversed path restores the original field")
{
    SimplicialComplex m5 = build_matching_complex(5);
    GradientVectorField field = with_pairs(m5, {
                                                   {"3-4", "1-5,3-4"},
                                                   {"1-5", "1-5,2-3"},
                                                   {"2-3", "2-3,4-5"},
                                               });
    Matching eta = parse_matching("1-2,3-4");
    Matching sigma = parse_matching("4-5");
    auto paths = enumerate_paths(field, eta);
    GradientPath forward;
    for (const GradientPath& path : paths)
        if (path.endpoint() == sigma)
            forward = path;
    REQUIRE(forward.cells.size() == 7);

    GradientVectorField cancelled = cancel_pair(field, eta, sigma);
    REQUIRE(is_acyclic(cancelled));

    // Walk the same cell sequence with the roles swapped: what was paired
    // is now free and vice versa.
    GradientPath backward;
    backward.source = eta;
    backward.cells.assign(forward.cells.rbegin(), forward.cells.rend());
    std::vector<std::pair<Matching, Matching>> pairs = cancelled.pairs();
    {
        auto drop = [&pairs](const Matching& tau, const Matching& up) {
            auto it = std::find(pairs.begin(), pairs.end(), std::make_pair(tau, up));
            REQUIRE(it != pairs.end());
            pairs.erase(it);
        };
        drop(forward.cells.front(), eta);
        for (int i = 0; i < forward.length(); ++i)
            drop(forward.cells[2 * i + 2], forward.cells[2 * i + 1]);
        for (int i = 0; i < forward.length(); ++i)
            pairs.emplace_back(forward.cells[2 * i], forward.cells[2 * i + 1]);
    }
    GradientVectorField restored = empty_field(m5);
    for (const auto& [tau, up] : pairs)
        restored = add_pair(restored, tau, up);
    CHECK(restored.fingerprint() == field.fingerprint());
    CHECK(restored.pairs() == field.pairs());
}

TEST_CASE("find_cancellable_pairs lists unique-path incidences in order")
{
    SimplicialComplex m4 = build_matching_complex(4);
    auto pairs = find_cancellable_pairs(empty_field(m4));
    CHECK(pairs.size() == 6);  // three 1-cells, two facets each
    for (std::size_t i = 0; i + 1 < pairs.size(); ++i) {
        if (pairs[i].first == pairs[i + 1].first)
            CHECK(pairs[i].second < pairs[i + 1].second);
        else
            CHECK(pairs[i].first < pairs[i + 1].first);
    }

    GradientVectorField saturated = with_pairs(m4, {
                                                       {"1-2", "1-2,3-4"},
                                                       {"1-3", "1-3,2-4"},
                                                       {"1-4", "1-4,2-3"},
                                                   });
    CHECK(find_cancellable_pairs(saturated).empty());
}

TEST_CASE("soundness of reported pairs on random fields")
{
    SimplicialComplex m5 = build_matching_complex(5);
    bool cycle_created = false;
    for (std::uint64_t seed = 200; seed < 260; ++seed) {
        GradientVectorField field = mt::random_acyclic_field(m5, seed);
        for (const auto& [eta, sigma] : find_cancellable_pairs(field))
            REQUIRE(is_acyclic(cancel_pair(field, eta, sigma)));

        // Force-reverse multi-path pairs; at least one seed must close a loop.
        auto crit = critical_cells(field);
        for (int d = 1; d < static_cast<int>(crit.size()); ++d) {
            for (const Matching& eta : crit[d]) {
                auto hist = path_endpoints(field, eta);
                for (const auto& [sigma, count] : hist) {
                    if (count < 2)
                        continue;
                    for (const GradientPath& path : enumerate_paths(field, eta)) {
                        if (path.endpoint() != sigma)
                            continue;
                        GradientVectorField forced = mt::force_reverse(field, eta, path);
                        if (!is_acyclic(forced))
                            cycle_created = true;
                        break;
                    }
                }
            }
        }
    }
    CHECK(cycle_created);
}

TEST_CASE("simultaneous checks reject infeasible and ambiguous requests")
{
    SimplicialComplex m5 = build_matching_complex(5);
    GradientVectorField field = empty_field(m5);

    // Neither eta reaches 1-3, so no bijection exists.
    auto infeasible = check_simultaneous(
        field, {parse_matching("1-2,3-4"), parse_matching("1-2,4-5")},
        {parse_matching("1-2"), parse_matching("1-3")});
    CHECK(infeasible.status == SimultaneousStatus::no_bijection);

    // Both etas reach both sigmas: two bijections.
    GradientVectorField braided = with_pairs(m5, {
                                                     {"4-5", "1-3,4-5"},
                                                     {"3-5", "2-4,3-5"},
                                                     {"2-4", "1-3,2-4"},
                                                 });
    auto ambiguous = check_simultaneous(
        braided, {parse_matching("1-2,4-5"), parse_matching("1-2,3-5")},
        {parse_matching("1-2"), parse_matching("1-3")});
    CHECK(ambiguous.status == SimultaneousStatus::ambiguous);

    // Unique bijection but a doubled realizing path.
    GradientVectorField doubled = with_pairs(m5, {
                                                     {"1-2", "1-2,4-5"},
                                                     {"3-4", "1-5,3-4"},
                                                     {"1-5", "1-5,2-3"},
                                                     {"2-3", "2-3,4-5"},
                                                 });
    auto not_unique = check_simultaneous(doubled, {parse_matching("1-2,3-4")},
                                         {parse_matching("4-5")});
    CHECK(not_unique.status == SimultaneousStatus::path_not_unique);
    CHECK(not_unique.detail.find("4-5") != std::string::npos);
}

TEST_CASE("simultaneous checks validate their inputs")
{
    SimplicialComplex m5 = build_matching_complex(5);
    GradientVectorField field = empty_field(m5);
    CHECK_THROWS_AS(check_simultaneous(field, {parse_matching("1-2,3-4")}, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_simultaneous(field, {parse_matching("1-2,3-4")},
                                       {parse_matching("1-2,3-5")}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        check_simultaneous(field, {parse_matching("1-2,3-4"), parse_matching("1-2,3-4")},
                           {parse_matching("1-2"), parse_matching("3-4")}),
        std::invalid_argument);
}

TEST_CASE("a single-pair plan agrees with cancel_pair")
{
    SimplicialComplex m5 = build_matching_complex(5);
    for (std::uint64_t seed = 300; seed < 320; ++seed) {
        GradientVectorField field = mt::random_acyclic_field(m5, seed);
        auto pairs = find_cancellable_pairs(field);
        if (pairs.empty())
            continue;
        const auto& [eta, sigma] = pairs.front();
        auto check = check_simultaneous(field, {eta}, {sigma});
        REQUIRE(check.accepted());
        GradientVectorField via_plan = apply_plan(field, check.plan);
        GradientVectorField via_cancel = cancel_pair(field, eta, sigma);
        REQUIRE(via_plan.pairs() == via_cancel.pairs());
    }
}

TEST_CASE("plans are bound to the exact field they were computed for")
{
    SimplicialComplex m5 = build_matching_complex(5);
    GradientVectorField field = empty_field(m5);
    auto check = check_simultaneous(field, {parse_matching("1-2,3-4")}, {parse_matching("1-2")});
    REQUIRE(check.accepted());

    GradientVectorField changed =
        add_pair(field, parse_matching("3-5"), parse_matching("1-2,3-5"));
    CHECK_THROWS_AS(apply_plan(changed, check.plan), StalePlanError);

    // An empty plan leaves the field untouched.
    auto empty_check = check_simultaneous(field, {}, {});
    REQUIRE(empty_check.accepted());
    CHECK(apply_plan(field, empty_check.plan).pairs() == field.pairs());
}

TEST_CASE("cancellation log lines")
{
    CHECK(cancellation_log_line(parse_matching("1-5,2-6,4-7"), parse_matching("1-2,4-5"), 3) ==
          "cancel p=1 eta=1-5,2-6,4-7 sigma=1-2,4-5 path_len=3");
}
