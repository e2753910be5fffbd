#include "morsematch/cancellation.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace morsematch {

namespace {

struct Reversal {
    std::vector<std::pair<Matching, Matching>> removed;
    std::vector<std::pair<Matching, Matching>> added;
};

/** Pair edits that reverse one gradient path below `eta`. */
Reversal path_reversal(const Matching& eta, const GradientPath& path)
{
    Reversal edits;
    edits.added.emplace_back(path.cells.front(), eta);
    for (int i = 0; i < path.length(); ++i) {
        const Matching& sigma_i = path.cells[2 * i + 1];
        edits.removed.emplace_back(path.cells[2 * i], sigma_i);
        edits.added.emplace_back(path.cells[2 * i + 2], sigma_i);
    }
    return edits;
}

GradientVectorField apply_reversals(const GradientVectorField& field,
                                    const std::vector<Reversal>& reversals)
{
    std::vector<std::pair<Matching, Matching>> pairs = field.pairs();
    for (const Reversal& edits : reversals) {
        for (const auto& gone : edits.removed) {
            auto it = std::find(pairs.begin(), pairs.end(), gone);
            if (it == pairs.end())
                throw std::logic_error("pair " + to_string(gone.first) + " => " +
                                       to_string(gone.second) + " not present in field");
            pairs.erase(it);
        }
    }
    GradientVectorField next = empty_field(field.complex());
    for (const auto& [tau, sigma] : pairs)
        next = add_pair(next, tau, sigma);
    for (const Reversal& edits : reversals)
        for (const auto& [tau, sigma] : edits.added)
            next = add_pair(next, tau, sigma);
    if (!is_acyclic(next))
        throw std::logic_error("path reversal produced a cyclic field");
    return next;
}

void require_critical(const GradientVectorField& field, const Matching& cell)
{
    if (!field.is_critical(field.complex().require(cell)))
        throw std::invalid_argument("cell " + to_string(cell) + " is not critical");
}

}  // namespace

GradientVectorField cancel_pair(const GradientVectorField& field, const Matching& eta,
                                const Matching& sigma)
{
    require_critical(field, eta);
    require_critical(field, sigma);

    std::vector<GradientPath> hits;
    for (const GradientPath& path : enumerate_paths(field, eta))
        if (path.endpoint() == sigma)
            hits.push_back(path);
    if (hits.empty())
        throw NoPathError("no gradient path from a face of " + to_string(eta) + " to " +
                          to_string(sigma));
    if (hits.size() > 1)
        throw NonUniquePathError(std::to_string(hits.size()) + " gradient paths from " +
                                 to_string(eta) + " to " + to_string(sigma) +
                                 "; cancellation is forbidden");
    return apply_reversals(field, {path_reversal(eta, hits.front())});
}

std::vector<std::pair<Matching, Matching>> find_cancellable_pairs(
    const GradientVectorField& field)
{
    // Dimensions ascending, then canonical (eta, sigma) order.
    std::vector<std::pair<Matching, Matching>> result;
    const auto critical = critical_cells(field);
    for (int d = 1; d < static_cast<int>(critical.size()); ++d) {
        for (const Matching& eta : critical[d]) {
            for (const auto& [sigma, count] : path_endpoints(field, eta))
                if (count == 1)
                    result.emplace_back(eta, sigma);
        }
    }
    return result;
}

SimultaneousCheck check_simultaneous(const GradientVectorField& field,
                                     const std::vector<Matching>& etas,
                                     const std::vector<Matching>& sigmas)
{
    if (etas.size() != sigmas.size())
        throw std::invalid_argument("need as many etas as sigmas");
    if (etas.empty()) {
        SimultaneousCheck check;
        check.status = SimultaneousStatus::accepted;
        check.plan.field_fingerprint = field.fingerprint();
        return check;
    }
    const int upper_dim = etas.front().dimension();
    for (const Matching& eta : etas) {
        require_critical(field, eta);
        if (eta.dimension() != upper_dim)
            throw std::invalid_argument("etas must share one dimension");
    }
    for (const Matching& sigma : sigmas) {
        require_critical(field, sigma);
        if (sigma.dimension() != upper_dim - 1)
            throw std::invalid_argument("sigmas must be one dimension below the etas");
    }
    if (std::set<Matching>(etas.begin(), etas.end()).size() != etas.size() ||
        std::set<Matching>(sigmas.begin(), sigmas.end()).size() != sigmas.size())
        throw std::invalid_argument("etas and sigmas must each be distinct");

    const int n = static_cast<int>(etas.size());
    std::vector<std::vector<int>> count(n, std::vector<int>(n, 0));
    std::vector<std::vector<GradientPath>> first_path(n, std::vector<GradientPath>(n));
    for (int i = 0; i < n; ++i) {
        for (const GradientPath& path : enumerate_paths(field, etas[i])) {
            auto it = std::find(sigmas.begin(), sigmas.end(), path.endpoint());
            if (it == sigmas.end())
                continue;
            int j = static_cast<int>(it - sigmas.begin());
            if (count[i][j]++ == 0)
                first_path[i][j] = path;
        }
    }

    // Enumerate perfect matchings of the path-existence bipartite graph,
    // stopping as soon as two are seen.
    std::vector<int> assignment(n, -1), witness;
    std::vector<char> used(n, 0);
    int matchings = 0;
    auto extend = [&](auto&& self, int i) -> void {
        if (matchings >= 2)
            return;
        if (i == n) {
            if (++matchings == 1)
                witness = assignment;
            return;
        }
        for (int j = 0; j < n; ++j) {
            if (used[j] || count[i][j] == 0)
                continue;
            used[j] = 1;
            assignment[i] = j;
            self(self, i + 1);
            used[j] = 0;
        }
    };
    extend(extend, 0);

    SimultaneousCheck check;
    if (matchings == 0) {
        check.status = SimultaneousStatus::no_bijection;
        check.detail = "no bijection is realized by gradient paths";
        return check;
    }
    if (matchings > 1) {
        check.status = SimultaneousStatus::ambiguous;
        check.detail = "more than one bijection is realized by gradient paths";
        return check;
    }
    for (int i = 0; i < n; ++i) {
        if (count[i][witness[i]] != 1) {
            check.status = SimultaneousStatus::path_not_unique;
            check.detail = "pair (" + to_string(etas[i]) + ", " + to_string(sigmas[witness[i]]) +
                           ") has " + std::to_string(count[i][witness[i]]) + " gradient paths";
            return check;
        }
    }
    check.status = SimultaneousStatus::accepted;
    check.plan.field_fingerprint = field.fingerprint();
    for (int i = 0; i < n; ++i)
        check.plan.entries.push_back(
            {etas[i], sigmas[witness[i]], first_path[i][witness[i]]});
    return check;
}

GradientVectorField apply_plan(const GradientVectorField& field, const CancellationPlan& plan)
{
    if (plan.field_fingerprint != field.fingerprint())
        throw StalePlanError("plan was computed against a different field");

    std::set<Matching> touched;
    std::vector<Reversal> reversals;
    for (const CancellationPlan::Entry& entry : plan.entries) {
        for (const Matching& cell : entry.path.cells)
            if (!touched.insert(cell).second)
                throw std::logic_error("plan paths overlap at cell " + to_string(cell));
        reversals.push_back(path_reversal(entry.eta, entry.path));
    }
    return apply_reversals(field, reversals);
}

std::string cancellation_log_line(const Matching& eta, const Matching& sigma, int path_len)
{
    std::ostringstream out;
    out << "cancel p=" << sigma.dimension() << " eta=" << to_string(eta)
        << " sigma=" << to_string(sigma) << " path_len=" << path_len;
    return out.str();
}

}  // namespace morsematch
