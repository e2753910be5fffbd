/**
 * Cancellation of critical pairs by gradient-path reversal: single pairs
 * when the connecting path is unique, and simultaneous batches when the
 * path-existence relation admits exactly one bijection and every
 * realizing path is unique.
 */

#ifndef MORSEMATCH_CANCELLATION_HPP
#define MORSEMATCH_CANCELLATION_HPP

#include <string>
#include <vector>

#include "morsematch/gradient.hpp"

namespace morsematch {

struct NoPathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonUniquePathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** Thrown when a plan is applied to a field it was not computed for. */
struct StalePlanError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/**
 * A batch of cancellations bound to the exact field it was computed
 * against.  Each entry carries the unique realizing path from a facet
 * of eta down to sigma.
 */
struct CancellationPlan {
    struct Entry {
        Matching eta;
        Matching sigma;
        GradientPath path;
    };

    std::uint64_t field_fingerprint = 0;
    std::vector<Entry> entries;
};

/**
 * Cancel the critical pair (eta, sigma) by reversing the unique gradient
 * path between them.  Path uniqueness is recomputed here, not taken on
 * trust.
 *
 * @returns A new acyclic field in which eta and sigma are paired away and
 *          every cell off the reversed path keeps its previous status.
 * @throws NoPathError / NonUniquePathError when the path count is 0 / >1.
 * @throws std::invalid_argument if either cell is not critical.
 */
GradientVectorField cancel_pair(const GradientVectorField& field, const Matching& eta,
                                const Matching& sigma);

/**
 * All ordered pairs of critical cells in adjacent dimensions connected
 * by exactly one gradient path, lowest dimension first, canonical order
 * within a dimension.
 */
std::vector<std::pair<Matching, Matching>> find_cancellable_pairs(
    const GradientVectorField& field);

enum class SimultaneousStatus {
    accepted,
    no_bijection,     ///< no pairing of etas with sigmas is realized by paths
    ambiguous,        ///< more than one such bijection exists
    path_not_unique,  ///< the realizing path of some matched pair is not unique
};

struct SimultaneousCheck {
    SimultaneousStatus status = SimultaneousStatus::no_bijection;
    CancellationPlan plan;  ///< meaningful only when accepted
    std::string detail;

    bool accepted() const { return status == SimultaneousStatus::accepted; }
};

/**
 * Decide whether the critical cells etas (dimension p+1) and sigmas
 * (dimension p) can be cancelled simultaneously: a bijection realized by
 * gradient paths must exist, be unique (decided by exhaustive
 * perfect-matching enumeration), and each realizing path must be unique.
 *
 * @throws std::invalid_argument on mixed dimensions, repeated or
 *         non-critical cells, or size mismatch.
 */
SimultaneousCheck check_simultaneous(const GradientVectorField& field,
                                     const std::vector<Matching>& etas,
                                     const std::vector<Matching>& sigmas);

/**
 * Apply an accepted plan: reverse all its paths at once.  The 2k listed
 * cells leave the critical set; all other cells keep their status.
 *
 * @throws StalePlanError if the field changed since the plan was made.
 */
GradientVectorField apply_plan(const GradientVectorField& field, const CancellationPlan& plan);

/** One line of the cancellation log kept in optimizer certificates. */
std::string cancellation_log_line(const Matching& eta, const Matching& sigma, int path_len);

}  // namespace morsematch

#endif
