/**
 * Search for gradient vector fields whose critical vectors meet the
 * homological lower bounds, and certificates that make the result
 * independently checkable.
 *
 * Restarts are independent and may run concurrently; results are merged
 * in restart order, so the outcome is identical for any thread count.
 */

#ifndef MORSEMATCH_OPTIMIZE_HPP
#define MORSEMATCH_OPTIMIZE_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "morsematch/cancellation.hpp"
#include "morsematch/homology.hpp"

namespace morsematch {

enum class Strategy { lexicographic_greedy, random };

std::string to_string(Strategy strategy);
Strategy parse_strategy(const std::string& text);

struct SearchConfig {
    Strategy strategy = Strategy::random;
    std::uint64_t seed = 0;
    int max_restarts = 64;
    int max_cancellations_per_restart = 10000;
    bool simultaneous_enabled = true;
    int threads = 0;  ///< 0 picks the hardware concurrency
};

enum class Verdict { optimal, budget_exhausted };

/**
 * Everything needed to re-check an optimization result: the full
 * pairing, the cancellation log of the winning restart, the homology
 * report with its lower bounds, and the verdict.  Canonical ordering
 * throughout makes certificate files byte-comparable.
 */
struct OptimalityCertificate {
    int n = 0;
    Strategy strategy = Strategy::random;
    std::uint64_t seed = 0;
    int max_restarts = 0;
    int max_cancellations = 0;
    bool simultaneous_enabled = true;
    int restart = -1;  ///< index of the restart that produced the field

    std::vector<std::vector<Matching>> critical;  ///< per dimension
    std::vector<std::pair<Matching, Matching>> pairs;
    std::vector<std::string> log;
    HomologySummary homology;
    CriticalVector lower_bounds;
    CriticalVector critical_vector;
    Verdict verdict = Verdict::budget_exhausted;
};

/**
 * Build an acyclic starting field.  The greedy strategy scans
 * dimensions bottom-up and pairs each unpaired cell with its
 * lexicographically least unpaired cofacet whenever that preserves
 * acyclicity; the random strategy permutes the scan order by seed.
 */
GradientVectorField initial_field(const SimplicialComplex& cplx, Strategy strategy,
                                  std::uint64_t seed);
GradientVectorField initial_field(const SimplicialComplex& cplx, const SearchConfig& config);

/**
 * Drive restarts of build-then-cancel until some restart's critical
 * vector meets the homological lower bounds or the budget runs out.
 * Within a restart, cancellable pairs are taken lowest dimension first
 * in canonical order; when single cancellation stalls and simultaneous
 * cancellation is enabled, eta/sigma subsets of size up to 4 are
 * searched for an acceptable plan.
 *
 * @returns A certificate; verdict optimal iff the bounds were met.
 */
OptimalityCertificate optimize(const SimplicialComplex& cplx, const SearchConfig& config);

/**
 * Independently re-check a certificate against a complex: pairing
 * validity, acyclicity, the critical listing and vector, the homology
 * report and bounds, Morse-complex homology against simplicial
 * homology, and verdict consistency.
 */
bool verify_certificate(const SimplicialComplex& cplx, const OptimalityCertificate& cert);

void write_certificate(std::ostream& os, const OptimalityCertificate& cert);
void write_certificate_file(const std::string& path, const OptimalityCertificate& cert);

/** @throws ParseError on malformed certificate text. */
OptimalityCertificate read_certificate(std::istream& is);
OptimalityCertificate read_certificate_file(const std::string& path);

}  // namespace morsematch

#endif
