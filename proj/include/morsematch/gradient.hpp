/**
 * Gradient vector fields: acyclic partial matchings on the Hasse diagram
 * of a complex, pairing p-cells with (p+1)-cofaces.
 *
 * Fields are immutable values; every operation returns a new field or a
 * pure result, so concurrent readers need no coordination.
 */

#ifndef MORSEMATCH_GRADIENT_HPP
#define MORSEMATCH_GRADIENT_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "morsematch/complex.hpp"

namespace morsematch {

/** Error thrown when a pair cannot be added to a field. */
struct PairingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** Critical-cell counts per dimension. */
using CriticalVector = std::vector<int>;

/**
 * A gradient path: an alternating sequence tau_0, sigma_0, tau_1, ...,
 * tau_k starting at a facet of a critical cell and ending at a critical
 * cell one dimension below the source.  A critical facet of the source
 * is itself a path of length zero.
 */
struct GradientPath {
    Matching source;              ///< the critical cell the path starts under
    std::vector<Matching> cells;  ///< tau_0, sigma_0, ..., tau_k (odd length)

    const Matching& start() const { return cells.front(); }
    const Matching& endpoint() const { return cells.back(); }

    /** Number of field pairs the path traverses (k). */
    int length() const { return (static_cast<int>(cells.size()) - 1) / 2; }
};

/**
 * A partial matching on the Hasse diagram.  Each cell is critical,
 * paired with a cofacet one dimension up, or paired with a facet one
 * dimension down; no cell is in two pairs.  Acyclicity is a property of
 * the whole field and is checked by is_acyclic, not per added pair.
 */
class GradientVectorField {
  public:
    explicit GradientVectorField(const SimplicialComplex& cplx);

    const SimplicialComplex& complex() const { return *cplx_; }

    bool is_critical(const CellRef& ref) const;
    bool is_paired_up(const CellRef& ref) const { return up_partner(ref) >= 0; }
    bool is_paired_down(const CellRef& ref) const { return down_partner(ref) >= 0; }

    /** Index of the paired cofacet in dimension dim+1, or -1. */
    int up_partner(const CellRef& ref) const { return up_.at(ref.dim).at(ref.index); }

    /** Index of the paired facet in dimension dim-1, or -1. */
    int down_partner(const CellRef& ref) const { return down_.at(ref.dim).at(ref.index); }

    /** Number of pairs between dimensions dim and dim+1. */
    int pair_count(int dim) const;
    int total_pairs() const;

    /** All pairs (tau, sigma), ordered by dimension then by tau. */
    std::vector<std::pair<Matching, Matching>> pairs() const;

    /** FNV-1a hash of the canonical pair listing; identifies the field. */
    std::uint64_t fingerprint() const;

    /** Internal: record a validated pair.  Use add_pair instead. */
    void set_pair_unchecked(const CellRef& tau, const CellRef& sigma);

  private:
    const SimplicialComplex* cplx_;
    std::vector<std::vector<int>> up_;
    std::vector<std::vector<int>> down_;
};

/** The field with no pairs: every cell critical. */
GradientVectorField empty_field(const SimplicialComplex& cplx);

/**
 * Return a copy of the field with the pair (tau, sigma) added.
 *
 * @throws PairingError if tau is not a facet of sigma or either cell is
 *         already paired.
 * @throws CellNotFoundError if either cell is not in the complex.
 */
GradientVectorField add_pair(const GradientVectorField& field, const Matching& tau,
                             const Matching& sigma);

/**
 * Forman acyclicity: no closed V-path in any dimension layer.  The
 * layer digraph walks tau -> sigma along pairs and sigma -> tau' along
 * unpaired facet relations.
 */
bool is_acyclic(const GradientVectorField& field);

/**
 * True if adding (tau, sigma) to the field keeps it acyclic.  The field
 * itself must be acyclic and both cells unpaired.
 */
bool can_pair_acyclically(const GradientVectorField& field, const CellRef& tau,
                          const CellRef& sigma);

/** Unpaired cells per dimension, canonical order. */
std::vector<std::vector<Matching>> critical_cells(const GradientVectorField& field);

/** Counts of unpaired cells per dimension. */
CriticalVector critical_vector(const GradientVectorField& field);

/**
 * All maximal gradient paths from facets of `source` that end at a
 * critical cell, in canonical order (by facet, then depth-first by
 * facet order at each branch).
 *
 * @param source A critical cell of the field.
 * @throws std::invalid_argument if source is not critical.
 */
std::vector<GradientPath> enumerate_paths(const GradientVectorField& field,
                                          const Matching& source);

/** Endpoint histogram of enumerate_paths. */
std::map<Matching, int> path_endpoints(const GradientVectorField& field, const Matching& source);

/**
 * Write the field as text: header "gvf complex=<n>" then one pair per
 * line "<tau> => <sigma>".
 */
void write_gvf(std::ostream& os, const GradientVectorField& field);
void write_gvf_file(const std::string& path, const GradientVectorField& field);

/**
 * Read a field over the given complex.  Structure (facet relations,
 * partial matching) is validated; acyclicity is not.
 *
 * @throws ParseError on malformed lines, unknown cells or double pairing.
 */
GradientVectorField read_gvf(std::istream& is, const SimplicialComplex& cplx);
GradientVectorField read_gvf_file(const std::string& path, const SimplicialComplex& cplx);

}  // namespace morsematch

#endif
