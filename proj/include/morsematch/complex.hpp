/**
 * The matching complex M_n of the complete graph of order n.
 *
 * Cells are stored explicitly per dimension in canonical (lexicographic)
 * order together with facet/cofacet adjacency, so that every downstream
 * traversal is deterministic.  The complex is immutable after
 * construction and safe to share across threads.
 */

#ifndef MORSEMATCH_COMPLEX_HPP
#define MORSEMATCH_COMPLEX_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "morsematch/matching.hpp"

namespace morsematch {

/** Error thrown when a cell is looked up that is not in the complex. */
struct CellNotFoundError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** Location of a cell inside a SimplicialComplex. */
struct CellRef {
    int dim = -1;
    int index = -1;

    auto operator<=>(const CellRef&) const = default;
};

/**
 * A downward-closed set of matchings of K_n, with adjacency.
 *
 * build_matching_complex produces the full complex M_n; the file reader
 * accepts any family of matchings and closes it downward.
 */
class SimplicialComplex {
  public:
    /**
     * Build a complex from an arbitrary family of matchings on
     * {1,...,n}.  The family is closed downward, deduplicated, sorted
     * and wired with facet/cofacet adjacency.
     *
     * @throws std::invalid_argument if a matching uses a vertex > n.
     */
    SimplicialComplex(int n, const std::vector<Matching>& cells);

    int order() const { return n_; }

    /** Dimension of the complex (-1 when empty). */
    int dimension() const { return static_cast<int>(cells_.size()) - 1; }

    /** Number of cells of dimension `dim` (0 when out of range). */
    int cell_count(int dim) const;

    /** Total number of cells over all dimensions. */
    int total_cells() const;

    const std::vector<Matching>& cells(int dim) const;
    const Matching& cell(const CellRef& ref) const { return cells_.at(ref.dim).at(ref.index); }

    /** Locate a cell; index < 0 if absent. */
    CellRef find(const Matching& cell) const;
    bool contains(const Matching& cell) const { return find(cell).index >= 0; }

    /** Locate a cell or throw CellNotFoundError. */
    CellRef require(const Matching& cell) const;

    const std::vector<int>& facet_indices(const CellRef& ref) const;
    const std::vector<int>& cofacet_indices(const CellRef& ref) const;

    /** Numbers of cells per dimension. */
    std::vector<int> f_vector() const;

  private:
    int n_;
    std::vector<std::vector<Matching>> cells_;
    std::vector<std::vector<std::vector<int>>> facets_;    // [dim][cell] -> dim-1 indices
    std::vector<std::vector<std::vector<int>>> cofacets_;  // [dim][cell] -> dim+1 indices
};

/**
 * Construct the full matching complex M_n: cells of dimension k are
 * exactly the (k+1)-matchings of K_n.
 *
 * @param n Order of the complete graph, 2 <= n <= 12.
 * @throws std::out_of_range when n is outside that range.
 */
SimplicialComplex build_matching_complex(int n);

/**
 * Codimension-1 faces of a cell, in canonical order.  0-cells have no
 * stored facets.
 *
 * @throws CellNotFoundError if the cell is not in the complex.
 */
std::vector<Matching> facets(const SimplicialComplex& cplx, const Matching& cell);

/** Cells of one higher dimension containing the cell, canonical order. */
std::vector<Matching> cofacets(const SimplicialComplex& cplx, const Matching& cell);

/** Alternating sum of the f-vector. */
long long euler_characteristic(const SimplicialComplex& cplx);

/** Render a count vector as "(a, b, c)". */
std::string format_counts(const std::vector<int>& counts);

/**
 * Write the complex in its text format: a header line
 * "matching-complex n=<n>" followed by one cell per line in canonical
 * form.  Only inclusion-maximal cells are written; faces are implied.
 */
void write_complex(std::ostream& os, const SimplicialComplex& cplx);
void write_complex_file(const std::string& path, const SimplicialComplex& cplx);

/**
 * Read the text format back.  Listed cells may be any matchings on
 * {1,...,n}; the complex is closed downward.
 *
 * @throws ParseError on a malformed header or cell line (the message
 *         names the offending line).
 */
SimplicialComplex read_complex(std::istream& is);
SimplicialComplex read_complex_file(const std::string& path);

}  // namespace morsematch

#endif
