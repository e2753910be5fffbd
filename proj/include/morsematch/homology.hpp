/**
 * Exact integer homology of simplicial and Morse chain complexes.
 *
 * Everything here runs over arbitrary-precision integers; no floating
 * point is involved anywhere.  Orientation convention: a cell is
 * oriented by its canonical pair order, and the facet omitting the i-th
 * pair carries incidence sign (-1)^i.
 */

#ifndef MORSEMATCH_HOMOLOGY_HPP
#define MORSEMATCH_HOMOLOGY_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <iosfwd>
#include <string>
#include <vector>

#include "morsematch/gradient.hpp"

namespace morsematch {

using Int = boost::multiprecision::cpp_int;

/** Error thrown when a chain complex fails the dd = 0 check. */
struct ChainComplexError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** A dense matrix of exact integers. */
class IntegerMatrix {
  public:
    IntegerMatrix() = default;
    IntegerMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& operator()(int r, int c) { return data_[r * cols_ + c]; }
    const Int& operator()(int r, int c) const { return data_[r * cols_ + c]; }

    bool is_zero() const;
    IntegerMatrix multiply(const IntegerMatrix& rhs) const;

    void swap_rows(int r1, int r2);
    void swap_cols(int c1, int c2);
    void negate_row(int r);
    void negate_col(int c);
    /** row r1 += q * row r2 */
    void add_row_multiple(int r1, int r2, const Int& q);
    /** col c1 += q * col c2 */
    void add_col_multiple(int c1, int c2, const Int& q);

    bool operator==(const IntegerMatrix&) const = default;

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Int> data_;
};

/** Invariant factors d_1 | d_2 | ... | d_r of a matrix; r is its rank. */
struct SmithNormalForm {
    std::vector<Int> invariant_factors;
    int rank() const { return static_cast<int>(invariant_factors.size()); }
};

/**
 * Compute the Smith normal form by unimodular row/column operations,
 * always pivoting on a nonzero entry of minimal absolute value to keep
 * coefficient growth in check.  Factors come out positive and each
 * divides the next.
 */
SmithNormalForm smith_normal_form(IntegerMatrix m);

/**
 * Smith normal form together with the unimodular transforms that
 * realize it: row_ops * input * col_ops is diagonal with the invariant
 * factors in the leading positions.
 */
struct SmithDecomposition {
    SmithNormalForm form;
    IntegerMatrix row_ops;
    IntegerMatrix col_ops;
};

SmithDecomposition smith_decomposition(const IntegerMatrix& m);

/**
 * A chain complex of free abelian groups with chosen cell bases.
 * boundary(k) maps k-chains to (k-1)-chains; rows are (k-1)-cells and
 * columns are k-cells, in the order of the stored bases.
 */
class ChainComplex {
  public:
    /**
     * @param bases     Cell names per dimension 0..dim.
     * @param boundaries boundaries[k] is the matrix of d_k for
     *                  k = 1..dim (index 0 unused and empty).
     * @throws ChainComplexError if shapes are inconsistent or some
     *         composition d_k d_{k+1} is nonzero.
     */
    ChainComplex(std::vector<std::vector<Matching>> bases,
                 std::vector<IntegerMatrix> boundaries);

    int dimension() const { return static_cast<int>(bases_.size()) - 1; }
    int rank(int dim) const;
    const std::vector<Matching>& basis(int dim) const { return bases_.at(dim); }
    const IntegerMatrix& boundary(int k) const { return boundaries_.at(k); }

  private:
    std::vector<std::vector<Matching>> bases_;
    std::vector<IntegerMatrix> boundaries_;
};

/** Betti numbers and torsion invariant factors per dimension. */
struct HomologySummary {
    std::vector<int> betti;
    std::vector<std::vector<Int>> torsion;  // factors > 1, per dimension

    int dimension() const { return static_cast<int>(betti.size()) - 1; }
};

/**
 * Boundary matrix d_k of the complex: rows are (k-1)-cells, columns are
 * k-cells, entry (tau, sigma) = (-1)^i when tau omits the i-th pair of
 * sigma.
 *
 * @throws std::out_of_range unless 1 <= k <= dim.
 */
IntegerMatrix simplicial_boundary(const SimplicialComplex& cplx, int k);

/** The full simplicial chain complex of cplx over the integers. */
ChainComplex simplicial_chain_complex(const SimplicialComplex& cplx);

/** Betti numbers and torsion of a chain complex, via Smith normal form. */
HomologySummary homology_of(const ChainComplex& complex);

/**
 * The Morse chain complex of an acyclic field: bases are the critical
 * cells and the boundary entry <d eta, sigma> sums the incidence-sign
 * products over all gradient paths from facets of eta to sigma.
 *
 * @throws std::invalid_argument if the field is not acyclic.
 */
ChainComplex morse_boundary(const GradientVectorField& field);

/**
 * Morse-inequality lower bounds c_k >= b_k + t_k + t_{k-1}, where t_k
 * counts the torsion invariant factors in dimension k.  Returns the
 * vector of right-hand sides.
 */
CriticalVector morse_lower_bounds(const HomologySummary& summary);

/**
 * Machine-readable report: one line "H_<k> = ..." per dimension with
 * groups like Z, Z^b, Z/d and their sums, then a final line
 * "lower_bounds = (c_0, c_1, ...)".
 */
std::string homology_report(const HomologySummary& summary);

}  // namespace morsematch

#endif
