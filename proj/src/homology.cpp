#include "morsematch/homology.hpp"

#include <algorithm>
#include <sstream>

namespace morsematch {

bool IntegerMatrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const Int& x) { return x == 0; });
}

IntegerMatrix IntegerMatrix::multiply(const IntegerMatrix& rhs) const
{
    if (cols_ != rhs.rows_)
        throw std::invalid_argument("matrix shape mismatch in multiply");
    IntegerMatrix out(rows_, rhs.cols_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k) {
            const Int& x = (*this)(r, k);
            if (x == 0)
                continue;
            for (int c = 0; c < rhs.cols_; ++c) {
                const Int& y = rhs(k, c);
                if (y != 0)
                    out(r, c) += x * y;
            }
        }
    return out;
}

void IntegerMatrix::swap_rows(int r1, int r2)
{
    if (r1 == r2)
        return;
    for (int c = 0; c < cols_; ++c)
        std::swap((*this)(r1, c), (*this)(r2, c));
}

void IntegerMatrix::swap_cols(int c1, int c2)
{
    if (c1 == c2)
        return;
    for (int r = 0; r < rows_; ++r)
        std::swap((*this)(r, c1), (*this)(r, c2));
}

void IntegerMatrix::negate_row(int r)
{
    for (int c = 0; c < cols_; ++c)
        (*this)(r, c) = -(*this)(r, c);
}

void IntegerMatrix::negate_col(int c)
{
    for (int r = 0; r < rows_; ++r)
        (*this)(r, c) = -(*this)(r, c);
}

void IntegerMatrix::add_row_multiple(int r1, int r2, const Int& q)
{
    if (q == 0)
        return;
    for (int c = 0; c < cols_; ++c)
        (*this)(r1, c) += q * (*this)(r2, c);
}

void IntegerMatrix::add_col_multiple(int c1, int c2, const Int& q)
{
    if (q == 0)
        return;
    for (int r = 0; r < rows_; ++r)
        (*this)(r, c1) += q * (*this)(r, c2);
}

namespace {

/**
 * Shared reduction behind both entry points.  When row_ops/col_ops are
 * given they start as identities and mirror every elementary step.
 */
SmithNormalForm reduce_to_smith_form(IntegerMatrix& m, IntegerMatrix* row_ops,
                                     IntegerMatrix* col_ops)
{
    auto swap_rows = [&](int r1, int r2) {
        m.swap_rows(r1, r2);
        if (row_ops)
            row_ops->swap_rows(r1, r2);
    };
    auto swap_cols = [&](int c1, int c2) {
        m.swap_cols(c1, c2);
        if (col_ops)
            col_ops->swap_cols(c1, c2);
    };
    auto negate_row = [&](int r) {
        m.negate_row(r);
        if (row_ops)
            row_ops->negate_row(r);
    };
    auto negate_col = [&](int c) {
        m.negate_col(c);
        if (col_ops)
            col_ops->negate_col(c);
    };
    auto add_row_multiple = [&](int r1, int r2, const Int& q) {
        m.add_row_multiple(r1, r2, q);
        if (row_ops)
            row_ops->add_row_multiple(r1, r2, q);
    };
    auto add_col_multiple = [&](int c1, int c2, const Int& q) {
        m.add_col_multiple(c1, c2, q);
        if (col_ops)
            col_ops->add_col_multiple(c1, c2, q);
    };

    std::vector<Int> factors;
    const int limit = std::min(m.rows(), m.cols());

    for (int t = 0; t < limit; ++t) {
        // Pivot on the entry of minimal absolute value in the remaining
        // submatrix; this keeps intermediate coefficients small.
        int pr = -1, pc = -1;
        Int best = 0;
        for (int r = t; r < m.rows(); ++r)
            for (int c = t; c < m.cols(); ++c) {
                const Int& x = m(r, c);
                if (x == 0)
                    continue;
                Int ax = abs(x);
                if (pr < 0 || ax < best) {
                    best = ax;
                    pr = r;
                    pc = c;
                }
            }
        if (pr < 0)
            break;  // remaining submatrix is zero
        swap_rows(t, pr);
        swap_cols(t, pc);
        if (m(t, t) < 0)
            negate_row(t);

        bool settled = false;
        while (!settled) {
            settled = true;

            // Clear the pivot column.  A nonzero remainder is strictly
            // smaller than the pivot and becomes the new pivot.
            for (int r = t + 1; r < m.rows(); ++r) {
                if (m(r, t) == 0)
                    continue;
                Int q = m(r, t) / m(t, t);
                add_row_multiple(r, t, -q);
                if (m(r, t) != 0) {
                    swap_rows(t, r);
                    if (m(t, t) < 0)
                        negate_row(t);
                    settled = false;
                }
            }
            if (!settled)
                continue;

            // Clear the pivot row.
            for (int c = t + 1; c < m.cols(); ++c) {
                if (m(t, c) == 0)
                    continue;
                Int q = m(t, c) / m(t, t);
                add_col_multiple(c, t, -q);
                if (m(t, c) != 0) {
                    swap_cols(t, c);
                    if (m(t, t) < 0)
                        negate_col(t);
                    settled = false;
                }
            }
            if (!settled)
                continue;

            // Divisibility: the pivot must divide every remaining entry.
            if (m(t, t) != 1) {
                for (int r = t + 1; r < m.rows() && settled; ++r)
                    for (int c = t + 1; c < m.cols(); ++c)
                        if (m(r, c) % m(t, t) != 0) {
                            add_row_multiple(t, r, 1);
                            settled = false;
                            break;
                        }
            }
        }
        factors.push_back(m(t, t));
    }
    return SmithNormalForm{std::move(factors)};
}

IntegerMatrix identity_matrix(int n)
{
    IntegerMatrix id(n, n);
    for (int i = 0; i < n; ++i)
        id(i, i) = 1;
    return id;
}

}  // namespace

SmithNormalForm smith_normal_form(IntegerMatrix m)
{
    return reduce_to_smith_form(m, nullptr, nullptr);
}

SmithDecomposition smith_decomposition(const IntegerMatrix& m)
{
    SmithDecomposition result;
    result.row_ops = identity_matrix(m.rows());
    result.col_ops = identity_matrix(m.cols());
    IntegerMatrix work = m;
    result.form = reduce_to_smith_form(work, &result.row_ops, &result.col_ops);
    return result;
}

ChainComplex::ChainComplex(std::vector<std::vector<Matching>> bases,
                           std::vector<IntegerMatrix> boundaries)
    : bases_(std::move(bases)), boundaries_(std::move(boundaries))
{
    if (bases_.empty())
        throw ChainComplexError("chain complex needs at least dimension 0");
    if (boundaries_.size() != bases_.size())
        throw ChainComplexError("expected one boundary matrix per dimension >= 1");
    for (int k = 1; k <= dimension(); ++k) {
        const IntegerMatrix& bd = boundaries_[k];
        if (bd.rows() != rank(k - 1) || bd.cols() != rank(k))
            throw ChainComplexError("boundary matrix shape mismatch in dimension " +
                                    std::to_string(k));
    }
    for (int k = 1; k + 1 <= dimension(); ++k) {
        if (!boundaries_[k].multiply(boundaries_[k + 1]).is_zero())
            throw ChainComplexError("d_" + std::to_string(k) + " o d_" + std::to_string(k + 1) +
                                    " is not zero");
    }
}

int ChainComplex::rank(int dim) const
{
    if (dim < 0 || dim > dimension())
        return 0;
    return static_cast<int>(bases_[dim].size());
}

IntegerMatrix simplicial_boundary(const SimplicialComplex& cplx, int k)
{
    if (k < 1 || k > cplx.dimension())
        throw std::out_of_range("boundary dimension " + std::to_string(k) + " out of range");
    IntegerMatrix bd(cplx.cell_count(k - 1), cplx.cell_count(k));
    for (int c = 0; c < cplx.cell_count(k); ++c) {
        const Matching& sigma = cplx.cells(k)[c];
        for (int i = 0; i < sigma.size(); ++i) {
            int r = cplx.find(sigma.without_pair(i)).index;
            bd(r, c) = (i % 2 == 0) ? 1 : -1;
        }
    }
    return bd;
}

ChainComplex simplicial_chain_complex(const SimplicialComplex& cplx)
{
    std::vector<std::vector<Matching>> bases;
    for (int d = 0; d <= cplx.dimension(); ++d)
        bases.push_back(cplx.cells(d));
    std::vector<IntegerMatrix> boundaries(cplx.dimension() + 1);
    for (int k = 1; k <= cplx.dimension(); ++k)
        boundaries[k] = simplicial_boundary(cplx, k);
    return ChainComplex(std::move(bases), std::move(boundaries));
}

HomologySummary homology_of(const ChainComplex& complex)
{
    const int dim = complex.dimension();
    std::vector<SmithNormalForm> snf(dim + 1);
    for (int k = 1; k <= dim; ++k)
        snf[k] = smith_normal_form(complex.boundary(k));

    HomologySummary summary;
    summary.betti.resize(dim + 1);
    summary.torsion.resize(dim + 1);
    for (int k = 0; k <= dim; ++k) {
        int rank_k = (k >= 1) ? snf[k].rank() : 0;
        int rank_k1 = (k + 1 <= dim) ? snf[k + 1].rank() : 0;
        summary.betti[k] = complex.rank(k) - rank_k - rank_k1;
        if (k + 1 <= dim)
            for (const Int& d : snf[k + 1].invariant_factors)
                if (d > 1)
                    summary.torsion[k].push_back(d);
    }
    return summary;
}

namespace {

/** Incidence sign of a facet inside sigma: (-1)^(omitted pair index). */
int incidence_sign(const Matching& sigma, const Matching& tau)
{
    int i = sigma.omitted_pair_index(tau);
    if (i < 0)
        throw std::logic_error(to_string(tau) + " is not a facet of " + to_string(sigma));
    return (i % 2 == 0) ? 1 : -1;
}

/** Sign-weighted path count as it enters the Morse boundary. */
int path_weight(const GradientPath& path)
{
    int weight = incidence_sign(path.source, path.cells.front());
    for (int i = 0; i < path.length(); ++i) {
        const Matching& sigma = path.cells[2 * i + 1];
        weight *= -incidence_sign(sigma, path.cells[2 * i]) *
                  incidence_sign(sigma, path.cells[2 * i + 2]);
    }
    return weight;
}

}  // namespace

ChainComplex morse_boundary(const GradientVectorField& field)
{
    if (!is_acyclic(field))
        throw std::invalid_argument("morse_boundary requires an acyclic field");
    std::vector<std::vector<Matching>> bases = critical_cells(field);

    std::vector<IntegerMatrix> boundaries(bases.size());
    for (int k = 1; k < static_cast<int>(bases.size()); ++k) {
        IntegerMatrix bd(static_cast<int>(bases[k - 1].size()),
                         static_cast<int>(bases[k].size()));
        for (int c = 0; c < static_cast<int>(bases[k].size()); ++c) {
            for (const GradientPath& path : enumerate_paths(field, bases[k][c])) {
                auto it = std::lower_bound(bases[k - 1].begin(), bases[k - 1].end(),
                                           path.endpoint());
                int r = static_cast<int>(it - bases[k - 1].begin());
                bd(r, c) += path_weight(path);
            }
        }
        boundaries[k] = std::move(bd);
    }
    return ChainComplex(std::move(bases), std::move(boundaries));
}

CriticalVector morse_lower_bounds(const HomologySummary& summary)
{
    const int dim = summary.dimension();
    CriticalVector bounds(dim + 1, 0);
    for (int k = 0; k <= dim; ++k) {
        int t_here = static_cast<int>(summary.torsion[k].size());
        int t_below = (k >= 1) ? static_cast<int>(summary.torsion[k - 1].size()) : 0;
        bounds[k] = summary.betti[k] + t_here + t_below;
    }
    return bounds;
}

std::string homology_report(const HomologySummary& summary)
{
    std::ostringstream out;
    for (int k = 0; k <= summary.dimension(); ++k) {
        out << "H_" << k << " = ";
        std::vector<std::string> parts;
        if (summary.betti[k] == 1)
            parts.push_back("Z");
        else if (summary.betti[k] > 1)
            parts.push_back("Z^" + std::to_string(summary.betti[k]));
        for (const Int& d : summary.torsion[k])
            parts.push_back("Z/" + d.str());
        if (parts.empty())
            out << "0";
        for (std::size_t i = 0; i < parts.size(); ++i)
            out << (i > 0 ? " + " : "") << parts[i];
        out << "\n";
    }
    out << "lower_bounds = " << format_counts(morse_lower_bounds(summary)) << "\n";
    return out.str();
}

}  // namespace morsematch
