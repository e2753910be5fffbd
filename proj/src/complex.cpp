#include "morsematch/complex.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

namespace morsematch {

namespace {

const std::vector<Matching> kNoCells;

int index_of(const std::vector<Matching>& sorted_cells, const Matching& cell)
{
    auto it = std::lower_bound(sorted_cells.begin(), sorted_cells.end(), cell);
    if (it == sorted_cells.end() || *it != cell)
        return -1;
    return static_cast<int>(it - sorted_cells.begin());
}

}  // namespace

SimplicialComplex::SimplicialComplex(int n, const std::vector<Matching>& cells) : n_(n)
{
    if (n < 2)
        throw std::invalid_argument("graph order must be at least 2");

    // Close downward; a std::set both deduplicates and sorts.
    std::set<Matching> closed;
    std::vector<Matching> queue = cells;
    for (const Matching& cell : cells) {
        if (cell.empty())
            throw std::invalid_argument("the empty matching is not a cell");
        if (cell.max_vertex() > n)
            throw std::invalid_argument("cell " + to_string(cell) + " uses a vertex > " +
                                        std::to_string(n));
    }
    while (!queue.empty()) {
        Matching cell = std::move(queue.back());
        queue.pop_back();
        if (!closed.insert(cell).second)
            continue;
        for (int i = 0; i < cell.size() && cell.dimension() > 0; ++i)
            queue.push_back(cell.without_pair(i));
    }

    int dim = -1;
    for (const Matching& cell : closed)
        dim = std::max(dim, cell.dimension());
    cells_.resize(dim + 1);
    for (const Matching& cell : closed)
        cells_[cell.dimension()].push_back(cell);  // set order is canonical

    facets_.resize(cells_.size());
    cofacets_.resize(cells_.size());
    for (int d = 0; d <= dim; ++d) {
        facets_[d].resize(cells_[d].size());
        cofacets_[d].resize(cells_[d].size());
    }
    for (int d = 1; d <= dim; ++d) {
        for (std::size_t i = 0; i < cells_[d].size(); ++i) {
            const Matching& cell = cells_[d][i];
            for (int k = 0; k < cell.size(); ++k) {
                int j = index_of(cells_[d - 1], cell.without_pair(k));
                facets_[d][i].push_back(j);
                cofacets_[d - 1][j].push_back(static_cast<int>(i));
            }
            std::sort(facets_[d][i].begin(), facets_[d][i].end());
        }
    }
    // Cofacet lists come out sorted because cells are visited in order.
}

int SimplicialComplex::cell_count(int dim) const
{
    if (dim < 0 || dim >= static_cast<int>(cells_.size()))
        return 0;
    return static_cast<int>(cells_[dim].size());
}

int SimplicialComplex::total_cells() const
{
    int total = 0;
    for (const auto& layer : cells_)
        total += static_cast<int>(layer.size());
    return total;
}

const std::vector<Matching>& SimplicialComplex::cells(int dim) const
{
    if (dim < 0 || dim >= static_cast<int>(cells_.size()))
        return kNoCells;
    return cells_[dim];
}

CellRef SimplicialComplex::find(const Matching& cell) const
{
    CellRef ref;
    ref.dim = cell.dimension();
    if (ref.dim < 0 || ref.dim >= static_cast<int>(cells_.size()))
        return ref;
    ref.index = index_of(cells_[ref.dim], cell);
    return ref;
}

CellRef SimplicialComplex::require(const Matching& cell) const
{
    CellRef ref = find(cell);
    if (ref.index < 0)
        throw CellNotFoundError("cell " + to_string(cell) + " is not in the complex");
    return ref;
}

const std::vector<int>& SimplicialComplex::facet_indices(const CellRef& ref) const
{
    return facets_.at(ref.dim).at(ref.index);
}

const std::vector<int>& SimplicialComplex::cofacet_indices(const CellRef& ref) const
{
    return cofacets_.at(ref.dim).at(ref.index);
}

std::vector<int> SimplicialComplex::f_vector() const
{
    std::vector<int> f;
    for (const auto& layer : cells_)
        f.push_back(static_cast<int>(layer.size()));
    return f;
}

SimplicialComplex build_matching_complex(int n)
{
    if (n < 2 || n > 12)
        throw std::out_of_range("graph order must be between 2 and 12, got " + std::to_string(n));

    std::vector<VertexPair> edges;
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
            edges.emplace_back(a, b);

    // Grow matchings by appending lexicographically larger disjoint pairs;
    // each matching is produced exactly once, in canonical order.
    std::vector<Matching> all;
    std::vector<Matching> level;
    for (const VertexPair& e : edges)
        level.push_back(Matching({e}));
    while (!level.empty()) {
        all.insert(all.end(), level.begin(), level.end());
        std::vector<Matching> next;
        for (const Matching& m : level) {
            for (const VertexPair& e : edges) {
                if (e <= m.pairs().back())
                    continue;
                bool ok = true;
                for (const VertexPair& p : m.pairs())
                    if (!p.disjoint(e)) {
                        ok = false;
                        break;
                    }
                if (ok)
                    next.push_back(m.with_pair(e));
            }
        }
        level = std::move(next);
    }
    return SimplicialComplex(n, all);
}

std::vector<Matching> facets(const SimplicialComplex& cplx, const Matching& cell)
{
    CellRef ref = cplx.require(cell);
    std::vector<Matching> result;
    if (ref.dim == 0)
        return result;
    for (int j : cplx.facet_indices(ref))
        result.push_back(cplx.cells(ref.dim - 1)[j]);
    return result;
}

std::vector<Matching> cofacets(const SimplicialComplex& cplx, const Matching& cell)
{
    CellRef ref = cplx.require(cell);
    std::vector<Matching> result;
    for (int j : cplx.cofacet_indices(ref))
        result.push_back(cplx.cells(ref.dim + 1)[j]);
    return result;
}

long long euler_characteristic(const SimplicialComplex& cplx)
{
    long long chi = 0;
    int sign = 1;
    for (int count : cplx.f_vector()) {
        chi += sign * static_cast<long long>(count);
        sign = -sign;
    }
    return chi;
}

std::string format_counts(const std::vector<int>& counts)
{
    std::string text = "(";
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (i > 0)
            text += ", ";
        text += std::to_string(counts[i]);
    }
    return text + ")";
}

void write_complex(std::ostream& os, const SimplicialComplex& cplx)
{
    os << "matching-complex n=" << cplx.order() << "\n";
    // A cell is implied by any stored cofacet, so only maximal cells are
    // written out.
    for (int d = cplx.dimension(); d >= 0; --d) {
        for (std::size_t i = 0; i < cplx.cells(d).size(); ++i) {
            CellRef ref{d, static_cast<int>(i)};
            if (cplx.cofacet_indices(ref).empty())
                os << to_string(cplx.cell(ref)) << "\n";
        }
    }
}

void write_complex_file(const std::string& path, const SimplicialComplex& cplx)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path + " for writing");
    write_complex(out, cplx);
    if (!out.flush())
        throw std::runtime_error("failed writing " + path);
}

SimplicialComplex read_complex(std::istream& is)
{
    std::string header;
    if (!std::getline(is, header))
        throw ParseError("missing header line");
    const std::string prefix = "matching-complex n=";
    if (header.rfind(prefix, 0) != 0)
        throw ParseError("bad header line: '" + header + "'");
    int n = 0;
    try {
        std::size_t used = 0;
        n = std::stoi(header.substr(prefix.size()), &used);
        if (used != header.size() - prefix.size())
            throw ParseError("bad header line: '" + header + "'");
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("bad header line: '" + header + "'");
    }

    std::vector<Matching> cells;
    std::string line;
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty())
            continue;
        try {
            cells.push_back(parse_matching(line));
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    try {
        return SimplicialComplex(n, cells);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

SimplicialComplex read_complex_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    return read_complex(in);
}

}  // namespace morsematch
