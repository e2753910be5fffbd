#include "morsematch/gradient.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

namespace morsematch {

GradientVectorField::GradientVectorField(const SimplicialComplex& cplx) : cplx_(&cplx)
{
    up_.resize(cplx.dimension() + 1);
    down_.resize(cplx.dimension() + 1);
    for (int d = 0; d <= cplx.dimension(); ++d) {
        up_[d].assign(cplx.cell_count(d), -1);
        down_[d].assign(cplx.cell_count(d), -1);
    }
}

bool GradientVectorField::is_critical(const CellRef& ref) const
{
    return up_partner(ref) < 0 && down_partner(ref) < 0;
}

int GradientVectorField::pair_count(int dim) const
{
    if (dim < 0 || dim >= static_cast<int>(up_.size()))
        return 0;
    return static_cast<int>(std::count_if(up_[dim].begin(), up_[dim].end(),
                                          [](int partner) { return partner >= 0; }));
}

int GradientVectorField::total_pairs() const
{
    int total = 0;
    for (int d = 0; d < static_cast<int>(up_.size()); ++d)
        total += pair_count(d);
    return total;
}

std::vector<std::pair<Matching, Matching>> GradientVectorField::pairs() const
{
    std::vector<std::pair<Matching, Matching>> result;
    for (int d = 0; d < static_cast<int>(up_.size()); ++d) {
        for (std::size_t i = 0; i < up_[d].size(); ++i) {
            if (up_[d][i] >= 0)
                result.emplace_back(cplx_->cells(d)[i], cplx_->cells(d + 1)[up_[d][i]]);
        }
    }
    return result;
}

std::uint64_t GradientVectorField::fingerprint() const
{
    std::uint64_t hash = 14695981039346656037ull;
    auto mix = [&hash](const std::string& text) {
        for (unsigned char c : text) {
            hash ^= c;
            hash *= 1099511628211ull;
        }
    };
    mix("n=" + std::to_string(cplx_->order()) + ";");
    for (const auto& [tau, sigma] : pairs())
        mix(to_string(tau) + "=>" + to_string(sigma) + ";");
    return hash;
}

void GradientVectorField::set_pair_unchecked(const CellRef& tau, const CellRef& sigma)
{
    up_[tau.dim][tau.index] = sigma.index;
    down_[sigma.dim][sigma.index] = tau.index;
}

GradientVectorField empty_field(const SimplicialComplex& cplx)
{
    return GradientVectorField(cplx);
}

GradientVectorField add_pair(const GradientVectorField& field, const Matching& tau,
                             const Matching& sigma)
{
    const SimplicialComplex& cplx = field.complex();
    CellRef tref = cplx.require(tau);
    CellRef sref = cplx.require(sigma);
    if (sref.dim != tref.dim + 1 || !sigma.has_facet(tau))
        throw PairingError(to_string(tau) + " is not a facet of " + to_string(sigma));
    if (!field.is_critical(tref))
        throw PairingError("cell " + to_string(tau) + " is already paired");
    if (!field.is_critical(sref))
        throw PairingError("cell " + to_string(sigma) + " is already paired");
    GradientVectorField next = field;
    next.set_pair_unchecked(tref, sref);
    return next;
}

namespace {

/**
 * The layer digraph between dimensions p and p+1, reduced to p-cells:
 * tau -> tau' whenever tau is paired with some sigma and tau' is another
 * facet of sigma.  A closed V-path exists iff this digraph has a cycle.
 */
std::vector<std::vector<int>> reduced_layer_digraph(const GradientVectorField& field, int p)
{
    const SimplicialComplex& cplx = field.complex();
    std::vector<std::vector<int>> arcs(cplx.cell_count(p));
    for (int i = 0; i < cplx.cell_count(p); ++i) {
        CellRef tau{p, i};
        int s = field.up_partner(tau);
        if (s < 0)
            continue;
        for (int j : cplx.facet_indices(CellRef{p + 1, s}))
            if (j != i)
                arcs[i].push_back(j);
    }
    return arcs;
}

bool digraph_has_cycle(const std::vector<std::vector<int>>& arcs)
{
    enum { White, Grey, Black };
    std::vector<char> colour(arcs.size(), White);
    std::vector<std::pair<int, std::size_t>> stack;
    for (int start = 0; start < static_cast<int>(arcs.size()); ++start) {
        if (colour[start] != White)
            continue;
        colour[start] = Grey;
        stack.push_back({start, 0});
        while (!stack.empty()) {
            auto& [node, next] = stack.back();
            if (next < arcs[node].size()) {
                int succ = arcs[node][next++];
                if (colour[succ] == Grey)
                    return true;
                if (colour[succ] == White) {
                    colour[succ] = Grey;
                    stack.push_back({succ, 0});
                }
            } else {
                colour[node] = Black;
                stack.pop_back();
            }
        }
    }
    return false;
}

}  // namespace

bool is_acyclic(const GradientVectorField& field)
{
    for (int p = 0; p < field.complex().dimension(); ++p)
        if (digraph_has_cycle(reduced_layer_digraph(field, p)))
            return false;
    return true;
}

bool can_pair_acyclically(const GradientVectorField& field, const CellRef& tau,
                          const CellRef& sigma)
{
    // All arcs a new pair contributes leave tau, so a new cycle must run
    // tau -> (other facet of sigma) -> ... -> tau inside the old digraph.
    const SimplicialComplex& cplx = field.complex();
    const int p = tau.dim;
    std::vector<int> frontier;
    for (int j : cplx.facet_indices(sigma))
        if (j != tau.index)
            frontier.push_back(j);

    std::vector<char> seen(cplx.cell_count(p), 0);
    while (!frontier.empty()) {
        int i = frontier.back();
        frontier.pop_back();
        if (i == tau.index)
            return false;
        if (seen[i])
            continue;
        seen[i] = 1;
        int s = field.up_partner(CellRef{p, i});
        if (s < 0)
            continue;
        for (int j : cplx.facet_indices(CellRef{p + 1, s}))
            if (j != i)
                frontier.push_back(j);
    }
    return true;
}

std::vector<std::vector<Matching>> critical_cells(const GradientVectorField& field)
{
    const SimplicialComplex& cplx = field.complex();
    std::vector<std::vector<Matching>> result(cplx.dimension() + 1);
    for (int d = 0; d <= cplx.dimension(); ++d)
        for (int i = 0; i < cplx.cell_count(d); ++i)
            if (field.is_critical(CellRef{d, i}))
                result[d].push_back(cplx.cells(d)[i]);
    return result;
}

CriticalVector critical_vector(const GradientVectorField& field)
{
    const SimplicialComplex& cplx = field.complex();
    CriticalVector counts(cplx.dimension() + 1, 0);
    for (int d = 0; d <= cplx.dimension(); ++d)
        for (int i = 0; i < cplx.cell_count(d); ++i)
            if (field.is_critical(CellRef{d, i}))
                ++counts[d];
    return counts;
}

std::vector<GradientPath> enumerate_paths(const GradientVectorField& field,
                                          const Matching& source)
{
    const SimplicialComplex& cplx = field.complex();
    CellRef src = cplx.require(source);
    if (!field.is_critical(src))
        throw std::invalid_argument("path source " + to_string(source) + " is not critical");

    std::vector<GradientPath> paths;
    if (src.dim == 0)
        return paths;
    const int p = src.dim - 1;

    std::vector<int> trail;  // indices of p-cells on the current path
    std::function<void(int)> walk = [&](int i) {
        if (std::find(trail.begin(), trail.end(), i) != trail.end())
            throw std::logic_error("closed V-path encountered; field is not acyclic");
        trail.push_back(i);
        CellRef tau{p, i};
        if (field.is_critical(tau)) {
            GradientPath path;
            path.source = source;
            for (std::size_t k = 0; k + 1 < trail.size(); ++k) {
                path.cells.push_back(cplx.cells(p)[trail[k]]);
                path.cells.push_back(
                    cplx.cells(p + 1)[field.up_partner(CellRef{p, trail[k]})]);
            }
            path.cells.push_back(cplx.cells(p)[trail.back()]);
            paths.push_back(std::move(path));
        } else if (int s = field.up_partner(tau); s >= 0) {
            for (int j : cplx.facet_indices(CellRef{p + 1, s}))
                if (j != i)
                    walk(j);
        }
        // A cell paired downward ends the walk without emitting a path.
        trail.pop_back();
    };

    for (int i : cplx.facet_indices(src))
        walk(i);
    return paths;
}

std::map<Matching, int> path_endpoints(const GradientVectorField& field, const Matching& source)
{
    std::map<Matching, int> histogram;
    for (const GradientPath& path : enumerate_paths(field, source))
        ++histogram[path.endpoint()];
    return histogram;
}

void write_gvf(std::ostream& os, const GradientVectorField& field)
{
    os << "gvf complex=" << field.complex().order() << "\n";
    for (const auto& [tau, sigma] : field.pairs())
        os << to_string(tau) << " => " << to_string(sigma) << "\n";
}

void write_gvf_file(const std::string& path, const GradientVectorField& field)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path + " for writing");
    write_gvf(out, field);
    if (!out.flush())
        throw std::runtime_error("failed writing " + path);
}

GradientVectorField read_gvf(std::istream& is, const SimplicialComplex& cplx)
{
    std::string header;
    if (!std::getline(is, header))
        throw ParseError("missing gvf header line");
    const std::string prefix = "gvf complex=";
    if (header.rfind(prefix, 0) != 0)
        throw ParseError("bad gvf header line: '" + header + "'");
    if (header.substr(prefix.size()) != std::to_string(cplx.order()))
        throw ParseError("gvf header order does not match the complex");

    GradientVectorField field(cplx);
    std::string line;
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty())
            continue;
        const std::string arrow = " => ";
        auto pos = line.find(arrow);
        if (pos == std::string::npos)
            throw ParseError("line " + std::to_string(lineno) + ": expected '<tau> => <sigma>'");
        try {
            Matching tau = parse_matching(line.substr(0, pos));
            Matching sigma = parse_matching(line.substr(pos + arrow.size()));
            field = add_pair(field, tau, sigma);
        } catch (const std::exception& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return field;
}

GradientVectorField read_gvf_file(const std::string& path, const SimplicialComplex& cplx)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    return read_gvf(in, cplx);
}

}  // namespace morsematch
