#include "morsematch/matching.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace morsematch {

VertexPair::VertexPair(int first, int second)
{
    if (first < 1 || second < 1 || first == second)
        throw std::invalid_argument("vertex pair must consist of two distinct ids >= 1");
    if (first > second)
        std::swap(first, second);
    if (second > 255)
        throw std::invalid_argument("vertex id out of range");
    a = static_cast<std::uint8_t>(first);
    b = static_cast<std::uint8_t>(second);
}

std::string to_string(const VertexPair& pair)
{
    return std::to_string(pair.a) + "-" + std::to_string(pair.b);
}

Matching::Matching(std::vector<VertexPair> pairs) : pairs_(std::move(pairs))
{
    std::sort(pairs_.begin(), pairs_.end());
    for (std::size_t i = 0; i + 1 < pairs_.size(); ++i) {
        if (pairs_[i] == pairs_[i + 1])
            throw std::invalid_argument("duplicate pair in matching: " + to_string(pairs_[i]));
        for (std::size_t j = i + 1; j < pairs_.size(); ++j) {
            if (!pairs_[i].disjoint(pairs_[j]))
                throw std::invalid_argument("pairs share a vertex: " + to_string(pairs_[i]) +
                                            " and " + to_string(pairs_[j]));
        }
    }
}

bool Matching::contains(const VertexPair& pair) const
{
    return std::binary_search(pairs_.begin(), pairs_.end(), pair);
}

bool Matching::uses_vertex(int vertex) const
{
    return std::any_of(pairs_.begin(), pairs_.end(),
                       [vertex](const VertexPair& p) { return p.touches(vertex); });
}

int Matching::max_vertex() const
{
    int m = 0;
    for (const VertexPair& p : pairs_)
        m = std::max(m, static_cast<int>(p.b));
    return m;
}

bool Matching::disjoint(const Matching& other) const
{
    for (const VertexPair& p : pairs_)
        for (const VertexPair& q : other.pairs_)
            if (!p.disjoint(q))
                return false;
    return true;
}

Matching Matching::without_pair(int i) const
{
    std::vector<VertexPair> rest = pairs_;
    rest.erase(rest.begin() + i);
    Matching face;
    face.pairs_ = std::move(rest);  // still sorted and disjoint
    return face;
}

Matching Matching::with_pair(const VertexPair& pair) const
{
    for (const VertexPair& p : pairs_)
        if (!p.disjoint(pair))
            throw std::invalid_argument("pair " + to_string(pair) +
                                        " is not disjoint from " + to_string(*this));
    std::vector<VertexPair> pairs = pairs_;
    pairs.insert(std::upper_bound(pairs.begin(), pairs.end(), pair), pair);
    Matching cell;
    cell.pairs_ = std::move(pairs);
    return cell;
}

bool Matching::has_facet(const Matching& face) const
{
    return omitted_pair_index(face) >= 0;
}

int Matching::omitted_pair_index(const Matching& face) const
{
    if (face.size() + 1 != size())
        return -1;
    int omitted = -1;
    std::size_t j = 0;
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
        if (j < face.pairs_.size() && pairs_[i] == face.pairs_[j]) {
            ++j;
        } else if (omitted < 0) {
            omitted = static_cast<int>(i);
        } else {
            return -1;
        }
    }
    return j == face.pairs_.size() ? omitted : -1;
}

std::string to_string(const Matching& cell)
{
    std::string text;
    for (std::size_t i = 0; i < cell.pairs().size(); ++i) {
        if (i > 0)
            text += ',';
        text += to_string(cell.pairs()[i]);
    }
    return text;
}

Matching parse_matching(const std::string& text)
{
    std::vector<VertexPair> pairs;
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        const auto dash = token.find('-');
        if (dash == std::string::npos || dash == 0 || dash + 1 == token.size())
            throw ParseError("malformed pair '" + token + "' in cell '" + text + "'");
        int a = 0, b = 0;
        try {
            std::size_t used_a = 0, used_b = 0;
            a = std::stoi(token.substr(0, dash), &used_a);
            b = std::stoi(token.substr(dash + 1), &used_b);
            if (used_a != dash || used_b != token.size() - dash - 1)
                throw ParseError("trailing characters in pair '" + token + "'");
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception&) {
            throw ParseError("malformed pair '" + token + "' in cell '" + text + "'");
        }
        try {
            pairs.emplace_back(a, b);
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string(e.what()) + " in cell '" + text + "'");
        }
    }
    if (pairs.empty())
        throw ParseError("empty cell text");
    try {
        return Matching(std::move(pairs));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string(e.what()) + " in cell '" + text + "'");
    }
}

std::ostream& operator<<(std::ostream& os, const Matching& cell)
{
    return os << to_string(cell);
}

}  // namespace morsematch
