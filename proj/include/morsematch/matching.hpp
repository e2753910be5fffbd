/**
 * Vertex pairs and matchings of the complete graph K_n.
 *
 * A matching is the basic cell type throughout this library: a p-cell of
 * the matching complex M_n is a set of p+1 pairwise disjoint edges of K_n,
 * kept here in a canonical sorted form so that every container of cells
 * has one deterministic order.
 */

#ifndef MORSEMATCH_MATCHING_HPP
#define MORSEMATCH_MATCHING_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace morsematch {

/** Error thrown when a textual cell or file cannot be parsed. */
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/**
 * An edge a-b of the complete graph, stored with a < b and 1-based
 * vertex ids.
 */
struct VertexPair {
    std::uint8_t a = 0;
    std::uint8_t b = 0;

    VertexPair() = default;

    /** @throws std::invalid_argument unless 1 <= a < b. */
    VertexPair(int first, int second);

    bool touches(int vertex) const { return a == vertex || b == vertex; }
    bool disjoint(const VertexPair& other) const
    {
        return a != other.a && a != other.b && b != other.a && b != other.b;
    }

    auto operator<=>(const VertexPair&) const = default;
};

/** Text form "a-b". */
std::string to_string(const VertexPair& pair);

/**
 * A matching: a sorted, duplicate-free list of pairwise disjoint vertex
 * pairs.  As a cell of the matching complex its dimension is the number
 * of pairs minus one; the empty matching (dimension -1) is a valid value
 * but never a stored cell.
 */
class Matching {
  public:
    Matching() = default;

    /**
     * Canonicalize and validate a list of pairs.
     *
     * @param pairs Pairs in any order.
     * @throws std::invalid_argument if two pairs share a vertex or a
     *         pair is duplicated.
     */
    explicit Matching(std::vector<VertexPair> pairs);

    int size() const { return static_cast<int>(pairs_.size()); }
    int dimension() const { return size() - 1; }
    bool empty() const { return pairs_.empty(); }

    const std::vector<VertexPair>& pairs() const { return pairs_; }
    const VertexPair& pair(int i) const { return pairs_.at(i); }

    bool contains(const VertexPair& pair) const;
    bool uses_vertex(int vertex) const;
    int max_vertex() const;

    /** True if no vertex occurs in both matchings. */
    bool disjoint(const Matching& other) const;

    /** The matching with the i-th pair (canonical order) removed. */
    Matching without_pair(int i) const;

    /** The matching with one more pair; the pair must be disjoint. */
    Matching with_pair(const VertexPair& pair) const;

    /**
     * True if `face` is this matching with exactly one pair removed,
     * i.e. a codimension-1 face.
     */
    bool has_facet(const Matching& face) const;

    /** Index of the pair of this matching missing from `face`, or -1. */
    int omitted_pair_index(const Matching& face) const;

    auto operator<=>(const Matching&) const = default;

  private:
    std::vector<VertexPair> pairs_;
};

/** Canonical text form "a-b,c-d,...". */
std::string to_string(const Matching& cell);

/**
 * Parse the canonical cell syntax "a-b,c-d".  Pairs may be listed in any
 * order; the result is canonical.
 *
 * @throws ParseError on malformed text or a vertex collision.
 */
Matching parse_matching(const std::string& text);

std::ostream& operator<<(std::ostream& os, const Matching& cell);

}  // namespace morsematch

#endif
