#include <catch2/catch_amalgamated.hpp>

#include "morsematch/matching.hpp"

using namespace morsematch;

TEST_CASE("vertex pairs normalize and validate")
{
    CHECK(to_string(VertexPair(5, 2)) == "2-5");
    CHECK(VertexPair(1, 2) < VertexPair(1, 3));
    CHECK(VertexPair(1, 7) < VertexPair(2, 3));
    CHECK_THROWS_AS(VertexPair(3, 3), std::invalid_argument);
    CHECK_THROWS_AS(VertexPair(0, 1), std::invalid_argument);
}

TEST_CASE("matchings canonicalize their pairs")
{
    Matching m({VertexPair(4, 7), VertexPair(2, 5), VertexPair(3, 6)});
    CHECK(to_string(m) == "2-5,3-6,4-7");
    CHECK(m.dimension() == 2);
    CHECK(m.contains(VertexPair(3, 6)));
    CHECK_FALSE(m.contains(VertexPair(2, 6)));
}

TEST_CASE("vertex collisions are rejected")
{
    CHECK_THROWS_AS(Matching({VertexPair(1, 2), VertexPair(2, 3)}), std::invalid_argument);
    CHECK_THROWS_AS(Matching({VertexPair(1, 2), VertexPair(1, 2)}), std::invalid_argument);
}

TEST_CASE("facet relation by omitted pair")
{
    Matching sigma = parse_matching("1-5,2-6,4-7");
    CHECK(sigma.omitted_pair_index(parse_matching("2-6,4-7")) == 0);
    CHECK(sigma.omitted_pair_index(parse_matching("1-5,4-7")) == 1);
    CHECK(sigma.omitted_pair_index(parse_matching("1-5,2-6")) == 2);
    CHECK(sigma.omitted_pair_index(parse_matching("1-5")) == -1);
    CHECK(sigma.omitted_pair_index(parse_matching("1-5,2-7")) == -1);
    CHECK(sigma.has_facet(parse_matching("1-5,2-6")));
    CHECK_FALSE(sigma.has_facet(parse_matching("1-2,3-4")));
}

TEST_CASE("parsing round-trips the canonical text form")
{
    for (const char* text : {"1-2", "1-5,2-6,4-7", "1-2,3-4,5-6"}) {
        CHECK(to_string(parse_matching(text)) == text);
    }
    CHECK(to_string(parse_matching("4-7,2-5,3-6")) == "2-5,3-6,4-7");
    CHECK(to_string(parse_matching("7-4")) == "4-7");
}

TEST_CASE("parse errors name the problem")
{
    CHECK_THROWS_AS(parse_matching(""), ParseError);
    CHECK_THROWS_AS(parse_matching("12"), ParseError);
    CHECK_THROWS_AS(parse_matching("1-"), ParseError);
    CHECK_THROWS_AS(parse_matching("a-b"), ParseError);
    CHECK_THROWS_AS(parse_matching("1-2,2-3"), ParseError);
    CHECK_THROWS_AS(parse_matching("1-2x"), ParseError);
    CHECK_THROWS_AS(parse_matching("3-3"), ParseError);
}

TEST_CASE("matchings order lexicographically")
{
    Matching a = parse_matching("1-2,4-5");
    Matching b = parse_matching("1-2,4-6");
    Matching c = parse_matching("1-3,4-5");
    CHECK(a < b);
    CHECK(b < c);
    CHECK(parse_matching("1-2") < a);
}
