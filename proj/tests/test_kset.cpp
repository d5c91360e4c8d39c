#include "doctest.h"

#include "berge/errors.hpp"
#include "berge/kset.hpp"
#include "oracles.hpp"

using namespace berge;

TEST_CASE("construction canonicalizes and rejects repeats") {
    KSet s{7, 1, 4};
    CHECK(format_kset(s) == "1-4-7");
    CHECK(s.is_valid(7, 3));
    CHECK_FALSE(s.is_valid(6, 3));
    CHECK_FALSE(s.is_valid(7, 2));
    CHECK_THROWS_AS(KSet({1, 1, 2}), InvalidArgument);
    CHECK_THROWS_AS(s.validate(6, 3), InvalidArgument);
}

TEST_CASE("parse and format") {
    CHECK(parse_kset("1-4-7") == KSet{1, 4, 7});
    CHECK(parse_kset("7-1-4") == KSet{1, 4, 7});
    CHECK_THROWS_AS(parse_kset("1--4"), ParseError);
    CHECK_THROWS_AS(parse_kset("1-x"), ParseError);
    CHECK_THROWS_AS(parse_kset("3-3"), ParseError);
    CHECK(parse_vertex_list("3-3-1") == std::vector<Vertex>{3, 3, 1});
}

TEST_CASE("order comparators agree with the symmetric-difference definitions") {
    for (int n = 1; n <= 7; ++n)
        for (int k = 0; k <= n; ++k) {
            auto sets = oracle::all_subsets(n, k);
            for (const auto& a : sets)
                for (const auto& b : sets) {
                    KSet ka = KSet::from_sorted(std::vector<Vertex>(a.begin(), a.end()));
                    KSet kb = KSet::from_sorted(std::vector<Vertex>(b.begin(), b.end()));
                    REQUIRE(colex_less(ka, kb) == oracle::colex_before(a, b));
                    REQUIRE(lex_less(ka, kb) == oracle::lex_before(a, b));
                }
        }
}

TEST_CASE("complement and subset") {
    KSet s{2, 5};
    CHECK(complement(s, 6) == KSet{1, 3, 4, 6});
    CHECK(KSet{2, 5}.is_subset_of(KSet{1, 2, 5}));
    CHECK_FALSE(KSet{2, 6}.is_subset_of(KSet{1, 2, 5}));
}
