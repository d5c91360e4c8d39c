#include "doctest.h"

#include <random>
#include <sstream>

#include "berge/construct.hpp"
#include "berge/errors.hpp"
#include "berge/verify.hpp"

using namespace berge;

namespace {

Decomposition build(int n, int k) {
    DecomposeOptions o;
    o.force_range = true;
    return decompose(n, k, std::nullopt, 0, o);
}

std::string serialize(const Decomposition& d) {
    std::ostringstream out;
    write_hbd(out, d);
    return out.str();
}

HbdFile parse(const std::string& text) {
    std::istringstream in(text);
    return read_hbd(in);
}

}  // namespace

TEST_CASE("berge cycle checks") {
    auto d = single_cycle_n_minus_1(5);
    BergeCycle c = d.cycles[0];
    CHECK(verify_berge_cycle(c, 5, 4).ok);

    BergeCycle dup = c;
    dup.edges[1] = dup.edges[0];
    auto r = verify_berge_cycle(dup, 5, 4);
    CHECK_FALSE(r.ok);
    CHECK(r.message.find("duplicate edge at positions (1,2)") != std::string::npos);

    // Swapping e_1 and e_2 leaves e_2 = {1,2,4,5}, which misses v_3.
    BergeCycle miss = c;
    std::swap(miss.edges[0], miss.edges[1]);
    auto m = verify_berge_cycle(miss, 5, 4);
    CHECK_FALSE(m.ok);
    CHECK(m.message.find("containment at i=2") != std::string::npos);

    BergeCycle rep = c;
    rep.vertices[4] = 1;
    CHECK_FALSE(verify_berge_cycle(rep, 5, 4).ok);
    BergeCycle shortc = c;
    shortc.edges.pop_back();
    CHECK_FALSE(verify_berge_cycle(shortc, 5, 4).ok);
}

TEST_CASE("HBD round trip of constructor output") {
    auto d = build(9, 7);
    std::string text = serialize(d);
    CHECK(text.rfind("HBD v1\nn=9 k=7 msize=0 cycles=4 seed=0 case=3b\nC 1 ", 0) == 0);
    auto f = parse(text);
    CHECK(verify_hbd(f).ok);
    CHECK(f.cycles.size() == 4);

    auto e = build(10, 8);
    std::string t2 = serialize(e);
    CHECK(t2.find("\nM 1-2-3-4-5-6-7-8 ") != std::string::npos);
    CHECK(verify_hbd(parse(t2)).ok);
}

TEST_CASE("order of cycles does not matter") {
    auto f = parse(serialize(build(9, 7)));
    std::swap(f.cycles[0], f.cycles[3]);
    CHECK(verify_hbd(f).ok);
}

TEST_CASE("coverage and header mismatches fail") {
    auto d = build(10, 8);
    auto f = parse(serialize(d));
    auto g = f;
    g.cycles[0].edges[0] = g.M[0];  // an M member reused
    auto r = verify_hbd(g);
    CHECK_FALSE(r.ok);

    auto h = f;
    h.cycles.pop_back();
    CHECK_FALSE(verify_hbd(h).ok);
    h = f;
    h.cycle_count += 1;
    CHECK_FALSE(verify_hbd(h).ok);
    h = f;
    h.case_marker = "1";
    CHECK_FALSE(verify_hbd(h).ok);
    h = f;
    h.msize -= 1;
    CHECK_FALSE(verify_hbd(h).ok);
    h = f;
    std::swap(h.M[0], h.M[1]);
    CHECK_FALSE(verify_hbd(h).ok);
    h = f;
    h.M[0] = KSet::from_sorted({2, 1, 3, 4, 5, 6, 7, 8});
    CHECK_FALSE(verify_hbd(h).ok);
}

TEST_CASE("coverage mismatch is reported as such") {
    auto d = build(9, 7);
    auto f = parse(serialize(d));
    // Replace an edge by a set that is already used elsewhere but still
    // contains its two cycle vertices.
    const auto& c0 = f.cycles[0];
    Vertex a = c0.vertices[0], b = c0.vertices[1];
    for (std::size_t ci = 1; ci < f.cycles.size(); ++ci)
        for (const auto& e : f.cycles[ci].edges)
            if (e.contains(a) && e.contains(b)) {
                auto g = f;
                g.cycles[0].edges[0] = e;
                auto r = verify_hbd(g);
                CHECK_FALSE(r.ok);
                CHECK(r.message.find("coverage mismatch") != std::string::npos);
                return;
            }
    FAIL("no substitute edge found");
}

TEST_CASE("k = 3 perfect matching rule") {
    auto d = build(9, 3);
    REQUIRE(d.M.size() == 3);
    auto f = parse(serialize(d));
    CHECK(verify_hbd(f).ok);
    // Replace M by three sets that are not disjoint: the coverage also breaks,
    // but the matching rule is checked first.
    auto g = f;
    g.M = {KSet{1, 2, 3}, KSet{1, 2, 4}, KSet{1, 2, 5}};
    auto r = verify_hbd(g);
    CHECK_FALSE(r.ok);
    CHECK(r.message.find("perfect matching") != std::string::npos);
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("HBD v2\n"), ParseError);
    CHECK_THROWS_AS(parse("HBD v1\nn=5 k=4\n"), ParseError);
    CHECK_THROWS_AS(parse("HBD v1\nn=5 k=4 msize=0 cycles=1 seed=0 case=9\n"), ParseError);
    CHECK_THROWS_AS(parse("HBD v1\nn=5 k=4 msize=0 cycles=1 seed=0 case=3a\nC 1 1-2-3-4 2\n"), ParseError);
    CHECK_THROWS_AS(parse("HBD v1\nn=5 k=4 msize=0 cycles=1 seed=0 case=3a\nC 1 1-x-3-4\n"), ParseError);
    CHECK_THROWS_AS(parse("HBD v1\nn=5 k=4 msize=0 cycles=1 seed=0 case=3a\nQ\n"), ParseError);
    try {
        parse("HBD v1\nn=5 k=4 msize=0 cycles=1 seed=0 case=3a\nC 1 1-2-3-4\nC 1 a\n");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
    }
    // Non-canonical sets parse; the verifier rejects them.
    auto f = parse("HBD v1\nn=5 k=4 msize=0 cycles=1 seed=0 case=3a\nC 1 2-1-4-5 2 1-2-3-5 3 1-2-3-4 4 2-3-4-5 5 1-3-4-5\n");
    CHECK_FALSE(verify_hbd(f).ok);
}

TEST_CASE("random single-field mutations are rejected") {
    auto d = build(12, 5);
    auto base = parse(serialize(d));
    REQUIRE(verify_hbd(base).ok);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) {
        auto f = base;
        auto& c = f.cycles[rng() % f.cycles.size()];
        std::size_t i = rng() % c.vertices.size();
        switch (rng() % 4) {
            case 0: c.vertices[i] = static_cast<Vertex>(c.vertices[i] % 12 + 1); break;
            case 1: c.edges[i] = c.edges[(i + 1) % c.edges.size()]; break;
            case 2: f.cycles.erase(f.cycles.begin()); break;
            default: {
                std::vector<Vertex> e(c.edges[i].elements().begin(), c.edges[i].elements().end());
                e[rng() % e.size()] = static_cast<Vertex>(1 + rng() % 12);
                c.edges[i] = KSet::from_sorted(e);
                if (c.edges[i] == base.cycles[&c - f.cycles.data()].edges[i]) c.edges[i] = KSet{1};
            }
        }
        CHECK(!verify_hbd(f).ok);
    }
}
