#include "doctest.h"

#include <random>

#include "berge/errors.hpp"
#include "berge/matching.hpp"
#include "berge/verify.hpp"
#include "oracles.hpp"

using namespace berge;

namespace {

std::vector<std::vector<std::uint32_t>> random_adjacency(std::mt19937_64& rng, std::uint32_t left, std::uint32_t right,
                                                         double p) {
    std::bernoulli_distribution coin(p);
    std::vector<std::vector<std::uint32_t>> adj(left);
    for (auto& row : adj)
        for (std::uint32_t v = 0; v < right; ++v)
            if (coin(rng)) row.push_back(v);
    return adj;
}

// Expands capacities into explicit copies for the brute-force oracle.
std::vector<std::vector<std::uint32_t>> expand(const std::vector<std::vector<std::uint32_t>>& adj,
                                               const std::vector<std::uint32_t>& cap, std::uint32_t& right) {
    std::vector<std::uint32_t> first(cap.size() + 1, 0);
    for (std::size_t v = 0; v < cap.size(); ++v) first[v + 1] = first[v] + cap[v];
    right = first.back();
    std::vector<std::vector<std::uint32_t>> out(adj.size());
    for (std::size_t u = 0; u < adj.size(); ++u)
        for (auto v : adj[u])
            for (std::uint32_t c = first[v]; c < first[v + 1]; ++c) out[u].push_back(c);
    return out;
}

}  // namespace

TEST_CASE("identity graph") {
    std::vector<std::vector<std::uint32_t>> adj{{0}, {1}, {2}, {3}, {4}};
    auto g = BipartiteGraph::from_adjacency(5, adj);
    auto r = hopcroft_karp(g);
    CHECK(r.size == 5);
    CHECK_FALSE(r.violator.has_value());
    for (std::uint32_t u = 0; u < 5; ++u) CHECK(r.left_to_right[u] == u);
    CHECK(verify_matching(g, r).ok);
}

TEST_CASE("two left vertices on one right vertex") {
    auto g = BipartiteGraph::from_adjacency(1, {{0}, {0}});
    CHECK(pothen_fan(g).violator == std::vector<std::uint32_t>{0, 1});
    auto r = hopcroft_karp(g);
    CHECK(r.size == 1);
    REQUIRE(r.violator.has_value());
    CHECK(*r.violator == std::vector<std::uint32_t>{0, 1});
    CHECK(neighbourhood_capacity(g, *r.violator) == 1);
    CHECK(verify_matching(g, r).ok);
    CHECK(hall_certificate_check(g, *r.violator).ok);
}

TEST_CASE("graph construction rejects non-canonical adjacency") {
    CHECK_THROWS_AS(BipartiteGraph::from_adjacency(3, {{1, 0}}), InvalidArgument);
    CHECK_THROWS_AS(BipartiteGraph::from_adjacency(3, {{1, 1}}), InvalidArgument);
    CHECK_THROWS_AS(BipartiteGraph::from_adjacency(3, {{3}}), InvalidArgument);
    CHECK_THROWS_AS(BipartiteGraph::from_adjacency(3, {{0}}, {1, 1}), InvalidArgument);
}

TEST_CASE("matches the brute-force oracle on small random graphs") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 400; ++trial) {
        std::uint32_t left = 1 + rng() % 12, right = 1 + rng() % 12;
        auto adj = random_adjacency(rng, left, right, 0.05 + 0.4 * (trial % 10) / 10.0);
        auto g = BipartiteGraph::from_adjacency(right, adj);
        auto want = static_cast<std::uint64_t>(oracle::max_matching_brute(adj, static_cast<int>(right)));
        for (auto r : {hopcroft_karp(g), pothen_fan(g)}) {
            CHECK(r.size == want);
            CHECK(verify_matching(g, r).ok);
            if (r.violator) CHECK(hall_certificate_check(g, *r.violator).ok);
        }
    }
}

TEST_CASE("capacitated matching equals matching on expanded copies") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        std::uint32_t left = 1 + rng() % 10, right = 1 + rng() % 6;
        std::vector<std::uint32_t> cap(right);
        for (auto& c : cap) c = rng() % 3;
        auto adj = random_adjacency(rng, left, right, 0.35);
        auto g = BipartiteGraph::from_adjacency(right, adj, cap);
        std::uint32_t expanded_right = 0;
        auto ex = expand(adj, cap, expanded_right);
        auto want = static_cast<std::uint64_t>(oracle::max_matching_brute(ex, static_cast<int>(expanded_right)));
        for (auto r : {hopcroft_karp(g), pothen_fan(g)}) {
            CHECK(r.size == want);
            CHECK(verify_matching(g, r).ok);
            if (r.violator) CHECK(hall_certificate_check(g, *r.violator).ok);
        }
    }
}

TEST_CASE("larger random graphs verify and are deterministic") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 5; ++trial) {
        std::uint32_t left = 5000, right = 5000;
        std::vector<std::vector<std::uint32_t>> adj(left);
        for (auto& row : adj) {
            std::set<std::uint32_t> pick;
            int deg = 1 + static_cast<int>(rng() % 4);
            while (static_cast<int>(pick.size()) < deg) pick.insert(static_cast<std::uint32_t>(rng() % right));
            row.assign(pick.begin(), pick.end());
        }
        auto g = BipartiteGraph::from_adjacency(right, adj);
        auto r1 = hopcroft_karp(g);
        auto r2 = hopcroft_karp(g);
        CHECK(r1.left_to_right == r2.left_to_right);
        CHECK(verify_matching(g, r1).ok);
        auto p1 = pothen_fan(g);
        CHECK(p1.left_to_right == pothen_fan(g).left_to_right);
        CHECK(p1.size == r1.size);
        CHECK(verify_matching(g, p1).ok);
    }
}

TEST_CASE("verify_matching catches planted defects") {
    auto g = BipartiteGraph::from_adjacency(3, {{0, 1}, {1}, {2}});
    auto r = hopcroft_karp(g);
    REQUIRE(r.size == 3);
    auto bad = r;
    bad.left_to_right[1] = 0;  // not an edge
    CHECK_FALSE(verify_matching(g, bad).ok);
    auto twice = r;
    twice.left_to_right[0] = twice.left_to_right[1];
    CHECK_FALSE(verify_matching(g, twice).ok);

    auto h = BipartiteGraph::from_adjacency(2, {{0, 1}, {0, 1}, {0}});
    auto rh = hopcroft_karp(h);
    REQUIRE(rh.violator.has_value());
    auto fake = rh;
    fake.violator = std::vector<std::uint32_t>{0, 1};  // |N| = 2, not a violator
    CHECK_FALSE(verify_matching(h, fake).ok);
    CHECK_FALSE(hall_certificate_check(h, std::vector<std::uint32_t>{0, 1}).ok);
    CHECK(hall_certificate_check(h, *rh.violator).ok);
}

TEST_CASE("right_to_left inverts the pair map") {
    auto g = BipartiteGraph::from_adjacency(2, {{0}, {0}, {1}}, {2, 1});
    auto r = hopcroft_karp(g);
    CHECK(r.size == 3);
    auto back = right_to_left(g, r);
    CHECK(back[0] == std::vector<std::uint32_t>{0, 1});
    CHECK(back[1] == std::vector<std::uint32_t>{2});
}
