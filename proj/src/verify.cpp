#include "berge/verify.hpp"

#include <algorithm>

#include "berge/combinatorics.hpp"

namespace berge {

namespace {

// Kept separate from the constructor's dispatch on purpose.
std::string expected_marker(int n, int k) {
    if (k == n - 1) return "3a";
    if (k == n - 2) return "3b";
    if (k == 3) return "2";
    return "1";
}

std::string pos(std::size_t i) { return std::to_string(i + 1); }

}  // namespace

CheckResult verify_berge_cycle(const BergeCycle& c, int n, int k) {
    const auto nn = static_cast<std::size_t>(n);
    if (c.vertices.size() != nn)
        return CheckResult::fail("cycle has " + std::to_string(c.vertices.size()) + " vertices, expected " +
                                 std::to_string(n));
    if (c.edges.size() != nn)
        return CheckResult::fail("cycle has " + std::to_string(c.edges.size()) + " edges, expected " +
                                 std::to_string(n));
    std::vector<char> seen(nn + 1, 0);
    for (std::size_t i = 0; i < nn; ++i) {
        Vertex v = c.vertices[i];
        if (v < 1 || v > static_cast<Vertex>(n))
            return CheckResult::fail("vertex " + std::to_string(v) + " at position " + pos(i) + " out of range");
        if (seen[v]++) return CheckResult::fail("vertex " + std::to_string(v) + " repeated");
    }
    BinomialTable table(n, k);
    std::vector<std::pair<std::uint64_t, std::size_t>> ranks;
    ranks.reserve(nn);
    for (std::size_t i = 0; i < nn; ++i) {
        if (!c.edges[i].is_valid(n, k))
            return CheckResult::fail("edge " + pos(i) + " (" + format_kset(c.edges[i]) + ") is not a " +
                                     std::to_string(k) + "-subset of [" + std::to_string(n) + "] in canonical form");
        ranks.emplace_back(colex_rank(c.edges[i].elements(), table), i);
    }
    std::sort(ranks.begin(), ranks.end());
    for (std::size_t i = 1; i < ranks.size(); ++i)
        if (ranks[i].first == ranks[i - 1].first) {
            auto [a, b] = std::minmax(ranks[i - 1].second, ranks[i].second);
            return CheckResult::fail("duplicate edge at positions (" + pos(a) + "," + pos(b) + ")");
        }
    for (std::size_t i = 0; i < nn; ++i) {
        Vertex a = c.vertices[i], b = c.vertices[(i + 1) % nn];
        if (!c.edges[i].contains(a) || !c.edges[i].contains(b))
            return CheckResult::fail("containment at i=" + pos(i) + ": {" + std::to_string(a) + "," +
                                     std::to_string(b) + "} not in " + format_kset(c.edges[i]));
    }
    return CheckResult::pass();
}

CheckResult verify_hbd(const HbdFile& f) {
    const int n = f.n, k = f.k;
    if (k < 3 || k >= n) return CheckResult::fail("need 3 <= k < n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
    if (f.case_marker != expected_marker(n, k))
        return CheckResult::fail("case marker " + f.case_marker + " does not fit n=" + std::to_string(n) +
                                 " k=" + std::to_string(k) + " (expected " + expected_marker(n, k) + ")");

    if (f.M.size() != f.msize)
        return CheckResult::fail("header says msize=" + std::to_string(f.msize) + " but M has " +
                                 std::to_string(f.M.size()) + " sets");
    if (f.M.size() >= static_cast<std::size_t>(n)) return CheckResult::fail("|M| must be below n");
    BinomialTable table(n, k);
    std::vector<std::uint64_t> m_ranks;
    for (std::size_t i = 0; i < f.M.size(); ++i) {
        if (!f.M[i].is_valid(n, k)) return CheckResult::fail("M set " + format_kset(f.M[i]) + " is not valid");
        m_ranks.push_back(colex_rank(f.M[i].elements(), table));
        if (i > 0 && m_ranks[i - 1] >= m_ranks[i])
            return CheckResult::fail(m_ranks[i - 1] == m_ranks[i] ? "M has a repeated set " + format_kset(f.M[i])
                                                                  : "M is not in colex order");
    }
    if (f.case_marker == "2" && !f.M.empty()) {
        if (f.M.size() * 3 != static_cast<std::size_t>(n)) return CheckResult::fail("M is not a perfect matching");
        std::vector<char> hit(static_cast<std::size_t>(n) + 1, 0);
        for (const auto& s : f.M)
            for (Vertex v : s.elements())
                if (hit[v]++) return CheckResult::fail("M is not a perfect matching (vertex " + std::to_string(v) + ")");
    }

    BigInt total = binom_big(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));
    BigInt rest = total - f.M.size();
    if (rest % n != 0)
        return CheckResult::fail("n does not divide C(n,k) - |M|");
    BigInt expected_cycles = rest / n;
    if (expected_cycles != f.cycle_count)
        return CheckResult::fail("header says cycles=" + std::to_string(f.cycle_count) + ", expected " +
                                 expected_cycles.str());
    if (f.cycles.size() != f.cycle_count)
        return CheckResult::fail("header says cycles=" + std::to_string(f.cycle_count) + " but file has " +
                                 std::to_string(f.cycles.size()));

    std::vector<std::uint64_t> ranks = m_ranks;
    ranks.reserve(static_cast<std::size_t>(total));
    for (std::size_t i = 0; i < f.cycles.size(); ++i) {
        if (auto r = verify_berge_cycle(f.cycles[i], n, k); !r)
            return CheckResult::fail("cycle " + pos(i) + ": " + r.message);
        for (const auto& e : f.cycles[i].edges) ranks.push_back(colex_rank(e.elements(), table));
    }
    std::sort(ranks.begin(), ranks.end());
    // Sizes already agree, so the multiset equals 0..C(n,k)-1 iff ranks[i] == i.
    for (std::size_t i = 0; i < ranks.size(); ++i)
        if (ranks[i] != i) {
            std::uint64_t bad = ranks[i] < i ? ranks[i] : i;
            std::string what = ranks[i] < i ? " appears twice (or is in M)" : " is not covered";
            return CheckResult::fail("coverage mismatch: " + format_kset(colex_unrank(bad, k)) + what);
        }
    return CheckResult::pass();
}

CheckResult verify_decomposition(const Decomposition& d) { return verify_hbd(to_hbd(d)); }

CheckResult hall_certificate_check(const BipartiteGraph& g, std::span<const std::uint32_t> violator) {
    if (violator.empty()) return CheckResult::fail("empty violator");
    std::vector<char> in_s(g.left_count(), 0);
    for (std::uint32_t u : violator) {
        if (u >= g.left_count()) return CheckResult::fail("violator vertex " + std::to_string(u) + " out of range");
        if (in_s[u]++) return CheckResult::fail("violator vertex " + std::to_string(u) + " repeated");
    }
    std::vector<char> in_n(g.right_count(), 0);
    std::uint64_t nb = 0;
    for (std::uint32_t u : violator)
        for (std::uint32_t v : g.neighbors(u))
            if (!in_n[v]) {
                in_n[v] = 1;
                nb += g.capacity(v);
            }
    if (nb >= violator.size())
        return CheckResult::fail("|N(S)| = " + std::to_string(nb) + " is not below |S| = " +
                                 std::to_string(violator.size()));
    return CheckResult::pass();
}

}  // namespace berge
