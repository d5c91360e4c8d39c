#include "berge/ham_decomp.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "berge/errors.hpp"

namespace berge {

std::vector<DirectedEdge> HamCycle::edges() const {
    std::vector<DirectedEdge> out;
    out.reserve(order.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        out.push_back({order[i], order[(i + 1) % order.size()]});
    return out;
}

HamCycle HamCycle::normalized() const {
    HamCycle c = *this;
    auto it = std::find(c.order.begin(), c.order.end(), Vertex{1});
    if (it == c.order.end()) return c;
    std::rotate(c.order.begin(), it, c.order.end());
    if (!directed && c.order.size() > 2 && c.order[1] > c.order.back())
        std::reverse(c.order.begin() + 1, c.order.end());
    return c;
}

HamCycle HamCycle::reversed() const {
    HamCycle c = *this;
    if (c.order.size() > 1) std::reverse(c.order.begin() + 1, c.order.end());
    return c;
}

std::string to_string(HamKind kind) {
    switch (kind) {
        case HamKind::complete_graph_odd: return "complete_graph_odd";
        case HamKind::complete_graph_even_minus_matching: return "complete_graph_even_minus_matching";
        case HamKind::complete_digraph: return "complete_digraph";
    }
    return "?";
}

HamKind parse_ham_kind(const std::string& text) {
    if (text == "complete_graph_odd") return HamKind::complete_graph_odd;
    if (text == "complete_graph_even_minus_matching") return HamKind::complete_graph_even_minus_matching;
    if (text == "complete_digraph") return HamKind::complete_digraph;
    throw InvalidArgument("unknown decomposition kind '" + text + "'");
}

namespace {

// Zig-zag order j, j+1, j-1, j+2, j-2, ... over Z_{2q}, as labels 1..2q.
std::vector<Vertex> zigzag(int q, int j) {
    const int m = 2 * q;
    std::vector<Vertex> out;
    out.reserve(static_cast<std::size_t>(m));
    out.push_back(static_cast<Vertex>(j % m + 1));
    for (int i = 1; static_cast<int>(out.size()) < m; ++i) {
        out.push_back(static_cast<Vertex>(((j + i) % m + m) % m + 1));
        if (static_cast<int>(out.size()) < m) out.push_back(static_cast<Vertex>(((j - i) % m + m) % m + 1));
    }
    return out;
}

}  // namespace

HamDecomposition walecki_decompose(int n) {
    if (n < 3 || n % 2 == 0) throw InvalidArgument("walecki_decompose needs odd n >= 3, got " + std::to_string(n));
    const int q = (n - 1) / 2;
    HamDecomposition d;
    d.n = n;
    d.kind = HamKind::complete_graph_odd;
    for (int j = 0; j < q; ++j) {
        HamCycle c;
        c.order.push_back(static_cast<Vertex>(n));  // the fixed point
        auto z = zigzag(q, j);
        c.order.insert(c.order.end(), z.begin(), z.end());
        d.cycles.push_back(c.normalized());
    }
    return d;
}

HamDecomposition walecki_even_decompose(int n) {
    if (n < 4 || n % 2 != 0) throw InvalidArgument("walecki_even_decompose needs even n >= 4, got " + std::to_string(n));
    // Walecki on n-1 vertices, then route the new vertex n through the zig-zag
    // edge of difference q in each cycle. Those edges are rotations of one
    // another, hence disjoint, and together with {n-1, n} form the leftover.
    const int q = (n - 2) / 2;
    HamDecomposition d;
    d.n = n;
    d.kind = HamKind::complete_graph_even_minus_matching;
    for (int j = 0; j < q; ++j) {
        auto z = zigzag(q, j);
        HamCycle c;
        c.order.push_back(static_cast<Vertex>(n - 1));
        for (int t = 0; t < 2 * q; ++t) {
            c.order.push_back(z[t]);
            if (t == q - 1) c.order.push_back(static_cast<Vertex>(n));
        }
        Vertex a = z[q - 1], b = z[q];
        d.leftover_matching.emplace_back(std::min(a, b), std::max(a, b));
        d.cycles.push_back(c.normalized());
    }
    d.leftover_matching.emplace_back(static_cast<Vertex>(n - 1), static_cast<Vertex>(n));
    std::sort(d.leftover_matching.begin(), d.leftover_matching.end());
    return d;
}

// Defined in dk_search.cpp.
HamDecomposition dk_switching_search(int n, std::uint64_t seed, const DkSearchOptions& opts);

HamDecomposition dk_decompose(int n, std::uint64_t seed, const DkSearchOptions& opts) {
    if (n < 2) throw InvalidArgument("dk_decompose needs n >= 2");
    if (n == 4 || n == 6) throw ImpossibleByTillson(n);
    HamDecomposition d;
    d.n = n;
    d.kind = HamKind::complete_digraph;
    d.seed = seed;
    if (n == 2) {
        d.cycles.push_back({{1, 2}, true});
        return d;
    }
    if (n % 2 == 1) {
        for (const auto& c : walecki_decompose(n).cycles) {
            HamCycle fwd{c.order, true};
            d.cycles.push_back(fwd);
            d.cycles.push_back(fwd.reversed());
        }
        std::sort(d.cycles.begin(), d.cycles.end());
        return d;
    }
    return dk_switching_search(n, seed, opts);
}

HamDecomposition dk_decompose_cached(int n, std::uint64_t seed, const DkSearchOptions& opts) {
    const char* dir = std::getenv("BERGE_CACHE_DIR");
    if (!dir || !*dir) return dk_decompose(n, seed, opts);
    if (n == 4 || n == 6) throw ImpossibleByTillson(n);
    namespace fs = std::filesystem;
    fs::path path = fs::path(dir) / ("dk_" + std::to_string(n) + "_" + std::to_string(seed) + ".hamdec");
    if (fs::exists(path)) {
        std::ifstream in(path);
        try {
            HamDecomposition d = read_hamdec(in);
            if (d.n == n && d.kind == HamKind::complete_digraph && d.seed == seed && verify_ham_decomposition(d))
                return d;
        } catch (const Error&) {
            // Unreadable cache entries are recomputed and overwritten.
        }
    }
    HamDecomposition d = dk_decompose(n, seed, opts);
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        write_hamdec(out, d);
    }
    fs::rename(tmp, path, ec);
    return d;
}

std::uint64_t prove_impossible_small(int n) {
    if (n != 4 && n != 6)
        throw InvalidArgument("prove_impossible_small only handles n = 4 or 6, got " + std::to_string(n));
    ExhaustiveResult r = exhaustive_dk_search(n);
    if (r.decomposition)
        throw InternalError("exhaustive search found a Hamilton decomposition of DK_" + std::to_string(n));
    return r.nodes;
}

std::vector<HamCycle> select_m_cycles(const HamDecomposition& d, std::size_t m) {
    if (m > d.cycles.size())
        throw InvalidArgument("select_m_cycles: asked for " + std::to_string(m) + " of " +
                              std::to_string(d.cycles.size()) + " cycles");
    std::vector<HamCycle> sorted;
    sorted.reserve(d.cycles.size());
    for (const auto& c : d.cycles) sorted.push_back(c.normalized());
    std::sort(sorted.begin(), sorted.end());
    sorted.resize(m);
    return sorted;
}

CheckResult verify_ham_decomposition(const HamDecomposition& d) {
    const int n = d.n;
    const bool directed = d.kind == HamKind::complete_digraph;
    std::size_t expected = 0;
    switch (d.kind) {
        case HamKind::complete_graph_odd:
            if (n < 3 || n % 2 == 0) return CheckResult::fail("complete_graph_odd needs odd n >= 3");
            expected = static_cast<std::size_t>((n - 1) / 2);
            break;
        case HamKind::complete_graph_even_minus_matching:
            if (n < 4 || n % 2 != 0) return CheckResult::fail("complete_graph_even_minus_matching needs even n >= 4");
            expected = static_cast<std::size_t>(n / 2 - 1);
            break;
        case HamKind::complete_digraph:
            if (n < 2) return CheckResult::fail("complete_digraph needs n >= 2");
            expected = static_cast<std::size_t>(n - 1);
            break;
    }
    if (d.cycles.size() != expected)
        return CheckResult::fail("expected " + std::to_string(expected) + " cycles, found " +
                                 std::to_string(d.cycles.size()));
    if (!d.leftover_matching.empty() && d.kind != HamKind::complete_graph_even_minus_matching)
        return CheckResult::fail("leftover matching only allowed for complete_graph_even_minus_matching");

    const auto nn = static_cast<std::size_t>(n) + 1;
    // owner[u*nn+v]: 1 + index of the cycle using the edge, or n+1 for leftover.
    std::vector<std::size_t> owner(nn * nn, 0);
    auto claim = [&](Vertex u, Vertex v, std::size_t who) -> CheckResult {
        if (!directed && u > v) std::swap(u, v);
        auto& slot = owner[u * nn + v];
        if (slot) {
            std::string name = std::to_string(u) + (directed ? "->" : "-") + std::to_string(v);
            return CheckResult::fail("edge " + name + " used twice (by " +
                                     (slot > d.cycles.size() ? std::string("leftover") : "cycle " + std::to_string(slot - 1)) +
                                     " and " +
                                     (who > d.cycles.size() ? std::string("leftover") : "cycle " + std::to_string(who - 1)) +
                                     ")");
        }
        slot = who;
        return CheckResult::pass();
    };

    for (std::size_t ci = 0; ci < d.cycles.size(); ++ci) {
        const HamCycle& c = d.cycles[ci];
        std::string tag = "cycle " + std::to_string(ci) + ": ";
        if (c.directed != directed) return CheckResult::fail(tag + "directed flag does not match kind");
        if (c.order.size() != static_cast<std::size_t>(n)) return CheckResult::fail(tag + "wrong length");
        std::vector<char> seen(nn, 0);
        for (Vertex v : c.order) {
            if (v < 1 || v > static_cast<Vertex>(n)) return CheckResult::fail(tag + "vertex out of range");
            if (seen[v]++) return CheckResult::fail(tag + "vertex " + std::to_string(v) + " repeated");
        }
        if (c.order[0] != 1) return CheckResult::fail(tag + "not normalized (must start at 1)");
        if (!directed && n > 2 && c.order[1] > c.order.back())
            return CheckResult::fail(tag + "not normalized (direction)");
        for (const auto& e : c.edges())
            if (auto r = claim(e.tail, e.head, ci + 1); !r) return r;
    }

    if (d.kind == HamKind::complete_graph_even_minus_matching) {
        std::vector<char> covered(nn, 0);
        for (auto [a, b] : d.leftover_matching) {
            if (a < 1 || b > static_cast<Vertex>(n) || a >= b) return CheckResult::fail("malformed leftover pair");
            if (covered[a]++ || covered[b]++) return CheckResult::fail("leftover is not a matching");
            if (auto r = claim(a, b, d.cycles.size() + 1); !r) return r;
        }
        if (d.leftover_matching.size() != static_cast<std::size_t>(n / 2))
            return CheckResult::fail("leftover is not a perfect matching");
    }

    for (Vertex u = 1; u <= static_cast<Vertex>(n); ++u)
        for (Vertex v = directed ? 1 : u + 1; v <= static_cast<Vertex>(n); ++v)
            if (u != v && !owner[u * nn + v])
                return CheckResult::fail("edge " + std::to_string(u) + (directed ? "->" : "-") + std::to_string(v) +
                                         " not covered");
    return CheckResult::pass();
}

}  // namespace berge
