#include "berge/construct.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <set>

#include "berge/verify.hpp"

namespace berge {

std::string case_marker(ProofCase c) {
    switch (c) {
        case ProofCase::general: return "1";
        case ProofCase::triple: return "2";
        case ProofCase::n_minus_1: return "3a";
        case ProofCase::n_minus_2: return "3b";
    }
    return "?";
}

ProofCase parse_case_marker(const std::string& text) {
    if (text == "1") return ProofCase::general;
    if (text == "2") return ProofCase::triple;
    if (text == "3a") return ProofCase::n_minus_1;
    if (text == "3b") return ProofCase::n_minus_2;
    throw InvalidArgument("unknown case marker '" + text + "'");
}

ProofCase proof_case_for(int n, int k) {
    if (k == n - 1) return ProofCase::n_minus_1;
    if (k == n - 2) return ProofCase::n_minus_2;
    if (k == 3) return ProofCase::triple;
    return ProofCase::general;
}

bool in_proven_range(int n, int k) {
    if (k < 3 || k >= n) return false;
    return (k >= 5 && n >= 20) || (k == 4 && n >= 30) || (k == 3 && n >= 100);
}

namespace {

void check_nk(int n, int k) {
    if (k < 3 || k >= n)
        throw InvalidArgument("need 3 <= k < n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
    if (n > 65535) throw InvalidArgument("n too large");
}

std::uint64_t residue(int n, int k) {
    BigInt r = binom_big(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k)) % n;
    return r.convert_to<std::uint64_t>();
}

std::uint64_t to_u64(const BigInt& x) { return x.convert_to<std::uint64_t>(); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

DivisibilityError::DivisibilityError(int n, int k, std::uint64_t m_set_size, std::uint64_t residue)
    : Error("n=" + std::to_string(n) + " does not divide C(" + std::to_string(n) + "," + std::to_string(k) +
            ") - |M| with |M|=" + std::to_string(m_set_size) + "; C(n,k) mod n = " + std::to_string(residue) +
            ", so the admissible |M| is " + std::to_string(residue)),
      residue_(residue) {}

Parameters compute_parameters(int n, int k, std::uint64_t m_set_size) {
    check_nk(n, k);
    if (m_set_size >= static_cast<std::uint64_t>(n))
        throw InvalidArgument("|M| must be below n, got " + std::to_string(m_set_size));
    Parameters p;
    p.n = n;
    p.k = k;
    p.m_set_size = m_set_size;
    p.total = binom_big(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k)) - m_set_size;
    if (p.total % n != 0) throw DivisibilityError(n, k, m_set_size, residue(n, k));
    const BigInt arcs = BigInt(n) * (n - 1);
    p.ell = p.total / arcs;
    p.m = (p.total - p.ell * arcs) / n;
    return p;
}

Family choose_default_M(int n, int k) {
    check_nk(n, k);
    const std::uint64_t r = residue(n, k);
    if (r == 0) return Family(n, k);
    if (k == 3) {
        if (n % 3 != 0 || r != static_cast<std::uint64_t>(n / 3))
            throw InternalError("k=3: C(n,3) mod n = " + std::to_string(r) + " but expected n/3");
        std::vector<KSet> sets;
        for (Vertex v = 1; v + 2 <= static_cast<Vertex>(n); v += 3) sets.push_back(KSet{v, v + 1, v + 2});
        return Family::from_sets(n, k, std::move(sets));
    }
    std::vector<std::uint64_t> ranks(r);
    std::iota(ranks.begin(), ranks.end(), 0);
    return Family::from_colex_ranks(n, k, ranks);
}

Family random_valid_M(int n, int k, std::mt19937_64& rng) {
    check_nk(n, k);
    const std::uint64_t r = residue(n, k);
    if (r == 0) return Family(n, k);
    if (k == 3) {
        std::vector<Vertex> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), Vertex{1});
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<KSet> sets;
        for (std::size_t i = 0; i + 2 < perm.size(); i += 3) sets.push_back(KSet{perm[i], perm[i + 1], perm[i + 2]});
        return Family::from_sets(n, k, std::move(sets));
    }
    const std::uint64_t total = binom(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));
    std::set<std::uint64_t> picked;
    std::uniform_int_distribution<std::uint64_t> dist(0, total - 1);
    while (picked.size() < r) picked.insert(dist(rng));
    std::vector<std::uint64_t> ranks(picked.begin(), picked.end());
    return Family::from_colex_ranks(n, k, ranks);
}

void validate_M(int n, int k, const Family& M) {
    if (M.n() != n || M.k() != k)
        throw InvalidArgument("M is a family of " + std::to_string(M.k()) + "-subsets of [" + std::to_string(M.n()) +
                              "], expected " + std::to_string(k) + "-subsets of [" + std::to_string(n) + "]");
    compute_parameters(n, k, M.size());
    if (proof_case_for(n, k) == ProofCase::triple && !M.empty()) {
        std::vector<char> hit(static_cast<std::size_t>(n) + 1, 0);
        bool ok = M.size() * 3 == static_cast<std::size_t>(n);
        for (const auto& s : M.members())
            for (Vertex v : s.elements()) ok = ok && !hit[v]++;
        if (!ok) throw InvalidArgument("for k = 3 a nonempty M must be a perfect matching");
    }
}

std::vector<BElement> build_B(const Parameters& p, const std::vector<HamCycle>& h_cycles) {
    const int n = p.n;
    const std::uint64_t ell = to_u64(p.ell), m = to_u64(p.m);
    if (h_cycles.size() != m)
        throw InvalidArgument("build_B: need " + std::to_string(m) + " Hamilton cycles, got " +
                              std::to_string(h_cycles.size()));
    std::vector<BElement> b;
    b.reserve(to_u64(p.total));
    auto push = [&](BElement::Block block, std::uint32_t i, Vertex t, Vertex h) {
        b.push_back({block, i, {t, h}, b.size()});
    };
    for (std::uint32_t i = 0; i < ell; ++i) {
        for (Vertex t = 1; t <= static_cast<Vertex>(n); ++t)
            for (Vertex h = t + 1; h <= static_cast<Vertex>(n); ++h) push(BElement::Block::B, i, t, h);
        for (Vertex t = 1; t <= static_cast<Vertex>(n); ++t)
            for (Vertex h = 1; h < t; ++h) push(BElement::Block::Bprime, i, t, h);
    }
    for (std::uint32_t j = 0; j < m; ++j) {
        const HamCycle& c = h_cycles[j];
        if (c.order.size() != static_cast<std::size_t>(n)) throw InvalidArgument("build_B: cycle of wrong length");
        auto edges = c.edges();
        if (!c.directed)
            for (auto& e : edges)
                if (e.tail > e.head) std::swap(e.tail, e.head);
        std::sort(edges.begin(), edges.end());
        for (const auto& e : edges) push(BElement::Block::H, j, e.tail, e.head);
    }
    if (b.size() != to_u64(p.total))
        throw InvalidArgument("build_B: |B| = " + std::to_string(b.size()) + " but |A_*| = " + p.total.str());
    return b;
}

Decomposition assemble_cycles(const Parameters& p, const std::vector<std::uint64_t>& b_to_left,
                              const std::vector<BElement>& b, const std::vector<HamDecomposition>& dk,
                              const std::vector<HamCycle>& h_cycles, const AStar& a_star) {
    const int n = p.n;
    const std::uint64_t ell = to_u64(p.ell);
    const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    if (dk.size() != ell) throw InvalidArgument("assemble_cycles: need one DK_n decomposition per copy");
    if (b_to_left.size() != b.size()) throw InvalidArgument("assemble_cycles: matching has the wrong size");

    Decomposition d;
    d.n = n;
    d.k = p.k;
    auto edge_of = [&](std::uint64_t bi) {
        std::uint64_t u = b_to_left.at(bi);
        if (u == UINT64_MAX) throw InternalError("assemble_cycles: B element " + std::to_string(bi) + " unmatched");
        return a_star.at(u);
    };
    auto emit = [&](const HamCycle& c, auto&& index_of) {
        BergeCycle bc;
        bc.vertices = c.order;
        for (const auto& e : c.edges()) bc.edges.push_back(edge_of(index_of(e)));
        d.cycles.push_back(std::move(bc));
    };
    for (std::uint64_t i = 0; i < ell; ++i) {
        const std::uint64_t base = i * 2 * pairs;
        for (const auto& c : dk[i].cycles)
            emit(c, [&](const DirectedEdge& e) {
                std::uint64_t x = e.tail, y = e.head;
                // B(i): (x, y), x < y, in lex order; Bprime(i): (y, x), y > x, by (tail, head).
                if (x < y) return base + (x - 1) * (2 * n - x) / 2 + (y - x - 1);
                return base + pairs + (x - 1) * (x - 2) / 2 + (y - 1);
            });
    }
    std::uint64_t base = ell * 2 * pairs;
    for (const auto& c : h_cycles) {
        std::vector<DirectedEdge> sorted = c.edges();
        if (!c.directed)
            for (auto& e : sorted)
                if (e.tail > e.head) std::swap(e.tail, e.head);
        std::sort(sorted.begin(), sorted.end());
        emit(c, [&](DirectedEdge e) {
            if (!c.directed && e.tail > e.head) std::swap(e.tail, e.head);
            return base + static_cast<std::uint64_t>(std::lower_bound(sorted.begin(), sorted.end(), e) - sorted.begin());
        });
        base += static_cast<std::uint64_t>(n);
    }
    return d;
}

Decomposition single_cycle_n_minus_1(int n) {
    if (n < 4) throw InvalidArgument("single_cycle_n_minus_1 needs n >= 4");
    Decomposition d;
    d.n = n;
    d.k = n - 1;
    d.M = Family(n, n - 1);
    d.provenance = ProofCase::n_minus_1;
    BergeCycle c;
    for (Vertex v = 1; v <= static_cast<Vertex>(n); ++v) c.vertices.push_back(v);
    for (int i = 0; i < n; ++i) {
        Vertex skip = c.vertices[static_cast<std::size_t>((i + 2) % n)];
        std::vector<Vertex> e;
        for (Vertex v = 1; v <= static_cast<Vertex>(n); ++v)
            if (v != skip) e.push_back(v);
        c.edges.push_back(KSet::from_sorted(std::move(e)));
    }
    d.cycles.push_back(std::move(c));
    return d;
}

Decomposition decompose(int n, int k, const std::optional<Family>& M_in, std::uint64_t seed,
                        const DecomposeOptions& opts) {
    check_nk(n, k);
    const ProofCase pc = proof_case_for(n, k);
    Family M = M_in ? *M_in : choose_default_M(n, k);
    const Parameters p = compute_parameters(n, k, M.size());
    validate_M(n, k, M);
    const BigInt full = binom_big(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));
    if (full > opts.cap)
        throw SizeCapExceeded("C(" + std::to_string(n) + "," + std::to_string(k) + ") = " + full.str() +
                              " exceeds the cap of " + std::to_string(opts.cap) + " k-sets");
    if (!opts.force_range && !in_proven_range(n, k) && opts.on_warning)
        opts.on_warning("warning: (n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                        ") is outside the proven range (k>=5 and n>=20, k=4 and n>=30, k=3 and n>=100); "
                        "the matching may not exist");

    StageTimes local;
    StageTimes& times = opts.times ? *opts.times : local;
    auto t0 = std::chrono::steady_clock::now();

    Decomposition d;
    if (pc == ProofCase::n_minus_1) {
        d = single_cycle_n_minus_1(n);
    } else {
        const std::uint64_t ell = to_u64(p.ell), m = to_u64(p.m);
        std::vector<HamDecomposition> dk;
        std::vector<HamCycle> h;
        if (pc == ProofCase::n_minus_2) {
            if (ell != 0) throw InternalError("k = n-2 with ell > 0");
            HamDecomposition w = n % 2 ? walecki_decompose(n) : walecki_even_decompose(n);
            h = select_m_cycles(w, m);
        } else if (ell > 0 || m > 0) {
            DkSearchOptions dk_opts = opts.dk;
            dk_opts.threads = std::max(dk_opts.threads, opts.threads);
            HamDecomposition one = dk_decompose_cached(n, seed, dk_opts);
            h = select_m_cycles(one, m);
            dk.assign(ell, one);
        }
        times.hamilton = seconds_since(t0);

        t0 = std::chrono::steady_clock::now();
        std::vector<BElement> b = build_B(p, h);
        AStar a_star(n, k, M);
        times.aux_edges = aux_edge_count(a_star, b);
        MatchingEngine engine = opts.engine;
        if (engine == MatchingEngine::automatic) engine = MatchingEngine::pair_graph;
        times.engine = engine;
        BipartiteGraph g = engine == MatchingEngine::explicit_graph ? build_aux_graph(a_star, b, opts.threads)
                                                                    : build_pair_aux_graph(a_star, b, opts.threads);
        times.graph_bytes = g.memory_bytes();
        times.graph = seconds_since(t0);

        t0 = std::chrono::steady_clock::now();
        MatchingResult r = maximum_matching(g, opts.matcher);
        times.matching = seconds_since(t0);
        if (r.violator) {
            std::vector<KSet> sets;
            for (std::uint32_t u : *r.violator) sets.push_back(a_star.at(u));
            std::uint64_t nb = neighbourhood_capacity(g, *r.violator);
            throw MatchingInfeasible("no perfect matching for n=" + std::to_string(n) + " k=" + std::to_string(k) +
                                         ": matched " + std::to_string(r.size) + " of " + std::to_string(a_star.size()) +
                                         "; Hall violator with |S| = " + std::to_string(sets.size()) +
                                         ", |N(S)| = " + std::to_string(nb),
                                     std::move(sets), nb);
        }

        t0 = std::chrono::steady_clock::now();
        std::vector<std::uint64_t> b2l =
            engine == MatchingEngine::explicit_graph ? b_to_left_explicit(r, b.size()) : b_to_left_pairs(g, r, b);
        d = assemble_cycles(p, b2l, b, dk, h, a_star);
        times.assembly = seconds_since(t0);
    }
    d.M = std::move(M);
    d.seed = seed;
    d.provenance = pc;

    t0 = std::chrono::steady_clock::now();
    if (auto check = verify_decomposition(d); !check)
        throw InternalError("constructed decomposition failed verification: " + check.message);
    times.verify = seconds_since(t0);
    return d;
}

}  // namespace berge
