#include <algorithm>

#include <omp.h>

#include "berge/construct.hpp"

namespace berge {

namespace {

std::uint64_t pair_rank(Vertex x, Vertex y) {
    if (x > y) std::swap(x, y);
    return static_cast<std::uint64_t>(y - 1) * (y - 2) / 2 + (x - 1);
}

// B indices grouped by unordered pair, CSR over pair colex ranks. Each group
// is ascending because b is scanned in index order.
struct PairIndex {
    std::vector<std::uint64_t> offsets;
    std::vector<std::uint32_t> members;

    PairIndex(int n, const std::vector<BElement>& b) {
        std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
        offsets.assign(pairs + 1, 0);
        for (const auto& e : b) ++offsets[pair_rank(e.edge.tail, e.edge.head) + 1];
        for (std::uint64_t p = 0; p < pairs; ++p) offsets[p + 1] += offsets[p];
        members.resize(b.size());
        std::vector<std::uint64_t> fill(offsets.begin(), offsets.end() - 1);
        for (const auto& e : b) members[fill[pair_rank(e.edge.tail, e.edge.head)]++] = static_cast<std::uint32_t>(e.index);
    }
    std::uint64_t multiplicity(std::uint64_t p) const { return offsets[p + 1] - offsets[p]; }
};

std::uint64_t left_degree(const std::vector<Vertex>& z, const PairIndex& idx) {
    std::uint64_t d = 0;
    for (std::size_t j = 1; j < z.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) d += idx.multiplicity(pair_rank(z[i], z[j]));
    return d;
}

void fill_left(const std::vector<Vertex>& z, const PairIndex& idx, std::uint32_t* out, std::uint32_t* end) {
    std::uint32_t* p = out;
    for (std::size_t j = 1; j < z.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) {
            std::uint64_t r = pair_rank(z[i], z[j]);
            p = std::copy(idx.members.begin() + static_cast<std::ptrdiff_t>(idx.offsets[r]),
                          idx.members.begin() + static_cast<std::ptrdiff_t>(idx.offsets[r + 1]), p);
        }
    std::sort(out, end);
}

void check_sizes(const AStar& a_star, const std::vector<BElement>& b) {
    if (a_star.size() != b.size())
        throw InvalidArgument("aux graph: |A_*| = " + std::to_string(a_star.size()) + " but |B| = " +
                              std::to_string(b.size()));
    if (b.size() >= unmatched) throw InvalidArgument("aux graph: too many vertices");
}

}  // namespace

AStar::AStar(int n, int k, const Family& M)
    : n_(n), k_(k), m_ranks_(M.ranks()), table_(n, k) {
    if (M.n() != n || M.k() != k) throw InvalidArgument("AStar: M has the wrong (n, k)");
    size_ = binom(n, k) - m_ranks_.size();
}

std::uint64_t AStar::rank_of(std::uint64_t index) const noexcept {
    std::uint64_t r = index;
    for (std::uint64_t m : m_ranks_) {
        if (m > r) break;
        ++r;
    }
    return r;
}

std::optional<std::uint64_t> AStar::index_of(std::uint64_t rank) const noexcept {
    auto it = std::lower_bound(m_ranks_.begin(), m_ranks_.end(), rank);
    if (it != m_ranks_.end() && *it == rank) return std::nullopt;
    return rank - static_cast<std::uint64_t>(it - m_ranks_.begin());
}

KSet AStar::at(std::uint64_t index) const {
    std::vector<Vertex> z(static_cast<std::size_t>(k_));
    colex_unrank(rank_of(index), z, table_);
    return KSet::from_sorted(std::move(z));
}

BipartiteGraph build_aux_graph_serial(const AStar& a_star, const std::vector<BElement>& b) {
    check_sizes(a_star, b);
    PairIndex idx(a_star.n(), b);
    const std::uint64_t L = a_star.size();
    std::vector<std::uint64_t> offsets(L + 1, 0);
    std::vector<Vertex> z(static_cast<std::size_t>(a_star.k()));
    for (std::uint64_t u = 0; u < L; ++u) {
        colex_unrank(a_star.rank_of(u), z, a_star.table());
        offsets[u + 1] = offsets[u] + left_degree(z, idx);
    }
    std::vector<std::uint32_t> targets(offsets.back());
    for (std::uint64_t u = 0; u < L; ++u) {
        colex_unrank(a_star.rank_of(u), z, a_star.table());
        fill_left(z, idx, targets.data() + offsets[u], targets.data() + offsets[u + 1]);
    }
    return BipartiteGraph(static_cast<std::uint32_t>(L), static_cast<std::uint32_t>(b.size()), std::move(offsets),
                          std::move(targets));
}

BipartiteGraph build_aux_graph(const AStar& a_star, const std::vector<BElement>& b, int threads) {
    check_sizes(a_star, b);
    PairIndex idx(a_star.n(), b);
    const auto L = static_cast<std::int64_t>(a_star.size());
    const int k = a_star.k();
    std::vector<std::uint64_t> offsets(static_cast<std::size_t>(L) + 1, 0);
#pragma omp parallel num_threads(std::max(threads, 1))
    {
        std::vector<Vertex> z(static_cast<std::size_t>(k));
#pragma omp for schedule(static)
        for (std::int64_t u = 0; u < L; ++u) {
            colex_unrank(a_star.rank_of(static_cast<std::uint64_t>(u)), z, a_star.table());
            offsets[static_cast<std::size_t>(u) + 1] = left_degree(z, idx);
        }
    }
    for (std::int64_t u = 0; u < L; ++u) offsets[u + 1] += offsets[u];
    std::vector<std::uint32_t> targets(offsets.back());
#pragma omp parallel num_threads(std::max(threads, 1))
    {
        std::vector<Vertex> z(static_cast<std::size_t>(k));
#pragma omp for schedule(static)
        for (std::int64_t u = 0; u < L; ++u) {
            colex_unrank(a_star.rank_of(static_cast<std::uint64_t>(u)), z, a_star.table());
            fill_left(z, idx, targets.data() + offsets[u], targets.data() + offsets[u + 1]);
        }
    }
    return BipartiteGraph(static_cast<std::uint32_t>(L), static_cast<std::uint32_t>(b.size()), std::move(offsets),
                          std::move(targets));
}

BipartiteGraph build_pair_aux_graph(const AStar& a_star, const std::vector<BElement>& b, int threads) {
    check_sizes(a_star, b);
    PairIndex idx(a_star.n(), b);
    const auto L = static_cast<std::int64_t>(a_star.size());
    const int k = a_star.k();
    const std::uint64_t pairs = idx.offsets.size() - 1;
    std::vector<std::uint32_t> capacity(pairs);
    for (std::uint64_t p = 0; p < pairs; ++p) capacity[p] = static_cast<std::uint32_t>(idx.multiplicity(p));

    // Pairs (z_i, z_j) with i < j, j outer, come out in ascending colex rank.
    auto visit = [&](const std::vector<Vertex>& z, auto&& f) {
        for (std::size_t j = 1; j < z.size(); ++j)
            for (std::size_t i = 0; i < j; ++i) {
                std::uint64_t r = pair_rank(z[i], z[j]);
                if (capacity[r]) f(r);
            }
    };
    std::vector<std::uint64_t> offsets(static_cast<std::size_t>(L) + 1, 0);
#pragma omp parallel num_threads(std::max(threads, 1))
    {
        std::vector<Vertex> z(static_cast<std::size_t>(k));
#pragma omp for schedule(static)
        for (std::int64_t u = 0; u < L; ++u) {
            colex_unrank(a_star.rank_of(static_cast<std::uint64_t>(u)), z, a_star.table());
            std::uint64_t d = 0;
            visit(z, [&](std::uint64_t) { ++d; });
            offsets[static_cast<std::size_t>(u) + 1] = d;
        }
    }
    for (std::int64_t u = 0; u < L; ++u) offsets[u + 1] += offsets[u];
    std::vector<std::uint32_t> targets(offsets.back());
#pragma omp parallel num_threads(std::max(threads, 1))
    {
        std::vector<Vertex> z(static_cast<std::size_t>(k));
#pragma omp for schedule(static)
        for (std::int64_t u = 0; u < L; ++u) {
            colex_unrank(a_star.rank_of(static_cast<std::uint64_t>(u)), z, a_star.table());
            std::uint32_t* p = targets.data() + offsets[u];
            visit(z, [&](std::uint64_t r) { *p++ = static_cast<std::uint32_t>(r); });
        }
    }
    return BipartiteGraph(static_cast<std::uint32_t>(L), static_cast<std::uint32_t>(pairs), std::move(offsets),
                          std::move(targets), std::move(capacity));
}

std::uint64_t aux_edge_count(const AStar& a_star, const std::vector<BElement>& b) {
    const int n = a_star.n(), k = a_star.k();
    std::vector<std::uint64_t> mult(static_cast<std::size_t>(n) * (n - 1) / 2, 0);
    for (const auto& e : b) ++mult[pair_rank(e.edge.tail, e.edge.head)];
    std::uint64_t total = b.size() * binom(static_cast<std::uint64_t>(n - 2), static_cast<std::uint64_t>(k - 2));
    std::vector<Vertex> z(static_cast<std::size_t>(k));
    for (std::uint64_t r : a_star.removed()) {
        colex_unrank(r, z, a_star.table());
        for (std::size_t j = 1; j < z.size(); ++j)
            for (std::size_t i = 0; i < j; ++i) total -= mult[pair_rank(z[i], z[j])];
    }
    return total;
}

std::vector<std::uint64_t> b_to_left_explicit(const MatchingResult& r, std::size_t b_size) {
    std::vector<std::uint64_t> out(b_size, UINT64_MAX);
    for (std::uint32_t u = 0; u < r.left_to_right.size(); ++u)
        if (r.left_to_right[u] != unmatched) out[r.left_to_right[u]] = u;
    return out;
}

std::vector<std::uint64_t> b_to_left_pairs(const BipartiteGraph& pair_graph, const MatchingResult& r,
                                           const std::vector<BElement>& b) {
    auto lefts = right_to_left(pair_graph, r);
    std::vector<std::size_t> used(lefts.size(), 0);
    std::vector<std::uint64_t> out(b.size(), UINT64_MAX);
    for (const auto& e : b) {
        auto p = pair_rank(e.edge.tail, e.edge.head);
        if (used[p] < lefts[p].size()) out[e.index] = lefts[p][used[p]++];
    }
    return out;
}

}  // namespace berge
