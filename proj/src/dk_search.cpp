#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include <omp.h>

#include "berge/errors.hpp"
#include "berge/ham_decomp.hpp"

namespace berge {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// DK_n as n-1 colour classes, each a permutation succ[c] of 0..n-1 without
// fixed points, jointly using every arc once (a Latin square with an empty
// diagonal). The search drives every colour class to a single n-cycle.
//
// A colour switch on (a, b) exchanges the a- and b-arcs of every tail on one
// alternating cycle; it keeps the Latin property and preserves the product of
// the signs of all classes. A column switch on heads (v, w) flips that product
// when its cycle has odd length, so it is used once to reach the parity of a
// Hamilton decomposition (every class an n-cycle, sign (-1)^(n-1)).
class SwitchingSearch {
public:
    SwitchingSearch(int n, std::uint64_t rng_seed) : n_(n), colours_(n - 1), rng_(rng_seed) {
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng_);
        std::vector<int> inv(perm.size());
        for (int i = 0; i < n; ++i) inv[perm[i]] = i;
        succ_.assign(static_cast<std::size_t>(colours_), std::vector<int>(perm.size()));
        pred_ = succ_;
        for (int c = 0; c < colours_; ++c)
            for (int u = 0; u < n; ++u) {
                int v = perm[(inv[u] + c + 1) % n];
                succ_[c][u] = v;
                pred_[c][v] = u;
            }
        stamp_.assign(perm.size(), 0);
        seen_.assign(perm.size(), 0);
    }

    bool fix_parity(std::uint64_t max_tries) {
        const int want = (n_ - 1) % 2 * (colours_ % 2);
        auto parity = [&]() {
            int p = 0;
            for (int c = 0; c < colours_; ++c) p ^= (n_ - count_cycles(succ_[c])) & 1;
            return p;
        };
        if (parity() == want) return true;
        std::vector<std::vector<int>> colour(static_cast<std::size_t>(n_), std::vector<int>(static_cast<std::size_t>(n_), -1));
        for (int c = 0; c < colours_; ++c)
            for (int u = 0; u < n_; ++u) colour[u][succ_[c][u]] = c;
        std::vector<int> rows;
        for (std::uint64_t t = 0; t < max_tries; ++t) {
            int v = pick(n_), w = pick(n_), u = pick(n_);
            if (v == w || u == v || u == w) continue;
            rows.clear();
            bool through_diagonal = false;
            int x = u;
            do {
                rows.push_back(x);
                int y = pred_[colour[x][v]][w];
                if (y == v) {
                    through_diagonal = true;
                    break;
                }
                x = y;
            } while (x != u);
            if (!through_diagonal && rows.size() % 2 == 1) {
                for (int y : rows) {
                    int c1 = colour[y][v], c2 = colour[y][w];
                    colour[y][v] = c2;
                    colour[y][w] = c1;
                    succ_[c1][y] = w;
                    pred_[c1][w] = y;
                    succ_[c2][y] = v;
                    pred_[c2][v] = y;
                }
                return true;
            }
            // Scramble with a random colour switch so the next try sees new cycles.
            int a = pick(colours_), b = pick(colours_ - 1);
            if (b >= a) ++b;
            collect_alternating(a, b, pick(n_));
            for (int y : alt_) {
                apply_swap(a, b, y);
                colour[y][succ_[a][y]] = a;
                colour[y][succ_[b][y]] = b;
            }
        }
        return false;
    }

    // Returns true once every class is a single cycle.
    bool run(std::uint64_t max_moves) {
        cycles_.resize(static_cast<std::size_t>(colours_));
        std::int64_t excess = 0;
        for (int c = 0; c < colours_; ++c) {
            cycles_[c] = count_cycles(succ_[c]);
            excess += cycles_[c] - 1;
        }
        best_excess_ = excess;
        for (std::uint64_t move = 0; move < max_moves && excess > 0; ++move) {
            // Near the end random moves almost never merge; scan all of them.
            if (excess <= 4 && move % static_cast<std::uint64_t>(n_) == 0) {
                excess += best_merge();
                best_excess_ = std::min(best_excess_, excess);
                if (excess == 0) break;
            }
            int a = pick(colours_);
            while (cycles_[a] == 1) a = pick(colours_);
            int b = pick(colours_ - 1);
            if (b >= a) ++b;
            collect_alternating(a, b, pick(n_));
            if (static_cast<int>(alt_.size()) == n_) continue;
            for (int y : alt_) apply_swap(a, b, y);
            int na = count_cycles(succ_[a]), nb = count_cycles(succ_[b]);
            int delta = na + nb - cycles_[a] - cycles_[b];
            if (delta <= 0 || rng_() % 100000 < 50) {
                cycles_[a] = na;
                cycles_[b] = nb;
                excess += delta;
                best_excess_ = std::min(best_excess_, excess);
            } else {
                for (int y : alt_) apply_swap(a, b, y);
            }
        }
        return excess == 0;
    }

    // Applies the switch between a split class and any other class that lowers
    // the cycle count most. Returns the change, 0 if nothing improves.
    int best_merge() {
        int best = 0, ba = -1, bb = -1, bs = -1;
        for (int a = 0; a < colours_; ++a) {
            if (cycles_[a] == 1) continue;
            for (int b = 0; b < colours_; ++b) {
                if (b == a) continue;
                if (++seen_epoch_ == 0) {
                    std::fill(seen_.begin(), seen_.end(), 0);
                    seen_epoch_ = 1;
                }
                for (int s = 0; s < n_; ++s) {
                    if (seen_[s] == seen_epoch_) continue;
                    collect_alternating(a, b, s);
                    for (int y : alt_) seen_[y] = seen_epoch_;
                    if (static_cast<int>(alt_.size()) == n_) continue;
                    for (int y : alt_) apply_swap(a, b, y);
                    int d = count_cycles(succ_[a]) + count_cycles(succ_[b]) - cycles_[a] - cycles_[b];
                    for (int y : alt_) apply_swap(a, b, y);
                    if (d < best) {
                        best = d;
                        ba = a;
                        bb = b;
                        bs = s;
                    }
                }
            }
        }
        if (best < 0) {
            collect_alternating(ba, bb, bs);
            for (int y : alt_) apply_swap(ba, bb, y);
            cycles_[ba] = count_cycles(succ_[ba]);
            cycles_[bb] = count_cycles(succ_[bb]);
        }
        return best;
    }

    std::int64_t best_excess() const noexcept { return best_excess_; }

    std::vector<HamCycle> cycles() const {
        std::vector<HamCycle> out;
        for (int c = 0; c < colours_; ++c) {
            HamCycle h;
            h.directed = true;
            int x = 0;
            do {
                h.order.push_back(static_cast<Vertex>(x + 1));
                x = succ_[c][x];
            } while (x != 0);
            out.push_back(h.normalized());
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    int pick(int bound) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(bound)); }

    void apply_swap(int a, int b, int y) {
        std::swap(succ_[a][y], succ_[b][y]);
        pred_[a][succ_[a][y]] = y;
        pred_[b][succ_[b][y]] = y;
    }

    void collect_alternating(int a, int b, int start) {
        alt_.clear();
        int x = start;
        do {
            alt_.push_back(x);
            x = pred_[b][succ_[a][x]];
        } while (x != start);
    }

    int count_cycles(const std::vector<int>& s) {
        if (++epoch_ == 0) {
            std::fill(stamp_.begin(), stamp_.end(), 0);
            epoch_ = 1;
        }
        int count = 0;
        for (int i = 0; i < n_; ++i) {
            if (stamp_[i] == epoch_) continue;
            ++count;
            for (int j = i; stamp_[j] != epoch_; j = s[j]) stamp_[j] = epoch_;
        }
        return count;
    }

    int n_;
    int colours_;
    std::mt19937_64 rng_;
    std::vector<std::vector<int>> succ_;
    std::vector<std::vector<int>> pred_;
    std::vector<int> cycles_;
    std::vector<int> alt_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t epoch_ = 0;
    std::vector<std::uint32_t> seen_;
    std::uint32_t seen_epoch_ = 0;
    std::int64_t best_excess_ = 0;
};

struct RestartOutcome {
    bool ok = false;
    std::vector<HamCycle> cycles;
    std::int64_t best_excess = 0;
};

RestartOutcome run_restart(int n, std::uint64_t seed, int restart, const DkSearchOptions& opts) {
    SwitchingSearch search(n, splitmix64(seed) ^ splitmix64(static_cast<std::uint64_t>(restart) + 1));
    RestartOutcome out;
    if (!search.fix_parity(static_cast<std::uint64_t>(n) * 1000)) {
        out.best_excess = std::numeric_limits<std::int64_t>::max();
        return out;
    }
    auto nn = static_cast<std::uint64_t>(n);
    out.ok = search.run(opts.moves_per_n2 * nn * nn);
    out.best_excess = search.best_excess();
    if (out.ok) out.cycles = search.cycles();
    return out;
}

}  // namespace

HamDecomposition dk_switching_search(int n, std::uint64_t seed, const DkSearchOptions& opts) {
    const int threads = std::max(opts.threads, 1);
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    // Restarts run in batches; the lowest successful restart index wins, so the
    // result does not depend on the thread count.
    for (int base = 0; base < opts.max_restarts; base += threads) {
        int batch = std::min(threads, opts.max_restarts - base);
        std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(batch));
#pragma omp parallel for schedule(static, 1) num_threads(threads) if (threads > 1)
        for (int i = 0; i < batch; ++i) outcomes[i] = run_restart(n, seed, base + i, opts);
        for (auto& o : outcomes) {
            best = std::min(best, o.best_excess);
            if (o.ok) {
                HamDecomposition d;
                d.n = n;
                d.kind = HamKind::complete_digraph;
                d.seed = seed;
                d.cycles = std::move(o.cycles);
                return d;
            }
        }
    }
    throw SearchExhausted("DK_" + std::to_string(n) + " search with seed " + std::to_string(seed) + " failed after " +
                          std::to_string(opts.max_restarts) + " restarts (best excess cycle count " +
                          std::to_string(best) + ")");
}

ExhaustiveResult exhaustive_dk_search(int n) {
    if (n < 2 || n > 8) throw InvalidArgument("exhaustive_dk_search handles 2 <= n <= 8");
    auto arc = [n](int u, int v) { return static_cast<unsigned>(u * n + v); };

    // Every directed Hamilton cycle, rooted at vertex 0, as an arc mask.
    std::vector<std::uint64_t> cycle_masks;
    std::vector<std::vector<int>> cycle_orders;
    std::vector<int> rest(static_cast<std::size_t>(n - 1));
    std::iota(rest.begin(), rest.end(), 1);
    do {
        std::uint64_t mask = 0;
        int prev = 0;
        for (int v : rest) {
            mask |= 1ULL << arc(prev, v);
            prev = v;
        }
        mask |= 1ULL << arc(prev, 0);
        cycle_masks.push_back(mask);
        std::vector<int> order{0};
        order.insert(order.end(), rest.begin(), rest.end());
        cycle_orders.push_back(order);
    } while (std::next_permutation(rest.begin(), rest.end()));

    std::uint64_t all_arcs = 0;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v) all_arcs |= 1ULL << arc(u, v);
    std::vector<std::vector<int>> through(static_cast<std::size_t>(n * n));
    for (std::size_t c = 0; c < cycle_masks.size(); ++c)
        for (std::uint64_t m = cycle_masks[c]; m; m &= m - 1) through[__builtin_ctzll(m)].push_back(static_cast<int>(c));

    ExhaustiveResult result;
    std::vector<int> chosen;
    // Always branch on the lowest uncovered arc: each cover is found once.
    auto search = [&](auto&& self, std::uint64_t covered) -> bool {
        ++result.nodes;
        if (covered == all_arcs) return true;
        int a = __builtin_ctzll(all_arcs & ~covered);
        for (int c : through[a]) {
            if (cycle_masks[c] & covered) continue;
            chosen.push_back(c);
            if (self(self, covered | cycle_masks[c])) return true;
            chosen.pop_back();
        }
        return false;
    };
    if (search(search, 0)) {
        HamDecomposition d;
        d.n = n;
        d.kind = HamKind::complete_digraph;
        for (int c : chosen) {
            HamCycle h;
            h.directed = true;
            for (int v : cycle_orders[c]) h.order.push_back(static_cast<Vertex>(v + 1));
            d.cycles.push_back(h.normalized());
        }
        std::sort(d.cycles.begin(), d.cycles.end());
        result.decomposition = std::move(d);
    }
    return result;
}

}  // namespace berge
