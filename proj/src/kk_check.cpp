#include "berge/kk_check.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <sstream>

#include <omp.h>

#include "berge/combinatorics.hpp"
#include "berge/errors.hpp"

namespace berge {

namespace {

constexpr int kMaxExhaustiveBits = 28;
constexpr std::uint64_t kMaxSamples = 100000;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Visits every size-r subset of positions 0..m-1 (lex order).
template <typename Fn>
void for_each_combination(int m, int r, Fn&& fn) {
    if (r < 0 || r > m) return;
    std::vector<int> idx(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) idx[i] = i;
    while (true) {
        fn(std::span<const int>(idx));
        int i = r - 1;
        while (i >= 0 && idx[i] == m - r + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
}

std::vector<std::vector<Vertex>> all_sets_colex(int n, int k) {
    std::vector<std::vector<Vertex>> out;
    std::uint64_t total = binom(n, k);
    out.reserve(total);
    std::vector<Vertex> cur(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) cur[i] = static_cast<Vertex>(i + 1);
    for (std::uint64_t r = 0; r < total; ++r) {
        out.push_back(cur);
        if (k > 0) colex_next(cur);
    }
    return out;
}

// Colex ranks of all `r`-subsets of `set` (r <= |set|).
template <typename Fn>
void for_each_subset_rank(std::span<const Vertex> set, int r, const BinomialTable& table, Fn&& fn) {
    std::vector<Vertex> sub(static_cast<std::size_t>(r));
    for_each_combination(static_cast<int>(set.size()), r, [&](std::span<const int> idx) {
        for (int i = 0; i < r; ++i) sub[i] = set[idx[i]];
        fn(colex_rank(sub, table));
    });
}

// Colex ranks of all supersets of `set` inside [n] with `level` extra vertices.
template <typename Fn>
void for_each_superset_rank(std::span<const Vertex> set, int n, int level, const BinomialTable& table, Fn&& fn) {
    std::vector<Vertex> rest;
    for (Vertex v = 1; v <= static_cast<Vertex>(n); ++v)
        if (!std::binary_search(set.begin(), set.end(), v)) rest.push_back(v);
    std::vector<Vertex> sup(set.size() + static_cast<std::size_t>(level));
    for_each_combination(static_cast<int>(rest.size()), level, [&](std::span<const int> idx) {
        std::size_t a = 0, b = 0, o = 0;
        while (a < set.size() || b < idx.size()) {
            if (b == idx.size() || (a < set.size() && set[a] < rest[idx[b]]))
                sup[o++] = set[a++];
            else
                sup[o++] = rest[idx[b++]];
        }
        fn(colex_rank(sup, table));
    });
}

using Bits = std::vector<std::uint64_t>;

Bits make_bits(std::uint64_t size) { return Bits((size + 63) / 64, 0); }
void set_bit(Bits& b, std::uint64_t i) { b[i >> 6] |= 1ULL << (i & 63); }

// Per-member shadow masks for the sampled kernel.
struct ShadowMasks {
    std::size_t universe = 0;
    std::size_t lower_words = 0;
    std::size_t upper_words = 0;
    std::vector<std::uint64_t> lower;  // universe * lower_words
    std::vector<std::uint64_t> upper;  // universe * upper_words
};

ShadowMasks build_masks(int n, int k) {
    ShadowMasks m;
    auto sets = all_sets_colex(n, k);
    m.universe = sets.size();
    std::uint64_t lower_n = binom(n, k - 1);
    std::uint64_t upper_n = k < n ? binom(n, k + 1) : 0;
    m.lower_words = (lower_n + 63) / 64;
    m.upper_words = (upper_n + 63) / 64;
    m.lower.assign(m.universe * m.lower_words, 0);
    m.upper.assign(m.universe * m.upper_words, 0);
    BinomialTable table(n, k + 1);
    for (std::size_t i = 0; i < sets.size(); ++i) {
        for_each_subset_rank(sets[i], k - 1, table, [&](std::uint64_t r) {
            m.lower[i * m.lower_words + (r >> 6)] |= 1ULL << (r & 63);
        });
        if (k < n)
            for_each_superset_rank(sets[i], n, 1, table, [&](std::uint64_t r) {
                m.upper[i * m.upper_words + (r >> 6)] |= 1ULL << (r & 63);
            });
    }
    return m;
}

std::uint64_t or_popcount(const ShadowMasks& m, bool upper, std::span<const std::uint32_t> members,
                          std::vector<std::uint64_t>& acc) {
    std::size_t words = upper ? m.upper_words : m.lower_words;
    const auto& masks = upper ? m.upper : m.lower;
    acc.assign(words, 0);
    for (auto i : members)
        for (std::size_t w = 0; w < words; ++w) acc[w] |= masks[i * words + w];
    std::uint64_t c = 0;
    for (auto w : acc) c += static_cast<std::uint64_t>(__builtin_popcountll(w));
    return c;
}

// Minimum shadows over families of one size: every family when there are at
// most `samples` of them, otherwise `samples` uniform draws.
void min_shadows_for_size(const ShadowMasks& m, bool with_upper, std::uint64_t size, std::uint64_t samples,
                          std::uint64_t seed, std::uint64_t& min_lower, std::uint64_t& min_upper) {
    min_lower = min_upper = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint64_t> acc;
    std::vector<std::uint32_t> members(size);
    auto visit = [&]() {
        min_lower = std::min(min_lower, or_popcount(m, false, members, acc));
        if (with_upper) min_upper = std::min(min_upper, or_popcount(m, true, members, acc));
    };

    BigInt families = binom_big(m.universe, size);
    if (families <= BigInt(samples)) {
        for_each_combination(static_cast<int>(m.universe), static_cast<int>(size), [&](std::span<const int> idx) {
            for (std::size_t i = 0; i < size; ++i) members[i] = static_cast<std::uint32_t>(idx[i]);
            visit();
        });
        return;
    }
    std::mt19937_64 rng(splitmix64(seed) ^ splitmix64(size * 0x632be59bd9b4e019ULL));
    std::vector<std::uint32_t> pool(m.universe);
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = static_cast<std::uint32_t>(i);
    for (std::uint64_t t = 0; t < samples; ++t) {
        for (std::size_t i = 0; i < size; ++i) {
            std::size_t j = i + static_cast<std::size_t>(rng() % (pool.size() - i));
            std::swap(pool[i], pool[j]);
            members[i] = pool[i];
        }
        visit();
    }
}

void check_nk(int n, int k) {
    if (k < 1 || k > n || n > 64)
        throw InvalidArgument("need 1 <= k <= n <= 64, got n=" + std::to_string(n) + " k=" + std::to_string(k));
}

}  // namespace

std::vector<std::uint64_t> max_full_supersets(int n, int j, int level) {
    if (j < 1 || j > n || level < 0) throw InvalidArgument("max_full_supersets: bad (n, j, level)");
    std::uint64_t universe = binom(n, j);
    if (universe > kMaxExhaustiveBits)
        throw InvalidArgument("max_full_supersets: C(n,j) = " + std::to_string(universe) + " exceeds " +
                              std::to_string(kMaxExhaustiveBits));
    std::vector<std::uint64_t> best(universe + 1, 0);
    if (j + level > n) return best;

    // For each universe element, the j-subset masks of the supersets holding it.
    auto supers = all_sets_colex(n, j + level);
    BinomialTable table(n, j + level);
    std::vector<std::vector<std::uint32_t>> holding(universe);
    for (const auto& w : supers) {
        std::uint32_t mask = 0;
        for_each_subset_rank(w, j, table, [&](std::uint64_t r) { mask |= 1u << r; });
        for (std::uint32_t b = mask; b; b &= b - 1) holding[__builtin_ctz(b)].push_back(mask);
    }

    std::uint32_t t_mask = 0;
    std::uint64_t full = 0;
    int size = 0;
    const std::uint64_t steps = 1ULL << universe;
    for (std::uint64_t g = 1; g < steps; ++g) {
        int bit = __builtin_ctzll(g);
        std::uint32_t b = 1u << bit;
        if (t_mask & b) {
            for (auto mask : holding[bit]) full -= (mask & t_mask) == mask;
            t_mask ^= b;
            --size;
        } else {
            t_mask ^= b;
            ++size;
            for (auto mask : holding[bit]) full += (mask & t_mask) == mask;
        }
        if (full > best[size]) best[size] = full;
    }
    return best;
}

std::vector<std::uint64_t> exact_min_lower_shadow(int n, int k, int level) {
    if (level < 1 || level >= k) throw InvalidArgument("exact_min_lower_shadow: need 1 <= level < k");
    auto best = max_full_supersets(n, k - level, level);
    std::uint64_t total = binom(n, k);
    std::vector<std::uint64_t> out(total + 1, 0);
    std::uint64_t t = 0;
    for (std::uint64_t s = 1; s <= total; ++s) {
        while (best[t] < s) ++t;
        out[s] = t;
    }
    return out;
}

std::vector<std::uint64_t> exact_min_upper_shadow(int n, int k, int level) {
    if (level < 1 || k + level > n) throw InvalidArgument("exact_min_upper_shadow: need k + level <= n");
    auto best = max_full_supersets(n, k, level);
    std::uint64_t total = binom(n, k);
    std::uint64_t supers = binom(n, k + level);
    std::vector<std::uint64_t> out(total + 1, 0);
    for (std::uint64_t s = 0; s <= total; ++s) out[s] = supers - best[total - s];
    return out;
}

SampledShadows sample_min_shadows_serial(int n, int k, std::uint64_t samples, std::uint64_t seed) {
    check_nk(n, k);
    if (k < 2) throw InvalidArgument("sampled shadows need k >= 2");
    ShadowMasks masks = build_masks(n, k);
    bool with_upper = k < n;
    SampledShadows out;
    out.min_lower.assign(masks.universe + 1, 0);
    if (with_upper) out.min_upper.assign(masks.universe + 1, 0);
    std::uint64_t dummy = 0;
    for (std::uint64_t s = 1; s <= masks.universe; ++s)
        min_shadows_for_size(masks, with_upper, s, samples, seed, out.min_lower[s],
                             with_upper ? out.min_upper[s] : dummy);
    return out;
}

SampledShadows sample_min_shadows_parallel(int n, int k, std::uint64_t samples, std::uint64_t seed, int threads) {
    check_nk(n, k);
    if (k < 2) throw InvalidArgument("sampled shadows need k >= 2");
    ShadowMasks masks = build_masks(n, k);
    bool with_upper = k < n;
    SampledShadows out;
    out.min_lower.assign(masks.universe + 1, 0);
    out.min_upper.assign(masks.universe + 1, 0);
    const auto universe = static_cast<std::int64_t>(masks.universe);
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(threads, 1))
    for (std::int64_t s = 1; s <= universe; ++s) {
        auto idx = static_cast<std::size_t>(s);
        min_shadows_for_size(masks, with_upper, static_cast<std::uint64_t>(s), samples, seed, out.min_lower[idx],
                             out.min_upper[idx]);
    }
    if (!with_upper) out.min_upper.clear();
    return out;
}

std::vector<std::uint64_t> colex_segment_lower_shadow_sizes(int n, int k, int level, std::uint64_t max_size) {
    if (level < 0 || level > k) throw InvalidArgument("colex_segment_lower_shadow_sizes: bad level");
    if (max_size > binom(n, k)) throw InvalidArgument("colex_segment_lower_shadow_sizes: size exceeds C(n,k)");
    int r = k - level;
    BinomialTable table(n, k);
    Bits seen = make_bits(binom(n, r));
    std::vector<std::uint64_t> out(max_size + 1, 0);
    std::vector<Vertex> cur(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) cur[i] = static_cast<Vertex>(i + 1);
    std::uint64_t count = 0;
    for (std::uint64_t s = 1; s <= max_size; ++s) {
        for_each_subset_rank(cur, r, table, [&](std::uint64_t rank) {
            if (!(seen[rank >> 6] >> (rank & 63) & 1)) {
                set_bit(seen, rank);
                ++count;
            }
        });
        out[s] = count;
        colex_next(cur);
    }
    return out;
}

std::vector<std::uint64_t> lex_segment_upper_shadow_sizes(int n, int k, int level, std::uint64_t max_size) {
    if (level < 0 || k + level > n) throw InvalidArgument("lex_segment_upper_shadow_sizes: bad level");
    if (max_size > binom(n, k)) throw InvalidArgument("lex_segment_upper_shadow_sizes: size exceeds C(n,k)");
    BinomialTable table(n, k + level);
    Bits seen = make_bits(binom(n, k + level));
    std::vector<std::uint64_t> out(max_size + 1, 0);
    std::vector<Vertex> cur(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) cur[i] = static_cast<Vertex>(i + 1);
    std::uint64_t count = 0;
    for (std::uint64_t s = 1; s <= max_size; ++s) {
        for_each_superset_rank(cur, n, level, table, [&](std::uint64_t rank) {
            if (!(seen[rank >> 6] >> (rank & 63) & 1)) {
                set_bit(seen, rank);
                ++count;
            }
        });
        out[s] = count;
        int i = k - 1;
        while (i >= 0 && cur[i] == static_cast<Vertex>(n - k + i + 1)) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

bool KKCheckReport::ok() const noexcept {
    return std::all_of(lines.begin(), lines.end(), [](const KKCheckLine& l) { return l.ok; });
}

namespace {

// kk_bound_ii on every size with c <= 8 and kk_bound_iii on sizes 1..n-1,
// against exact lex-segment upper shadows at n.
void check_pair_bounds(int n, KKCheckReport& rep, bool label_n) {
    std::string suffix = label_n ? " (n=" + std::to_string(n) + ")" : "";
    {
        KKCheckLine line{"kk_bound_iii <= lex-segment upper 2-shadow" + suffix, true, ""};
        auto exact = lex_segment_upper_shadow_sizes(n, 2, 2, static_cast<std::uint64_t>(n - 1));
        for (std::uint64_t s = 1; s + 1 <= static_cast<std::uint64_t>(n); ++s) {
            double b = kk_bound_iii(s, n);
            if (b > static_cast<double>(exact[s]) + 1e-9) {
                line.ok = false;
                line.detail = "size " + std::to_string(s) + ": bound " + std::to_string(b) + " > " +
                              std::to_string(exact[s]);
                break;
            }
        }
        if (line.ok) line.detail = "sizes 1.." + std::to_string(n - 1);
        rep.lines.push_back(line);
    }
    {
        KKCheckLine line{"kk_bound_ii <= lex-segment upper 1-shadow" + suffix, true, ""};
        if (n < 100) {
            line.detail = "informational only below n = 100";
        } else {
            std::uint64_t pairs = binom(n, 2);
            std::uint64_t max_size = 0;
            for (std::uint64_t s = 1; s < pairs; ++s) {
                if (kk_bound_ii(s, n).c > 8) break;
                max_size = s;
            }
            auto exact = lex_segment_upper_shadow_sizes(n, 2, 1, max_size);
            for (std::uint64_t s = 1; s <= max_size; ++s) {
                auto b = kk_bound_ii(s, n);
                if (b.bound_value > static_cast<double>(exact[s]) + 1e-9) {
                    line.ok = false;
                    line.detail = "size " + std::to_string(s) + ": bound " + std::to_string(b.bound_value) + " > " +
                                  std::to_string(exact[s]);
                    break;
                }
            }
            if (line.ok) line.detail = "sizes 1.." + std::to_string(max_size) + " (c <= 8)";
        }
        rep.lines.push_back(line);
    }
}

}  // namespace

KKCheckReport kk_check(const KKCheckOptions& opts) {
    const int n = opts.n;
    const int k = opts.k;
    if (k < 2 || k >= n || binom_big(n, k) > 5000000)
        throw InvalidArgument("kk-check needs 2 <= k < n and C(n,k) <= 5e6, got n=" + std::to_string(n) +
                              " k=" + std::to_string(k));
    const int exhaustive_bits = opts.exhaustive ? kMaxExhaustiveBits : 20;
    const std::uint64_t samples = std::min(opts.samples, kMaxSamples);
    const std::uint64_t total = binom(n, k);
    KKCheckReport rep;

    auto seg_lower = colex_segment_lower_shadow_sizes(n, k, 1, total);
    auto seg_upper = lex_segment_upper_shadow_sizes(n, k, 1, total);

    auto compare = [&](const std::string& name, const std::vector<std::uint64_t>& seg,
                       const std::vector<std::uint64_t>& other, const std::string& what) {
        KKCheckLine line{name, true, ""};
        for (std::uint64_t s = 1; s <= total; ++s) {
            if (seg[s] > other[s]) {
                line.ok = false;
                line.detail = "size " + std::to_string(s) + ": segment " + std::to_string(seg[s]) + " > " + what +
                              " " + std::to_string(other[s]);
                break;
            }
        }
        if (line.ok) line.detail = "all sizes 1.." + std::to_string(total);
        rep.lines.push_back(line);
    };

    if (binom(n, k - 1) <= static_cast<std::uint64_t>(exhaustive_bits))
        compare("colex segment minimizes lower shadow (exhaustive)", seg_lower, exact_min_lower_shadow(n, k, 1),
                "exact minimum");
    else
        rep.lines.push_back({"colex segment minimizes lower shadow (exhaustive)", true,
                             "skipped: 2^" + std::to_string(binom(n, k - 1)) + " shadow candidates"});

    if (total <= static_cast<std::uint64_t>(exhaustive_bits))
        compare("lex segment minimizes upper shadow (exhaustive)", seg_upper, exact_min_upper_shadow(n, k, 1),
                "exact minimum");
    else
        rep.lines.push_back({"lex segment minimizes upper shadow (exhaustive)", true,
                             "skipped: 2^" + std::to_string(total) + " families"});

    if (total <= 256) {
        auto sampled = sample_min_shadows_parallel(n, k, samples, opts.seed, opts.threads);
        std::string what = std::to_string(samples) + "-sample minimum";
        compare("colex segment minimizes lower shadow (sampled)", seg_lower, sampled.min_lower, what);
        compare("lex segment minimizes upper shadow (sampled)", seg_upper, sampled.min_upper, what);
    } else {
        rep.lines.push_back({"segment minimality (sampled)", true, "skipped: C(n,k) > 256"});
    }

    if (k >= 3) {
        KKCheckLine line{"kk_bound_i <= colex-segment (k-2)-th lower shadow", true, ""};
        auto seg = colex_segment_lower_shadow_sizes(n, k, k - 2, total);
        for (std::uint64_t s = 1; s <= total; ++s) {
            double b = kk_bound_i(s, k);
            if (b > static_cast<double>(seg[s]) + 1e-9) {
                line.ok = false;
                line.detail = "size " + std::to_string(s) + ": bound " + std::to_string(b) + " > " +
                              std::to_string(seg[s]);
                break;
            }
        }
        if (line.ok) line.detail = "all sizes 1.." + std::to_string(total);
        rep.lines.push_back(line);
    }

    if (binom(n, 2) <= static_cast<std::uint64_t>(exhaustive_bits)) {
        KKCheckLine line{"kk_bound_iii <= exact minimum upper 2-shadow", true, ""};
        auto exact = exact_min_upper_shadow(n, 2, 2);
        for (std::uint64_t s = 1; s + 1 <= static_cast<std::uint64_t>(n); ++s) {
            if (kk_bound_iii(s, n) > static_cast<double>(exact[s]) + 1e-9) {
                line.ok = false;
                line.detail = "size " + std::to_string(s);
                break;
            }
        }
        if (line.ok) line.detail = "sizes 1.." + std::to_string(n - 1);
        rep.lines.push_back(line);
    }

    check_pair_bounds(n, rep, false);
    if (n != 100) check_pair_bounds(100, rep, true);
    return rep;
}

}  // namespace berge
