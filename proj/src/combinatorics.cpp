#include "berge/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "berge/errors.hpp"

namespace berge {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

// Visits every size-r combination of positions 0..m-1 in lex order.
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

void check_ground(int n, int k) {
    if (n < 0 || k < 0 || k > n)
        throw InvalidArgument("need 0 <= k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
}

}  // namespace

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > kSaturated)
            throw InvalidArgument("C(" + std::to_string(n) + "," + std::to_string(k) + ") exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(r);
}

BigInt binom_big(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

BinomialTable::BinomialTable(int max_n, int max_k)
    : max_n_(max_n), max_k_(max_k),
      table_(static_cast<std::size_t>(max_n + 1) * (max_k + 1), 0) {
    for (int i = 0; i <= max_n; ++i) {
        auto row = static_cast<std::size_t>(i) * (max_k + 1);
        table_[row] = 1;
        for (int j = 1; j <= std::min(i, max_k); ++j) {
            std::uint64_t a = table_[row - (max_k + 1) + j - 1];
            std::uint64_t b = j <= i - 1 ? table_[row - (max_k + 1) + j] : 0;
            table_[row + j] = (a > kSaturated - b) ? kSaturated : a + b;
        }
    }
}

std::uint64_t colex_rank(std::span<const Vertex> sorted, const BinomialTable& table) {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i)
        r += table(static_cast<int>(sorted[i]) - 1, static_cast<int>(i) + 1);
    return r;
}

std::uint64_t colex_rank(const KSet& s) {
    if (s.size() == 0) return 0;
    if (!s.is_valid(static_cast<int>(s.max()), static_cast<int>(s.size())))
        throw InvalidArgument("colex_rank: malformed k-set '" + format_kset(s) + "'");
    // The rank must fit; C(max, k) bounds it from above.
    binom(s.max(), s.size());
    BinomialTable table(static_cast<int>(s.max()), static_cast<int>(s.size()));
    return colex_rank(s.elements(), table);
}

void colex_unrank(std::uint64_t rank, std::span<Vertex> out, const BinomialTable& table) {
    int k = static_cast<int>(out.size());
    for (int i = k; i >= 1; --i) {
        // Largest c with C(c, i) <= rank; c >= i - 1.
        int lo = i - 1, hi = table.max_n();
        while (lo < hi) {
            int mid = lo + (hi - lo + 1) / 2;
            if (table(mid, i) <= rank) lo = mid; else hi = mid - 1;
        }
        out[i - 1] = static_cast<Vertex>(lo + 1);
        rank -= table(lo, i);
    }
}

KSet colex_unrank(std::uint64_t rank, int k) {
    if (k < 0) throw InvalidArgument("colex_unrank: negative k");
    if (k == 0) {
        if (rank != 0) throw InvalidArgument("colex_unrank: rank out of range for k=0");
        return KSet{};
    }
    // Smallest m with C(m, k) > rank bounds the largest element.
    int m = k;
    while (true) {
        std::uint64_t c;
        try {
            c = binom(static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(k));
        } catch (const InvalidArgument&) {
            break;
        }
        if (c > rank) break;
        ++m;
    }
    BinomialTable table(m, k);
    std::vector<Vertex> out(static_cast<std::size_t>(k));
    colex_unrank(rank, out, table);
    return KSet::from_sorted(std::move(out));
}

KSet colex_unrank(std::uint64_t rank, int k, int n) {
    check_ground(n, k);
    if (rank >= binom(n, k))
        throw InvalidArgument("colex_unrank: rank " + std::to_string(rank) + " out of range for C(" +
                              std::to_string(n) + "," + std::to_string(k) + ")");
    return colex_unrank(rank, k);
}

void colex_next(std::span<Vertex> e) noexcept {
    std::size_t k = e.size();
    std::size_t i = 0;
    while (i + 1 < k && e[i] + 1 == e[i + 1]) ++i;
    ++e[i];
    for (std::size_t j = 0; j < i; ++j) e[j] = static_cast<Vertex>(j + 1);
}

Family::Family(int n, int k) : n_(n), k_(k) { check_ground(n, k); }

Family Family::from_sets(int n, int k, std::vector<KSet> sets) {
    Family f(n, k);
    for (const auto& s : sets) s.validate(n, k);
    std::sort(sets.begin(), sets.end(), ColexLess{});
    auto dup = std::adjacent_find(sets.begin(), sets.end());
    if (dup != sets.end()) throw InvalidArgument("family has duplicate member '" + format_kset(*dup) + "'");
    f.members_ = std::move(sets);
    return f;
}

Family Family::from_colex_ranks(int n, int k, std::span<const std::uint64_t> ranks) {
    Family f(n, k);
    if (ranks.empty()) return f;
    std::uint64_t total = binom(n, k);
    BinomialTable table(n, k);
    f.members_.reserve(ranks.size());
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        if (ranks[i] >= total || (i > 0 && ranks[i - 1] >= ranks[i]))
            throw InvalidArgument("from_colex_ranks: ranks must be strictly ascending and below C(n,k)");
        std::vector<Vertex> e(static_cast<std::size_t>(k));
        colex_unrank(ranks[i], e, table);
        f.members_.push_back(KSet::from_sorted(std::move(e)));
    }
    return f;
}

bool Family::contains(const KSet& s) const noexcept {
    return std::binary_search(members_.begin(), members_.end(), s, ColexLess{});
}

bool Family::insert(KSet s) {
    s.validate(n_, k_);
    auto it = std::lower_bound(members_.begin(), members_.end(), s, ColexLess{});
    if (it != members_.end() && *it == s) return false;
    members_.insert(it, std::move(s));
    return true;
}

std::vector<std::uint64_t> Family::ranks() const {
    std::vector<std::uint64_t> out;
    out.reserve(members_.size());
    if (members_.empty()) return out;
    BinomialTable table(n_, k_);
    for (const auto& s : members_) out.push_back(colex_rank(s.elements(), table));
    return out;
}

Family lex_initial_segment(std::uint64_t size, int k, int n) {
    check_ground(n, k);
    if (size > binom(n, k))
        throw InvalidArgument("lex_initial_segment: size exceeds C(n,k)");
    std::vector<KSet> out;
    out.reserve(size);
    std::vector<Vertex> cur(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) cur[i] = static_cast<Vertex>(i + 1);
    for (std::uint64_t t = 0; t < size; ++t) {
        out.push_back(KSet::from_sorted(cur));
        // Lex successor: bump the rightmost position that still has room.
        int i = k - 1;
        while (i >= 0 && cur[i] == static_cast<Vertex>(n - k + i + 1)) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return Family::from_sets(n, k, std::move(out));
}

Family colex_initial_segment(std::uint64_t size, int k, std::optional<int> n) {
    int ground = k;
    if (n) {
        ground = *n;
        check_ground(ground, k);
        if (size > binom(ground, k))
            throw InvalidArgument("colex_initial_segment: size exceeds C(n,k)");
    } else {
        while (binom(ground, k) < size) ++ground;
    }
    std::vector<std::uint64_t> ranks(size);
    for (std::uint64_t i = 0; i < size; ++i) ranks[i] = i;
    return Family::from_colex_ranks(ground, k, ranks);
}

Family lower_shadow(const Family& f, int level) {
    if (level < 0 || level > f.k())
        throw InvalidArgument("lower_shadow: level must be in 0..k");
    int k = f.k();
    int r = k - level;
    std::vector<std::uint64_t> ranks;
    BinomialTable table(f.n(), k);
    std::vector<Vertex> sub(static_cast<std::size_t>(r));
    for (const auto& s : f.members()) {
        for_each_combination(k, r, [&](std::span<const int> idx) {
            for (int i = 0; i < r; ++i) sub[i] = s[idx[i]];
            ranks.push_back(colex_rank(sub, table));
        });
    }
    std::sort(ranks.begin(), ranks.end());
    ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
    return Family::from_colex_ranks(f.n(), r, ranks);
}

Family upper_shadow(const Family& f, int level) {
    if (level < 0 || f.k() + level > f.n())
        throw InvalidArgument("upper_shadow: need 0 <= level and k + level <= n");
    int n = f.n();
    int k = f.k();
    int r = k + level;
    std::vector<std::uint64_t> ranks;
    BinomialTable table(n, r);
    std::vector<Vertex> rest;
    std::vector<Vertex> sup(static_cast<std::size_t>(r));
    for (const auto& s : f.members()) {
        rest.clear();
        for (Vertex v = 1; v <= static_cast<Vertex>(n); ++v)
            if (!s.contains(v)) rest.push_back(v);
        for_each_combination(static_cast<int>(rest.size()), level, [&](std::span<const int> idx) {
            auto added = s.elements();
            std::size_t a = 0, b = 0, o = 0;
            while (a < added.size() || b < idx.size()) {
                if (b == idx.size() || (a < added.size() && added[a] < rest[idx[b]]))
                    sup[o++] = added[a++];
                else
                    sup[o++] = rest[idx[b++]];
            }
            ranks.push_back(colex_rank(sup, table));
        });
    }
    std::sort(ranks.begin(), ranks.end());
    ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
    return Family::from_colex_ranks(n, r, ranks);
}

double binom_real(double s, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= (s - i) / (i + 1);
    return r;
}

double lovasz_s(std::uint64_t size, int k) {
    if (k < 1) throw InvalidArgument("lovasz_s: k must be >= 1");
    if (size == 0) throw InvalidArgument("lovasz_s: size must be >= 1");
    double lo = k;
    double hi = static_cast<double>(k) + static_cast<double>(size);
    double target = static_cast<double>(size);
    for (int it = 0; it < 200 && hi - lo > 1e-9; ++it) {
        double mid = 0.5 * (lo + hi);
        if (binom_real(mid, k) < target) lo = mid; else hi = mid;
    }
    // Exact integer solutions come out within tolerance; snap them so callers
    // comparing against C(s, 2) see the integer value.
    double mid = 0.5 * (lo + hi);
    double rounded = std::round(mid);
    if (std::abs(mid - rounded) < 1e-9 && binom_real(rounded, k) == target) return rounded;
    return mid;
}

double kk_bound_i(std::uint64_t size, int k) {
    if (k < 3) throw InvalidArgument("kk_bound_i: k must be >= 3");
    return binom_real(lovasz_s(size, k), 2);
}

KKBoundReport kk_bound_ii(std::uint64_t size, int n) {
    if (n < 2) throw InvalidArgument("kk_bound_ii: n must be >= 2");
    std::uint64_t pairs = binom(n, 2);
    if (size == 0 || size >= pairs)
        throw InvalidArgument("kk_bound_ii: need 0 < size < C(n,2)");
    auto nn = static_cast<std::uint64_t>(n);
    for (std::uint64_t c = 0; c < nn; ++c) {
        std::uint64_t base = c * nn - c * (c + 1) / 2;
        if (base > size) break;
        std::uint64_t d = size - base;
        if (d + c + 1 < nn) {
            KKBoundReport rep;
            rep.family_size = size;
            rep.s_real = lovasz_s(size, 2);
            rep.c = c;
            rep.d = d;
            rep.bound_value = static_cast<double>(c) * static_cast<double>(binom(nn - c, 2)) +
                              2.0 * static_cast<double>(d) * static_cast<double>(n) / 5.0;
            rep.asserted = n >= 100 && c <= 8;
            return rep;
        }
    }
    throw InternalError("kk_bound_ii: no (c, d) decomposition for size " + std::to_string(size));
}

double kk_bound_iii(std::uint64_t size, int n) {
    if (size < 1 || size + 1 > static_cast<std::uint64_t>(n))
        throw InvalidArgument("kk_bound_iii: need 1 <= size <= n-1");
    auto rest = static_cast<std::uint64_t>(n) - size - 1;
    return static_cast<double>(size) * static_cast<double>(binom(rest, 2)) +
           static_cast<double>(binom(size, 2)) * static_cast<double>(rest);
}

Family read_family(std::istream& in, int n, std::optional<int> k) {
    std::vector<KSet> sets;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        auto last = line.find_last_not_of(" \t\r");
        KSet s = parse_kset(std::string_view(line).substr(first, last - first + 1), lineno);
        if (!k) k = static_cast<int>(s.size());
        if (!s.is_valid(n, *k))
            throw ParseError("'" + format_kset(s) + "' is not a " + std::to_string(*k) + "-subset of [" +
                                 std::to_string(n) + "]",
                             lineno);
        sets.push_back(std::move(s));
    }
    if (!k) throw ParseError("family file has no sets and no k was given", 0);
    return Family::from_sets(n, *k, std::move(sets));
}

void write_family(std::ostream& out, const Family& f) {
    for (const auto& s : f.members()) out << format_kset(s) << '\n';
}

}  // namespace berge
