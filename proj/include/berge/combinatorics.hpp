#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "berge/kset.hpp"

namespace berge {

using BigInt = boost::multiprecision::cpp_int;

/// Exact C(n, k); throws InvalidArgument if the result does not fit in 64 bits.
std::uint64_t binom(std::uint64_t n, std::uint64_t k);
BigInt binom_big(std::uint64_t n, std::uint64_t k);

/// Binomial coefficients C(i, j) for i <= max_n, j <= max_k, for rank arithmetic
/// in hot loops. Entries that overflow 64 bits saturate to UINT64_MAX.
class BinomialTable {
public:
    BinomialTable(int max_n, int max_k);
    std::uint64_t operator()(int i, int j) const noexcept {
        return j > max_k_ || j < 0 || i < j ? 0 : table_[static_cast<std::size_t>(i) * (max_k_ + 1) + j];
    }
    int max_n() const noexcept { return max_n_; }
    int max_k() const noexcept { return max_k_; }

private:
    int max_n_;
    int max_k_;
    std::vector<std::uint64_t> table_;
};

/// 0-based position of s in colex order: sum over sorted elements e_i
/// (i = 1..k) of C(e_i - 1, i).
std::uint64_t colex_rank(const KSet& s);
std::uint64_t colex_rank(std::span<const Vertex> sorted, const BinomialTable& table);
/// Inverse of colex_rank; the result does not depend on n.
KSet colex_unrank(std::uint64_t rank, int k);
/// As above, but rejects rank >= C(n, k).
KSet colex_unrank(std::uint64_t rank, int k, int n);
void colex_unrank(std::uint64_t rank, std::span<Vertex> out, const BinomialTable& table);
/// Advances a sorted k-set to its colex successor (in place). The ground set
/// is unbounded, so this never fails.
void colex_next(std::span<Vertex> elems) noexcept;

/// Duplicate-free family of k-subsets of [n], kept sorted in colex order.
class Family {
public:
    Family(int n, int k);
    /// Validates each set and rejects duplicates.
    static Family from_sets(int n, int k, std::vector<KSet> sets);
    /// From strictly ascending colex ranks (all below C(n, k)).
    static Family from_colex_ranks(int n, int k, std::span<const std::uint64_t> ranks);

    int n() const noexcept { return n_; }
    int k() const noexcept { return k_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    std::span<const KSet> members() const noexcept { return members_; }
    const KSet& operator[](std::size_t i) const noexcept { return members_[i]; }

    bool contains(const KSet& s) const noexcept;
    /// Returns false (and leaves the family unchanged) if s is already present.
    bool insert(KSet s);
    /// Colex ranks of the members, ascending.
    std::vector<std::uint64_t> ranks() const;

    friend bool operator==(const Family&, const Family&) = default;

private:
    int n_;
    int k_;
    std::vector<KSet> members_;
};

/// First `size` members of [n]^(k) in lex order.
Family lex_initial_segment(std::uint64_t size, int k, int n);
/// First `size` members of [n]^(k) in colex order; n defaults to the smallest
/// ground set that holds them.
Family colex_initial_segment(std::uint64_t size, int k, std::optional<int> n = std::nullopt);

/// All (k - level)-sets contained in some member.
Family lower_shadow(const Family& f, int level);
/// All (k + level)-sets containing some member.
Family upper_shadow(const Family& f, int level);

/// s(s-1)...(s-k+1)/k! for real s.
double binom_real(double s, int k);
/// The s >= k with binom_real(s, k) = size, to 1e-9.
double lovasz_s(std::uint64_t size, int k);
/// C(s, 2) for s = lovasz_s(size, k): lower bound on the (k-2)th lower shadow.
double kk_bound_i(std::uint64_t size, int k);

struct KKBoundReport {
    std::uint64_t family_size = 0;
    double s_real = 0;
    std::uint64_t c = 0;
    std::uint64_t d = 0;
    double bound_value = 0;
    /// n >= 100 and c <= 8: the regime where the bound is known to hold.
    bool asserted = false;
};

/// Decomposes size = c*n - C(c+1, 2) + d with d < n - (c+1) and evaluates
/// c*C(n-c, 2) + 2dn/5, a lower bound on the upper shadow of size pairs.
KKBoundReport kk_bound_ii(std::uint64_t size, int n);
/// size*C(n-size-1, 2) + C(size, 2)*(n-size-1), a lower bound on the second
/// upper shadow of size pairs, for 1 <= size <= n-1.
double kk_bound_iii(std::uint64_t size, int n);

/// One k-set per line in `1-4-7` form; blanks and `#` lines skipped. k is
/// taken from `k` or else from the first set.
Family read_family(std::istream& in, int n, std::optional<int> k = std::nullopt);
void write_family(std::ostream& out, const Family& f);

}  // namespace berge
