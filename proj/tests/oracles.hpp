#pragma once

// Brute-force reference computations used only by tests. Nothing here calls
// the rank, shadow, or matching code it is used to check.

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

using Set = std::vector<unsigned>;

/// All k-subsets of [n] as sorted vectors, in no particular order.
inline std::vector<Set> all_subsets(int n, int k) {
    std::vector<Set> out;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != k) continue;
        Set s;
        for (int v = 0; v < n; ++v)
            if (mask & (1u << v)) s.push_back(static_cast<unsigned>(v + 1));
        out.push_back(s);
    }
    return out;
}

inline Set symmetric_difference(const Set& a, const Set& b) {
    Set out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

/// Largest element of the symmetric difference lies in b.
inline bool colex_before(const Set& a, const Set& b) {
    Set d = symmetric_difference(a, b);
    if (d.empty()) return false;
    return std::binary_search(b.begin(), b.end(), d.back());
}

/// Smallest element of the symmetric difference lies in a.
inline bool lex_before(const Set& a, const Set& b) {
    Set d = symmetric_difference(a, b);
    if (d.empty()) return false;
    return std::binary_search(a.begin(), a.end(), d.front());
}

inline std::vector<Set> colex_sorted(int n, int k) {
    auto v = all_subsets(n, k);
    std::sort(v.begin(), v.end(), colex_before);
    return v;
}

inline std::vector<Set> lex_sorted(int n, int k) {
    auto v = all_subsets(n, k);
    std::sort(v.begin(), v.end(), lex_before);
    return v;
}

/// Lower shadow at the given level, by testing every candidate subset.
inline std::set<Set> lower_shadow(const std::vector<Set>& family, int n, int level) {
    std::set<Set> out;
    if (family.empty()) return out;
    int r = static_cast<int>(family[0].size()) - level;
    for (const auto& t : all_subsets(n, r))
        for (const auto& s : family)
            if (std::includes(s.begin(), s.end(), t.begin(), t.end())) {
                out.insert(t);
                break;
            }
    return out;
}

inline std::set<Set> upper_shadow(const std::vector<Set>& family, int n, int level) {
    std::set<Set> out;
    if (family.empty()) return out;
    int r = static_cast<int>(family[0].size()) + level;
    for (const auto& t : all_subsets(n, r))
        for (const auto& s : family)
            if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
                out.insert(t);
                break;
            }
    return out;
}

/// Maximum bipartite matching size by exhaustive search over left vertices.
inline int max_matching_brute(const std::vector<std::vector<std::uint32_t>>& adj, int right_count) {
    std::vector<char> used(static_cast<std::size_t>(right_count), 0);
    int best = 0;
    auto rec = [&](auto&& self, std::size_t u, int cur) -> void {
        if (cur + static_cast<int>(adj.size() - u) <= best) return;
        if (u == adj.size()) {
            best = std::max(best, cur);
            return;
        }
        for (auto r : adj[u]) {
            if (!used[r]) {
                used[r] = 1;
                self(self, u + 1, cur + 1);
                used[r] = 0;
            }
        }
        self(self, u + 1, cur);
    };
    rec(rec, 0, 0);
    return best;
}

}  // namespace oracle
