#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace berge {

/// Largest number of (j + level)-sets all of whose j-subsets lie in T, over
/// every T in [n]^(j) with |T| = t, indexed by t. Exhaustive over all 2^C(n,j)
/// choices of T, so C(n, j) must be at most 28.
std::vector<std::uint64_t> max_full_supersets(int n, int j, int level);

/// Exact minimum lower shadow at `level` over all families of each size
/// 0..C(n,k), via max_full_supersets(n, k - level, level).
std::vector<std::uint64_t> exact_min_lower_shadow(int n, int k, int level);
/// Exact minimum upper shadow at `level` over all families of each size, by
/// complementation: every (k+level)-set missed by S has all its k-subsets
/// outside S.
std::vector<std::uint64_t> exact_min_upper_shadow(int n, int k, int level);

/// Smallest shadow sizes seen over `samples` uniform random families of
/// each size 1..C(n,k). Entry 0 is unused. Deterministic in `seed`.
struct SampledShadows {
    std::vector<std::uint64_t> min_lower;  // level 1
    std::vector<std::uint64_t> min_upper;  // level 1 (empty when k == n)
};
SampledShadows sample_min_shadows_serial(int n, int k, std::uint64_t samples, std::uint64_t seed);
/// Same result as the serial version; sizes are distributed across threads.
SampledShadows sample_min_shadows_parallel(int n, int k, std::uint64_t samples, std::uint64_t seed,
                                           int threads);

/// |lower_shadow(colex_initial_segment(s, k, n), level)| for s = 0..max_size,
/// computed incrementally in one pass.
std::vector<std::uint64_t> colex_segment_lower_shadow_sizes(int n, int k, int level, std::uint64_t max_size);
/// |upper_shadow(lex_initial_segment(s, k, n), level)| for s = 0..max_size.
std::vector<std::uint64_t> lex_segment_upper_shadow_sizes(int n, int k, int level, std::uint64_t max_size);

struct KKCheckOptions {
    int n = 0;
    int k = 0;
    bool exhaustive = false;
    std::uint64_t samples = 1000;
    std::uint64_t seed = 0;
    int threads = 1;
};

struct KKCheckLine {
    std::string name;
    bool ok = true;
    std::string detail;
};

struct KKCheckReport {
    std::vector<KKCheckLine> lines;
    bool ok() const noexcept;
};

/// Checks that initial segments minimize shadows and that the three shadow
/// bounds never exceed the exact minimal shadows in their stated ranges,
/// plus fixed spot checks of the pair bounds at n = 100.
KKCheckReport kk_check(const KKCheckOptions& opts);

}  // namespace berge
