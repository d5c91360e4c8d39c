#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "berge/check.hpp"
#include "berge/kset.hpp"

namespace berge {

struct DirectedEdge {
    Vertex tail = 0;
    Vertex head = 0;
    friend auto operator<=>(const DirectedEdge&, const DirectedEdge&) = default;
};

/// A Hamilton cycle on [n] given by its cyclic vertex order.
///
/// Normalized form starts at vertex 1; an undirected cycle additionally runs
/// towards the smaller of vertex 1's two neighbours.
struct HamCycle {
    std::vector<Vertex> order;
    bool directed = false;

    std::size_t size() const noexcept { return order.size(); }
    /// Consecutive pairs (v_i, v_{i+1}), wrapping around; n edges.
    std::vector<DirectedEdge> edges() const;
    HamCycle normalized() const;
    HamCycle reversed() const;

    friend auto operator<=>(const HamCycle&, const HamCycle&) = default;
};

enum class HamKind { complete_graph_odd, complete_graph_even_minus_matching, complete_digraph };

std::string to_string(HamKind kind);
HamKind parse_ham_kind(const std::string& text);

struct HamDecomposition {
    int n = 0;
    HamKind kind = HamKind::complete_graph_odd;
    std::uint64_t seed = 0;
    std::vector<HamCycle> cycles;
    /// Undirected pairs (a < b) left over; only for the even-minus-matching kind.
    std::vector<std::pair<Vertex, Vertex>> leftover_matching;
};

/// (n-1)/2 Hamilton cycles of K_n, n odd >= 3, by the rotational zig-zag.
HamDecomposition walecki_decompose(int n);
/// n/2 - 1 Hamilton cycles of K_n plus a perfect matching, n even >= 4.
HamDecomposition walecki_even_decompose(int n);

struct DkSearchOptions {
    int max_restarts = 1000;
    /// Switching moves allowed per restart, as a multiple of n^2.
    std::uint64_t moves_per_n2 = 200;
    int threads = 1;
};

/// n-1 directed Hamilton cycles partitioning DK_n, n >= 2 and n not in {4, 6}.
/// Odd n doubles walecki_decompose and ignores the seed; even n runs the
/// seeded switching search.
HamDecomposition dk_decompose(int n, std::uint64_t seed, const DkSearchOptions& opts = {});

/// As dk_decompose, reading and writing `$BERGE_CACHE_DIR/dk_<n>_<seed>.hamdec`
/// when the variable is set. Cached files are re-verified on load.
HamDecomposition dk_decompose_cached(int n, std::uint64_t seed, const DkSearchOptions& opts = {});

struct ExhaustiveResult {
    std::optional<HamDecomposition> decomposition;
    std::uint64_t nodes = 0;
};

/// Exact-cover backtracking over all directed Hamilton cycles of DK_n,
/// 2 <= n <= 8. Returns the first decomposition found, or none.
ExhaustiveResult exhaustive_dk_search(int n);

/// Exhaustive certificate that DK_n has no Hamilton decomposition; n must be
/// 4 or 6. Returns the number of search nodes.
std::uint64_t prove_impossible_small(int n);

/// First m cycles of d in sorted normalized order.
std::vector<HamCycle> select_m_cycles(const HamDecomposition& d, std::size_t m);

/// Cycle validity, pairwise edge-disjointness, exact cover of the host
/// (di)graph minus the leftover, and the cycle-count formula for d.kind.
CheckResult verify_ham_decomposition(const HamDecomposition& d);

/// `HAMDEC v1 n=<n> kind=<kind> seed=<seed>`, then `H v1 ... vn` per cycle,
/// then `L a-b` per leftover pair.
void write_hamdec(std::ostream& out, const HamDecomposition& d);
HamDecomposition read_hamdec(std::istream& in);

}  // namespace berge
