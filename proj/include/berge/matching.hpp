#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "berge/check.hpp"

namespace berge {

/// Immutable bipartite graph in CSR form. Left vertex u is adjacent to
/// targets[offsets[u] .. offsets[u+1]), strictly ascending.
///
/// Right vertices may carry a capacity (how many left vertices they can take);
/// an empty capacity vector means every capacity is 1. A capacitated right
/// vertex stands for that many interchangeable copies.
class BipartiteGraph {
public:
    BipartiteGraph() = default;
    /// Takes ownership of CSR arrays; throws InvalidArgument unless canonical.
    BipartiteGraph(std::uint32_t left_count, std::uint32_t right_count, std::vector<std::uint64_t> offsets,
                   std::vector<std::uint32_t> targets, std::vector<std::uint32_t> capacity = {});
    static BipartiteGraph from_adjacency(std::uint32_t right_count,
                                         const std::vector<std::vector<std::uint32_t>>& adjacency,
                                         std::vector<std::uint32_t> capacity = {});

    std::uint32_t left_count() const noexcept { return left_count_; }
    std::uint32_t right_count() const noexcept { return right_count_; }
    std::uint64_t edge_count() const noexcept { return targets_.size(); }
    std::span<const std::uint32_t> neighbors(std::uint32_t u) const noexcept {
        return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
    }
    bool has_edge(std::uint32_t u, std::uint32_t v) const noexcept;
    std::uint32_t capacity(std::uint32_t v) const noexcept { return capacity_.empty() ? 1 : capacity_[v]; }
    bool capacitated() const noexcept { return !capacity_.empty(); }
    /// Sum of right capacities.
    std::uint64_t right_slots() const noexcept;
    /// Bytes held by the CSR arrays.
    std::uint64_t memory_bytes() const noexcept;

    const std::vector<std::uint64_t>& offsets() const noexcept { return offsets_; }
    const std::vector<std::uint32_t>& targets() const noexcept { return targets_; }

private:
    std::uint32_t left_count_ = 0;
    std::uint32_t right_count_ = 0;
    std::vector<std::uint64_t> offsets_{0};
    std::vector<std::uint32_t> targets_;
    std::vector<std::uint32_t> capacity_;
};

inline constexpr std::uint32_t unmatched = UINT32_MAX;

struct MatchingResult {
    /// Right partner of each left vertex, or `unmatched`.
    std::vector<std::uint32_t> left_to_right;
    std::uint64_t size = 0;
    /// Left vertices reachable from free left vertices by alternating paths;
    /// present iff the matching does not saturate the left side.
    std::optional<std::vector<std::uint32_t>> violator;
};

/// Maximum matching (respecting right capacities). Deterministic: adjacency
/// is scanned in ascending order and there is no randomness.
MatchingResult hopcroft_karp(const BipartiteGraph& g);

/// Same result contract, with phases of unrestricted depth-first searches
/// (each right vertex entered once per phase) and a persistent lookahead for
/// free slots. Far fewer phases than hopcroft_karp on the construction graphs.
MatchingResult pothen_fan(const BipartiteGraph& g);

enum class MatchingAlgorithm { hopcroft_karp, pothen_fan };

MatchingResult maximum_matching(const BipartiteGraph& g, MatchingAlgorithm algo);

/// Left vertices matched to each right vertex, ascending.
std::vector<std::vector<std::uint32_t>> right_to_left(const BipartiteGraph& g, const MatchingResult& r);

/// Re-checks edges, capacities and size, and the violator when present.
CheckResult verify_matching(const BipartiteGraph& g, const MatchingResult& r);

/// Weighted neighbourhood size: sum of capacities over N(lefts).
std::uint64_t neighbourhood_capacity(const BipartiteGraph& g, std::span<const std::uint32_t> lefts);

}  // namespace berge
