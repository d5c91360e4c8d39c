#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "berge/check.hpp"
#include "berge/construct.hpp"
#include "berge/matching.hpp"

namespace berge {

/// An HBD v1 file as written, before any semantic check. k-sets keep their
/// file order so that non-canonical sets reach the verifier instead of being
/// silently repaired.
struct HbdFile {
    int n = 0;
    int k = 0;
    std::uint64_t msize = 0;
    std::uint64_t cycle_count = 0;
    std::uint64_t seed = 0;
    std::string case_marker;
    std::vector<KSet> M;
    std::vector<BergeCycle> cycles;
};

void write_hbd(std::ostream& out, const Decomposition& d);
/// Syntax only; throws ParseError with the line number.
HbdFile read_hbd(std::istream& in);
HbdFile to_hbd(const Decomposition& d);

/// Vertex permutation, edge validity, distinct edges, and {v_i, v_{i+1}} in e_i.
CheckResult verify_berge_cycle(const BergeCycle& c, int n, int k);

/// Header consistency, M, the cycle count, every cycle, and exact coverage of
/// [n]^(k) minus M (checked on sorted colex ranks).
CheckResult verify_hbd(const HbdFile& f);
CheckResult verify_decomposition(const Decomposition& d);

/// Recomputes N(violator) by brute force (capacity-weighted) and checks
/// |N| < |violator|.
CheckResult hall_certificate_check(const BipartiteGraph& g, std::span<const std::uint32_t> violator);

}  // namespace berge
