#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "berge/combinatorics.hpp"
#include "berge/errors.hpp"
#include "berge/ham_decomp.hpp"
#include "berge/matching.hpp"

namespace berge {

/// Which branch of the construction produced a decomposition.
/// `general`: 4 <= k <= n-3; `triple`: k = 3 <= n-3; `n_minus_1`: k = n-1;
/// `n_minus_2`: k = n-2.
enum class ProofCase { general, triple, n_minus_1, n_minus_2 };

/// "1", "2", "3a", "3b".
std::string case_marker(ProofCase c);
ProofCase parse_case_marker(const std::string& text);
ProofCase proof_case_for(int n, int k);

/// k >= 5 and n >= 20, or k = 4 and n >= 30, or k = 3 and n >= 100.
bool in_proven_range(int n, int k);

/// C(n,k) - |M| = ell*n*(n-1) + m*n with 0 <= m < n-1.
struct Parameters {
    int n = 0;
    int k = 0;
    std::uint64_t m_set_size = 0;
    BigInt total;  ///< C(n,k) - |M|
    BigInt ell;
    BigInt m;
};

/// n does not divide C(n,k) - |M|.
class DivisibilityError : public Error {
public:
    DivisibilityError(int n, int k, std::uint64_t m_set_size, std::uint64_t residue);
    /// C(n,k) mod n: the only admissible |M| below n.
    std::uint64_t residue() const noexcept { return residue_; }

private:
    std::uint64_t residue_;
};

/// Instance larger than the configured cap on C(n,k).
class SizeCapExceeded : public Error {
public:
    using Error::Error;
};

/// The auxiliary graph has no perfect matching; carries a Hall violator.
class MatchingInfeasible : public Error {
public:
    MatchingInfeasible(std::string what, std::vector<KSet> violator, std::uint64_t neighbourhood)
        : Error(std::move(what)), violator_(std::move(violator)), neighbourhood_(neighbourhood) {}
    /// k-sets S of A_* with |N(S)| < |S|.
    const std::vector<KSet>& violator() const noexcept { return violator_; }
    std::uint64_t neighbourhood_size() const noexcept { return neighbourhood_; }

private:
    std::vector<KSet> violator_;
    std::uint64_t neighbourhood_;
};

/// Throws DivisibilityError, or InvalidArgument for k out of [3, n) or |M| >= n.
Parameters compute_parameters(int n, int k, std::uint64_t m_set_size);

/// The removed set used when none is given: empty if n | C(n,k); the disjoint
/// triples {1,2,3},{4,5,6},... for k = 3; otherwise the first C(n,k) mod n
/// sets in colex order.
Family choose_default_M(int n, int k);

/// A uniformly random admissible M (a random perfect matching when k = 3).
Family random_valid_M(int n, int k, std::mt19937_64& rng);

/// Throws InvalidArgument unless M fits (n, k): right size, and a perfect
/// matching when k = 3 and M is nonempty.
void validate_M(int n, int k, const Family& M);

/// One right vertex of the auxiliary graph.
struct BElement {
    enum class Block { B, Bprime, H };
    Block block = Block::B;
    /// Copy index i for B/Bprime, cycle index j for H (both 0-based).
    std::uint32_t block_index = 0;
    /// tail < head for undirected H edges.
    DirectedEdge edge;
    std::uint64_t index = 0;
};

/// Blocks B(0), Bprime(0), ..., B(ell-1), Bprime(ell-1), H(0), ..., H(m-1);
/// each block sorted by (tail, head). B(i) holds the edges with tail < head.
std::vector<BElement> build_B(const Parameters& p, const std::vector<HamCycle>& h_cycles);

/// A_* = [n]^(k) minus M, indexed densely in colex order.
class AStar {
public:
    AStar(int n, int k, const Family& M);
    int n() const noexcept { return n_; }
    int k() const noexcept { return k_; }
    std::uint64_t size() const noexcept { return size_; }
    std::uint64_t rank_of(std::uint64_t index) const noexcept;
    /// Index of a colex rank, or nullopt if it is in M.
    std::optional<std::uint64_t> index_of(std::uint64_t rank) const noexcept;
    KSet at(std::uint64_t index) const;
    const BinomialTable& table() const noexcept { return table_; }
    const std::vector<std::uint64_t>& removed() const noexcept { return m_ranks_; }

private:
    int n_;
    int k_;
    std::uint64_t size_;
    std::vector<std::uint64_t> m_ranks_;
    BinomialTable table_;
};

/// Left = A_*, right = B; z ~ xy iff {x,y} is inside z. OpenMP over left
/// vertices when threads > 1; the serial version is the reference.
BipartiteGraph build_aux_graph(const AStar& a_star, const std::vector<BElement>& b, int threads = 1);
BipartiteGraph build_aux_graph_serial(const AStar& a_star, const std::vector<BElement>& b);

/// The same incidence with all B elements on one unordered pair merged into a
/// single right vertex whose capacity is their number. Right index = colex
/// rank of the pair; absent pairs get capacity 0 and no edges.
BipartiteGraph build_pair_aux_graph(const AStar& a_star, const std::vector<BElement>& b, int threads = 1);

/// Exact edge count of the explicit aux graph.
std::uint64_t aux_edge_count(const AStar& a_star, const std::vector<BElement>& b);

/// Matched left (A_* index) for each B element.
std::vector<std::uint64_t> b_to_left_explicit(const MatchingResult& r, std::size_t b_size);
/// Matched lefts of each pair handed out in ascending order to the pair's B
/// elements in ascending index order.
std::vector<std::uint64_t> b_to_left_pairs(const BipartiteGraph& pair_graph, const MatchingResult& r,
                                           const std::vector<BElement>& b);

struct BergeCycle {
    std::vector<Vertex> vertices;
    /// edges[i] contains vertices[i] and vertices[i+1] (cyclically).
    std::vector<KSet> edges;
};

struct Decomposition {
    int n = 0;
    int k = 0;
    Family M{2, 1};
    std::vector<BergeCycle> cycles;
    std::uint64_t seed = 0;
    ProofCase provenance = ProofCase::general;
};

/// Walks every Hamilton cycle (the ell DK_n decompositions, then h_cycles) and
/// reads off the matched k-set of each cycle edge.
Decomposition assemble_cycles(const Parameters& p, const std::vector<std::uint64_t>& b_to_left,
                              const std::vector<BElement>& b, const std::vector<HamDecomposition>& dk,
                              const std::vector<HamCycle>& h_cycles, const AStar& a_star);

/// vertices 1..n, e_i = [n] minus v_{i+2}.
Decomposition single_cycle_n_minus_1(int n);

enum class MatchingEngine { automatic, explicit_graph, pair_graph };

struct StageTimes {
    double hamilton = 0;
    double graph = 0;
    double matching = 0;
    double assembly = 0;
    double verify = 0;
    std::uint64_t aux_edges = 0;
    std::uint64_t graph_bytes = 0;
    MatchingEngine engine = MatchingEngine::explicit_graph;
};

struct DecomposeOptions {
    /// Largest C(n,k) accepted.
    std::uint64_t cap = 5'000'000;
    /// automatic means pair_graph.
    MatchingEngine engine = MatchingEngine::automatic;
    MatchingAlgorithm matcher = MatchingAlgorithm::pothen_fan;
    int threads = 1;
    bool force_range = false;
    DkSearchOptions dk;
    std::function<void(const std::string&)> on_warning;
    StageTimes* times = nullptr;
};

/// The full construction. M defaults to choose_default_M. The result is
/// checked with verify_decomposition before it is returned.
Decomposition decompose(int n, int k, const std::optional<Family>& M, std::uint64_t seed,
                        const DecomposeOptions& opts = {});

}  // namespace berge
