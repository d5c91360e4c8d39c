#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace berge {

using Vertex = std::uint32_t;

/// A k-element subset of [n] = {1, ..., n}, stored as a strictly increasing
/// vertex list. Construction canonicalizes; `validate` checks it against (n, k).
class KSet {
public:
    KSet() = default;
    KSet(std::initializer_list<Vertex> elems);
    explicit KSet(std::vector<Vertex> elems);

    /// Takes the list as is, without sorting or checking; readers of untrusted
    /// files use this and leave canonicity to `is_valid`.
    static KSet from_sorted(std::vector<Vertex> elems);

    std::span<const Vertex> elements() const noexcept { return elems_; }
    std::size_t size() const noexcept { return elems_.size(); }
    Vertex operator[](std::size_t i) const noexcept { return elems_[i]; }
    Vertex max() const noexcept { return elems_.back(); }
    bool contains(Vertex v) const noexcept;
    bool contains_pair(Vertex x, Vertex y) const noexcept { return contains(x) && contains(y); }
    bool is_subset_of(const KSet& other) const noexcept;

    /// Throws InvalidArgument unless the set has exactly k elements, all in 1..n.
    void validate(int n, int k) const;
    bool is_valid(int n, int k) const noexcept;

    friend bool operator==(const KSet&, const KSet&) = default;

private:
    std::vector<Vertex> elems_;
};

/// A < B iff the largest element of the symmetric difference lies in B.
bool colex_less(const KSet& a, const KSet& b) noexcept;
/// A < B iff the smallest element of the symmetric difference lies in A.
bool lex_less(const KSet& a, const KSet& b) noexcept;

struct ColexLess {
    bool operator()(const KSet& a, const KSet& b) const noexcept { return colex_less(a, b); }
};
struct LexLess {
    bool operator()(const KSet& a, const KSet& b) const noexcept { return lex_less(a, b); }
};

/// [n] minus s.
KSet complement(const KSet& s, int n);

/// `1-4-7` form.
std::string format_kset(const KSet& s);
/// Splits `1-4-7` into its numbers, in file order. Syntax errors only.
std::vector<Vertex> parse_vertex_list(std::string_view text, std::size_t line = 0);
/// Parses `1-4-7` into a canonical KSet; a repeated vertex is a ParseError.
KSet parse_kset(std::string_view text, std::size_t line = 0);

}  // namespace berge
