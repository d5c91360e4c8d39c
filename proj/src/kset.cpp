#include "berge/kset.hpp"

#include <algorithm>
#include <charconv>

#include "berge/errors.hpp"

namespace berge {

namespace {

void require_distinct(const std::vector<Vertex>& sorted) {
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InvalidArgument("k-set has a repeated vertex");
}

}  // namespace

KSet::KSet(std::initializer_list<Vertex> elems) : KSet(std::vector<Vertex>(elems)) {}

KSet::KSet(std::vector<Vertex> elems) : elems_(std::move(elems)) {
    std::sort(elems_.begin(), elems_.end());
    require_distinct(elems_);
}

KSet KSet::from_sorted(std::vector<Vertex> elems) {
    KSet s;
    s.elems_ = std::move(elems);
    return s;
}

bool KSet::contains(Vertex v) const noexcept {
    return std::binary_search(elems_.begin(), elems_.end(), v);
}

bool KSet::is_subset_of(const KSet& other) const noexcept {
    return std::includes(other.elems_.begin(), other.elems_.end(), elems_.begin(), elems_.end());
}

bool KSet::is_valid(int n, int k) const noexcept {
    if (static_cast<int>(elems_.size()) != k) return false;
    for (std::size_t i = 0; i < elems_.size(); ++i) {
        if (elems_[i] < 1 || elems_[i] > static_cast<Vertex>(n)) return false;
        if (i > 0 && elems_[i - 1] >= elems_[i]) return false;
    }
    return true;
}

void KSet::validate(int n, int k) const {
    if (!is_valid(n, k))
        throw InvalidArgument("'" + format_kset(*this) + "' is not a " + std::to_string(k) +
                              "-subset of [" + std::to_string(n) + "]");
}

bool colex_less(const KSet& a, const KSet& b) noexcept {
    // Walk both from the top; the first differing position decides.
    auto ea = a.elements();
    auto eb = b.elements();
    auto ia = ea.rbegin();
    auto ib = eb.rbegin();
    for (; ia != ea.rend() && ib != eb.rend(); ++ia, ++ib) {
        if (*ia != *ib) return *ia < *ib;
    }
    return ea.size() < eb.size();
}

bool lex_less(const KSet& a, const KSet& b) noexcept {
    auto ea = a.elements();
    auto eb = b.elements();
    for (std::size_t i = 0; i < ea.size() && i < eb.size(); ++i) {
        if (ea[i] != eb[i]) return ea[i] < eb[i];
    }
    return ea.size() > eb.size();
}

KSet complement(const KSet& s, int n) {
    std::vector<Vertex> out;
    out.reserve(static_cast<std::size_t>(n) - s.size());
    for (Vertex v = 1; v <= static_cast<Vertex>(n); ++v)
        if (!s.contains(v)) out.push_back(v);
    return KSet::from_sorted(std::move(out));
}

std::string format_kset(const KSet& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += '-';
        out += std::to_string(s[i]);
    }
    return out;
}

std::vector<Vertex> parse_vertex_list(std::string_view text, std::size_t line) {
    std::vector<Vertex> elems;
    std::size_t pos = 0;
    while (true) {
        std::size_t dash = text.find('-', pos);
        std::string_view tok = text.substr(pos, dash == std::string_view::npos ? text.npos : dash - pos);
        Vertex v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
            throw ParseError("bad vertex '" + std::string(tok) + "' in k-set '" + std::string(text) + "'", line);
        elems.push_back(v);
        if (dash == std::string_view::npos) break;
        pos = dash + 1;
    }
    return elems;
}

KSet parse_kset(std::string_view text, std::size_t line) {
    std::vector<Vertex> elems = parse_vertex_list(text, line);
    std::sort(elems.begin(), elems.end());
    if (std::adjacent_find(elems.begin(), elems.end()) != elems.end())
        throw ParseError("repeated vertex in k-set '" + std::string(text) + "'", line);
    return KSet::from_sorted(std::move(elems));
}

}  // namespace berge
