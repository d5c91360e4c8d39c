#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "berge/errors.hpp"
#include "berge/ham_decomp.hpp"

namespace berge {

void write_hamdec(std::ostream& out, const HamDecomposition& d) {
    out << "HAMDEC v1 n=" << d.n << " kind=" << to_string(d.kind) << " seed=" << d.seed << '\n';
    for (const auto& c : d.cycles) {
        out << 'H';
        for (Vertex v : c.order) out << ' ' << v;
        out << '\n';
    }
    for (auto [a, b] : d.leftover_matching) out << "L " << a << '-' << b << '\n';
}

namespace {

template <class T>
T parse_number(std::string_view text, std::size_t line, const char* what) {
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
        throw ParseError(std::string("bad ") + what + " '" + std::string(text) + "'", line);
    return value;
}

std::string_view field(const std::string& token, std::string_view key, std::size_t line) {
    if (token.size() <= key.size() || token.compare(0, key.size(), key) != 0 || token[key.size()] != '=')
        throw ParseError("expected '" + std::string(key) + "=...', got '" + token + "'", line);
    return std::string_view(token).substr(key.size() + 1);
}

}  // namespace

HamDecomposition read_hamdec(std::istream& in) {
    HamDecomposition d;
    std::string text;
    std::size_t line = 0;
    bool header = false;
    while (std::getline(in, text)) {
        ++line;
        if (text.empty()) continue;
        std::istringstream ss(text);
        std::string tag;
        ss >> tag;
        if (!header) {
            std::string version, n, kind, seed, extra;
            ss >> version >> n >> kind >> seed;
            if (tag != "HAMDEC" || version != "v1" || seed.empty() || (ss >> extra))
                throw ParseError("expected 'HAMDEC v1 n=<n> kind=<kind> seed=<seed>'", line);
            d.n = parse_number<int>(field(n, "n", line), line, "n");
            if (d.n < 2) throw ParseError("n must be at least 2", line);
            try {
                d.kind = parse_ham_kind(std::string(field(kind, "kind", line)));
            } catch (const InvalidArgument& e) {
                throw ParseError(e.what(), line);
            }
            d.seed = parse_number<std::uint64_t>(field(seed, "seed", line), line, "seed");
            header = true;
        } else if (tag == "H") {
            HamCycle c;
            c.directed = d.kind == HamKind::complete_digraph;
            std::string tok;
            while (ss >> tok) c.order.push_back(parse_number<Vertex>(tok, line, "vertex"));
            d.cycles.push_back(std::move(c));
        } else if (tag == "L") {
            std::string tok, extra;
            ss >> tok;
            if (ss >> extra) throw ParseError("trailing text after leftover edge", line);
            auto vs = parse_vertex_list(tok, line);
            if (vs.size() != 2) throw ParseError("leftover edge must have two vertices", line);
            d.leftover_matching.emplace_back(std::min(vs[0], vs[1]), std::max(vs[0], vs[1]));
        } else {
            throw ParseError("unknown line tag '" + tag + "'", line);
        }
    }
    if (!header) throw ParseError("missing HAMDEC header", line);
    return d;
}

}  // namespace berge
