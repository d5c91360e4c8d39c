#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "berge/verify.hpp"

namespace berge {

HbdFile to_hbd(const Decomposition& d) {
    HbdFile f;
    f.n = d.n;
    f.k = d.k;
    f.msize = d.M.size();
    f.cycle_count = d.cycles.size();
    f.seed = d.seed;
    f.case_marker = case_marker(d.provenance);
    f.M.assign(d.M.members().begin(), d.M.members().end());
    f.cycles = d.cycles;
    return f;
}

void write_hbd(std::ostream& out, const Decomposition& d) {
    out << "HBD v1\n";
    out << "n=" << d.n << " k=" << d.k << " msize=" << d.M.size() << " cycles=" << d.cycles.size()
        << " seed=" << d.seed << " case=" << case_marker(d.provenance) << '\n';
    if (!d.M.empty()) {
        out << 'M';
        for (const auto& s : d.M.members()) out << ' ' << format_kset(s);
        out << '\n';
    }
    std::string line;
    for (const auto& c : d.cycles) {
        line.assign("C");
        for (std::size_t i = 0; i < c.vertices.size(); ++i) {
            line += ' ';
            line += std::to_string(c.vertices[i]);
            line += ' ';
            line += format_kset(c.edges[i]);
        }
        line += '\n';
        out << line;
    }
}

namespace {

template <class T>
T number(std::string_view text, std::size_t line, const char* what) {
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
        throw ParseError(std::string("bad ") + what + " '" + std::string(text) + "'", line);
    return value;
}

std::string_view value_of(const std::string& token, std::string_view key, std::size_t line) {
    if (token.size() <= key.size() || token.compare(0, key.size(), key) != 0 || token[key.size()] != '=')
        throw ParseError("expected '" + std::string(key) + "=...', got '" + token + "'", line);
    return std::string_view(token).substr(key.size() + 1);
}

KSet raw_kset(std::string_view text, std::size_t line) { return KSet::from_sorted(parse_vertex_list(text, line)); }

}  // namespace

HbdFile read_hbd(std::istream& in) {
    HbdFile f;
    std::string text;
    std::size_t line = 0;
    if (!std::getline(in, text)) throw ParseError("empty file", 1);
    ++line;
    if (text != "HBD v1") throw ParseError("expected 'HBD v1'", line);
    if (!std::getline(in, text)) throw ParseError("missing parameter line", line + 1);
    ++line;
    {
        std::istringstream ss(text);
        std::string t[6], extra;
        for (auto& s : t)
            if (!(ss >> s)) throw ParseError("parameter line needs n= k= msize= cycles= seed= case=", line);
        if (ss >> extra) throw ParseError("trailing text '" + extra + "' on parameter line", line);
        f.n = number<int>(value_of(t[0], "n", line), line, "n");
        f.k = number<int>(value_of(t[1], "k", line), line, "k");
        f.msize = number<std::uint64_t>(value_of(t[2], "msize", line), line, "msize");
        f.cycle_count = number<std::uint64_t>(value_of(t[3], "cycles", line), line, "cycles");
        f.seed = number<std::uint64_t>(value_of(t[4], "seed", line), line, "seed");
        f.case_marker = std::string(value_of(t[5], "case", line));
        if (f.case_marker != "1" && f.case_marker != "2" && f.case_marker != "3a" && f.case_marker != "3b")
            throw ParseError("unknown case marker '" + f.case_marker + "'", line);
    }
    bool seen_m = false;
    while (std::getline(in, text)) {
        ++line;
        std::istringstream ss(text);
        std::string tag, tok;
        if (!(ss >> tag)) throw ParseError("blank line", line);
        if (tag == "M") {
            if (seen_m || !f.cycles.empty()) throw ParseError("M line must come once, before the cycles", line);
            seen_m = true;
            while (ss >> tok) f.M.push_back(raw_kset(tok, line));
            if (f.M.empty()) throw ParseError("M line without sets", line);
        } else if (tag == "C") {
            BergeCycle c;
            while (ss >> tok) {
                c.vertices.push_back(number<Vertex>(tok, line, "vertex"));
                if (!(ss >> tok)) throw ParseError("cycle line ends with a vertex, expected an edge", line);
                c.edges.push_back(raw_kset(tok, line));
            }
            f.cycles.push_back(std::move(c));
        } else {
            throw ParseError("unknown line tag '" + tag + "'", line);
        }
    }
    return f;
}

}  // namespace berge
