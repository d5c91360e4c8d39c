#include "berge/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "berge/combinatorics.hpp"
#include "berge/construct.hpp"
#include "berge/errors.hpp"
#include "berge/ham_decomp.hpp"
#include "berge/kk_check.hpp"
#include "berge/verify.hpp"

namespace berge {

namespace {

struct RunConfig {
    int n = 0;
    int k = 0;
    std::string m_file;
    bool auto_m = false;
    std::uint64_t seed = 0;
    std::string out;
    std::uint64_t cap = 5'000'000;
    bool force_range = false;
    int threads = 1;
    std::string in;
    int level = 1;
    std::string dir = "lower";
    std::string family;
    bool exhaustive = false;
    std::uint64_t samples = 1000;
    bool directed = false;
    bool json = false;
    std::string engine = "auto";
    std::string matcher = "pf";
};

// Writes to --out, or to `out` when no path is given. The file is written
// whole and renamed so a failed run never leaves half a file behind.
template <class F>
void emit(const std::string& path, std::ostream& out, F&& write) {
    if (path.empty() || path == "-") {
        write(out);
        return;
    }
    std::string tmp = path + ".tmp";
    {
        std::ofstream file(tmp);
        if (!file) throw InvalidArgument("cannot open " + path + " for writing");
        write(file);
        if (!file) throw InvalidArgument("write to " + path + " failed");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw InvalidArgument("cannot rename into " + path);
}

MatchingAlgorithm parse_matcher(const std::string& name) {
    return name == "hk" ? MatchingAlgorithm::hopcroft_karp : MatchingAlgorithm::pothen_fan;
}

MatchingEngine parse_engine(const std::string& name) {
    if (name == "explicit") return MatchingEngine::explicit_graph;
    if (name == "pair") return MatchingEngine::pair_graph;
    return MatchingEngine::automatic;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path, 0);
    return in;
}

int cmd_decompose(const RunConfig& c, std::ostream& out, std::ostream& err) {
    std::optional<Family> M;
    if (!c.m_file.empty()) {
        auto in = open_input(c.m_file);
        M = read_family(in, c.n, c.k);
    } else if (!c.auto_m) {
        M = Family(c.n, c.k);
    }
    DecomposeOptions opts;
    opts.cap = c.cap;
    opts.force_range = c.force_range;
    opts.threads = c.threads;
    opts.engine = parse_engine(c.engine);
    opts.matcher = parse_matcher(c.matcher);
    opts.on_warning = [&err](const std::string& w) { err << w << '\n'; };
    try {
        Decomposition d = decompose(c.n, c.k, M, c.seed, opts);
        emit(c.out, out, [&](std::ostream& o) { write_hbd(o, d); });
        if (!c.out.empty()) err << "wrote " << d.cycles.size() << " cycles to " << c.out << '\n';
        return exit_ok;
    } catch (const DivisibilityError& e) {
        err << "error: " << e.what() << '\n';
        err << "admissible |M|: " << e.residue() << " (use --auto-m or --m-file)\n";
        return exit_divisibility;
    } catch (const MatchingInfeasible& e) {
        err << "error: " << e.what() << '\n';
        err << "hall certificate: |S| = " << e.violator().size() << " |N(S)| = " << e.neighbourhood_size() << '\n';
        err << "S:";
        for (const auto& s : e.violator()) err << ' ' << format_kset(s);
        err << '\n';
        return exit_infeasible;
    } catch (const SizeCapExceeded& e) {
        err << "error: " << e.what() << " (raise with --cap)\n";
        return exit_size_cap;
    }
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
    auto in = open_input(c.in);
    std::string first;
    if (!std::getline(in, first)) throw ParseError("empty file", 1);
    in.seekg(0);
    CheckResult r;
    std::string what;
    if (first.rfind("HAMDEC", 0) == 0) {
        HamDecomposition d = read_hamdec(in);
        r = verify_ham_decomposition(d);
        what = "HAMDEC n=" + std::to_string(d.n) + " cycles=" + std::to_string(d.cycles.size());
    } else {
        HbdFile f = read_hbd(in);
        r = verify_hbd(f);
        what = "HBD n=" + std::to_string(f.n) + " k=" + std::to_string(f.k) + " cycles=" + std::to_string(f.cycles.size());
    }
    if (!r) {
        err << "FAIL " << what << ": " << r.message << '\n';
        return exit_failed;
    }
    out << "OK " << what << '\n';
    return exit_ok;
}

int cmd_shadow(const RunConfig& c, std::ostream& out, std::ostream&) {
    auto in = open_input(c.family);
    Family f = read_family(in, c.n, c.k ? std::optional<int>(c.k) : std::nullopt);
    Family s = c.dir == "upper" ? upper_shadow(f, c.level) : lower_shadow(f, c.level);
    emit(c.out, out, [&](std::ostream& o) {
        write_family(o, s);
        o << "# size " << s.size() << '\n';
    });
    return exit_ok;
}

int cmd_kk_check(const RunConfig& c, std::ostream& out, std::ostream&) {
    KKCheckOptions o;
    o.n = c.n;
    o.k = c.k;
    o.exhaustive = c.exhaustive;
    o.samples = c.samples;
    o.seed = c.seed;
    o.threads = c.threads;
    KKCheckReport report = kk_check(o);
    for (const auto& line : report.lines)
        out << (line.ok ? "PASS " : "FAIL ") << line.name << (line.detail.empty() ? "" : ": ") << line.detail << '\n';
    out << (report.ok() ? "kk-check passed\n" : "kk-check FAILED\n");
    return report.ok() ? exit_ok : exit_failed;
}

int cmd_ham(const RunConfig& c, std::ostream& out, std::ostream&) {
    HamDecomposition d;
    if (c.directed) {
        DkSearchOptions o;
        o.threads = c.threads;
        d = dk_decompose_cached(c.n, c.seed, o);
    } else {
        d = c.n % 2 ? walecki_decompose(c.n) : walecki_even_decompose(c.n);
    }
    if (auto r = verify_ham_decomposition(d); !r) throw InternalError("Hamilton decomposition failed: " + r.message);
    emit(c.out, out, [&](std::ostream& o) { write_hamdec(o, d); });
    return exit_ok;
}

int cmd_bench(const RunConfig& c, std::ostream& out, std::ostream& err) {
    DecomposeOptions opts;
    opts.cap = c.cap;
    opts.force_range = true;
    opts.threads = c.threads;
    opts.engine = parse_engine(c.engine);
    opts.matcher = parse_matcher(c.matcher);
    StageTimes t;
    opts.times = &t;
    std::optional<Family> M;
    if (!c.m_file.empty()) {
        auto in = open_input(c.m_file);
        M = read_family(in, c.n, c.k);
    }
    auto start = std::chrono::steady_clock::now();
    Decomposition d;
    try {
        d = decompose(c.n, c.k, M, c.seed, opts);
    } catch (const MatchingInfeasible& e) {
        err << "error: " << e.what() << '\n';
        return exit_infeasible;
    } catch (const SizeCapExceeded& e) {
        err << "error: " << e.what() << '\n';
        return exit_size_cap;
    }
    double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.json) {
        nlohmann::ordered_json j;
        j["n"] = c.n;
        j["k"] = c.k;
        j["seed"] = c.seed;
        j["threads"] = c.threads;
        j["cycles"] = d.cycles.size();
        j["msize"] = d.M.size();
        j["case"] = case_marker(d.provenance);
        j["engine"] = t.engine == MatchingEngine::pair_graph ? "pair" : "explicit";
        j["matcher"] = c.matcher;
        j["edges"] = t.aux_edges;
        j["graph_bytes"] = t.graph_bytes;
        j["seconds"] = {{"hamilton", t.hamilton}, {"graph", t.graph},   {"matching", t.matching},
                        {"assembly", t.assembly}, {"verify", t.verify}, {"total", total}};
        out << j.dump() << '\n';
        return exit_ok;
    }
    std::ostringstream s;
    s << std::fixed << std::setprecision(3);
    s << "n " << c.n << " k " << c.k << " seed " << c.seed << " threads " << c.threads << '\n';
    s << "cycles " << d.cycles.size() << " msize " << d.M.size() << " case " << case_marker(d.provenance) << '\n';
    s << "engine " << (t.engine == MatchingEngine::pair_graph ? "pair" : "explicit") << " matcher " << c.matcher << '\n';
    s << "edges " << t.aux_edges << '\n';
    s << "graph_mb " << static_cast<double>(t.graph_bytes) / (1 << 20) << '\n';
    s << "stage      seconds\n";
    s << "hamilton   " << t.hamilton << '\n';
    s << "graph      " << t.graph << '\n';
    s << "matching   " << t.matching << '\n';
    s << "assembly   " << t.assembly << '\n';
    s << "verify     " << t.verify << '\n';
    s << "total      " << total << '\n';
    out << s.str();
    return exit_ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hamilton Berge cycle decompositions of complete k-uniform hypergraphs", "berge"};
    app.require_subcommand(1);
    RunConfig c;

    auto* dec = app.add_subcommand("decompose", "Build a decomposition of K_n^(k) - M and write it as HBD v1");
    dec->add_option("--n", c.n, "Number of vertices")->required();
    dec->add_option("--k", c.k, "Edge size")->required();
    auto* mfile = dec->add_option("--m-file", c.m_file, "Family file with the removed sets M");
    dec->add_flag("--auto-m", c.auto_m, "Choose M automatically")->excludes(mfile);
    dec->add_option("--seed", c.seed, "Seed for the DK_n search");
    dec->add_option("--out", c.out, "Output path (default stdout)");
    dec->add_option("--cap", c.cap, "Largest C(n,k) accepted");
    dec->add_flag("--force-range", c.force_range, "Do not warn outside the proven range");
    dec->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
    dec->add_option("--engine", c.engine, "Matching graph: auto, explicit or pair")
        ->check(CLI::IsMember({"auto", "explicit", "pair"}));
    dec->add_option("--matcher", c.matcher, "Matching algorithm: pf (default) or hk")
        ->check(CLI::IsMember({"pf", "hk"}));

    auto* ver = app.add_subcommand("verify", "Check an HBD v1 or HAMDEC v1 file");
    ver->add_option("--in", c.in, "Input path")->required();

    auto* sh = app.add_subcommand("shadow", "Print the lower or upper shadow of a family");
    sh->add_option("--n", c.n, "Ground set size")->required();
    sh->add_option("--k", c.k, "Set size (default: from the file)");
    sh->add_option("--level", c.level, "Shadow level")->required();
    sh->add_option("--dir", c.dir, "lower or upper")->check(CLI::IsMember({"lower", "upper"}));
    sh->add_option("--family", c.family, "Family file")->required();
    sh->add_option("--out", c.out, "Output path (default stdout)");

    auto* kk = app.add_subcommand("kk-check", "Check shadow minimality and the shadow lower bounds");
    kk->add_option("--n", c.n, "Ground set size")->required();
    kk->add_option("--k", c.k, "Set size")->required();
    auto* ex = kk->add_flag("--exhaustive", c.exhaustive, "Exhaustive minimum over larger universes");
    kk->add_option("--samples", c.samples, "Random families per size")->excludes(ex);
    kk->add_option("--seed", c.seed, "Sampling seed");
    kk->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);

    auto* ham = app.add_subcommand("ham", "Write a Hamilton decomposition as HAMDEC v1");
    ham->add_option("--n", c.n, "Number of vertices")->required();
    ham->add_flag("--directed", c.directed, "Decompose the complete digraph");
    ham->add_option("--seed", c.seed, "Search seed (directed, even n)");
    ham->add_option("--out", c.out, "Output path (default stdout)");
    ham->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);

    auto* bench = app.add_subcommand("bench", "Time the construction stages");
    bench->add_option("--n", c.n, "Number of vertices")->required();
    bench->add_option("--k", c.k, "Edge size")->required();
    bench->add_option("--seed", c.seed, "Seed for the DK_n search");
    bench->add_option("--m-file", c.m_file, "Family file with the removed sets M");
    bench->add_option("--cap", c.cap, "Largest C(n,k) accepted");
    bench->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
    bench->add_option("--engine", c.engine, "Matching graph: auto, explicit or pair")
        ->check(CLI::IsMember({"auto", "explicit", "pair"}));
    bench->add_option("--matcher", c.matcher, "Matching algorithm: pf (default) or hk")
        ->check(CLI::IsMember({"pf", "hk"}));
    bench->add_flag("--json", c.json, "Print one JSON object instead of the table");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_parse;
    }

    try {
        if (dec->parsed()) return cmd_decompose(c, out, err);
        if (ver->parsed()) return cmd_verify(c, out, err);
        if (sh->parsed()) return cmd_shadow(c, out, err);
        if (kk->parsed()) return cmd_kk_check(c, out, err);
        if (ham->parsed()) return cmd_ham(c, out, err);
        if (bench->parsed()) return cmd_bench(c, out, err);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return exit_parse;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return exit_parse;
    } catch (const ImpossibleByTillson& e) {
        err << "error: ImpossibleByTillson: " << e.what() << '\n';
        return exit_failed;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_failed;
    }
    return exit_parse;
}

}  // namespace berge
