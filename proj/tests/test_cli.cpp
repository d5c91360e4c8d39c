#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

#include "berge/cli.hpp"

using namespace berge;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "berge_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream(p) << text;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("decompose exit codes") {
    auto ok = run({"decompose", "--n", "9", "--k", "7"});
    CHECK(ok.code == exit_ok);
    CHECK(ok.out.rfind("HBD v1\nn=9 k=7 msize=0 cycles=4 seed=0 case=3b\n", 0) == 0);
    CHECK(ok.err.find("proven range") != std::string::npos);

    auto quiet = run({"decompose", "--n", "9", "--k", "7", "--force-range"});
    CHECK(quiet.err.empty());
    CHECK(quiet.out == ok.out);

    auto div = run({"decompose", "--n", "8", "--k", "4"});
    CHECK(div.code == exit_divisibility);
    CHECK(div.err.find("6") != std::string::npos);
    CHECK(run({"decompose", "--n", "8", "--k", "4", "--auto-m", "--force-range"}).code == exit_ok);

    CHECK(run({"decompose", "--n", "5", "--k", "4", "--force-range"}).code == exit_ok);
    CHECK(run({"decompose", "--n", "9", "--k", "4", "--cap", "100"}).code == exit_size_cap);
    CHECK(run({"decompose", "--n", "6", "--k", "3", "--auto-m", "--force-range"}).code == exit_failed);
    CHECK(run({"decompose", "--n", "5", "--k", "2"}).code == exit_parse);
    CHECK(run({"decompose", "--k", "4"}).code == exit_parse);
    CHECK(run({"decompose", "--n", "9", "--k", "7", "--engine", "fast"}).code == exit_parse);
    CHECK(run({}).code == exit_parse);
}

TEST_CASE("decompose with an M file") {
    auto m = scratch("m108.txt");
    write_file(m, "# five sets\n1-2-3-4-5-6-7-8\n1-2-3-4-5-6-7-9\n1-2-3-4-5-6-8-9\n1-2-3-4-5-7-8-9\n1-2-3-4-6-7-8-9\n");
    auto r = run({"decompose", "--n", "10", "--k", "8", "--m-file", m.string(), "--force-range"});
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("msize=5") != std::string::npos);
    write_file(m, "1-2-3-4-5-6-7-x\n");
    CHECK(run({"decompose", "--n", "10", "--k", "8", "--m-file", m.string()}).code == exit_parse);
    CHECK(run({"decompose", "--n", "10", "--k", "8", "--m-file", scratch("missing.txt").string()}).code == exit_parse);
}

TEST_CASE("verify round trip and failures") {
    auto f = scratch("d97.hbd");
    CHECK(run({"decompose", "--n", "9", "--k", "7", "--force-range", "--out", f.string()}).code == exit_ok);
    auto good = run({"verify", "--in", f.string()});
    CHECK(good.code == exit_ok);
    CHECK(good.out.find("OK") != std::string::npos);

    std::string text = slurp(f);
    auto bad = scratch("bad.hbd");
    // Swap two vertices of the first cycle line.
    auto pos = text.find("\nC 1 ");
    REQUIRE(pos != std::string::npos);
    std::string broken = text;
    broken.replace(pos + 3, 1, "2");
    auto second = broken.find(" 2 ", pos + 4);
    REQUIRE(second != std::string::npos);
    broken.replace(second + 1, 1, "1");
    write_file(bad, broken);
    auto r = run({"verify", "--in", bad.string()});
    CHECK(r.code == exit_failed);
    CHECK(r.err.find("FAIL") != std::string::npos);

    write_file(bad, "");
    CHECK(run({"verify", "--in", bad.string()}).code == exit_parse);
    write_file(bad, "HBD v1\nn=9 k=7 msize=0 cycles=4 seed=0 case=3b\nC 1 1-2-3-4-5-6-7 2\n");
    CHECK(run({"verify", "--in", bad.string()}).code == exit_parse);

    auto h = scratch("k9.hamdec");
    CHECK(run({"ham", "--n", "9", "--out", h.string()}).code == exit_ok);
    CHECK(run({"verify", "--in", h.string()}).code == exit_ok);
}

TEST_CASE("ham") {
    auto r = run({"ham", "--n", "4", "--directed"});
    CHECK(r.code == exit_failed);
    CHECK(r.err.find("ImpossibleByTillson") != std::string::npos);
    auto d = run({"ham", "--n", "8", "--directed", "--seed", "3"});
    CHECK(d.code == exit_ok);
    CHECK(d.out.rfind("HAMDEC v1 n=8 kind=complete_digraph seed=3\n", 0) == 0);
    auto e = run({"ham", "--n", "6"});
    CHECK(e.code == exit_ok);
    CHECK(e.out.find("\nL ") != std::string::npos);
}

TEST_CASE("shadow") {
    auto fam = scratch("tri.txt");
    write_file(fam, "1-2-3\n");
    auto r = run({"shadow", "--n", "5", "--level", "1", "--family", fam.string()});
    CHECK(r.code == exit_ok);
    CHECK(r.out == "1-2\n1-3\n2-3\n# size 3\n");
    auto up = run({"shadow", "--n", "4", "--level", "1", "--dir", "upper", "--family", fam.string()});
    CHECK(up.code == exit_ok);
    CHECK(up.out == "1-2-3-4\n# size 1\n");
    CHECK(run({"shadow", "--n", "5", "--level", "2", "--dir", "sideways", "--family", fam.string()}).code == exit_parse);
}

TEST_CASE("kk-check") {
    CHECK(run({"kk-check", "--n", "7", "--k", "3", "--exhaustive"}).code == exit_ok);
    CHECK(run({"kk-check", "--n", "8", "--k", "3", "--samples", "5", "--seed", "1"}).code == exit_ok);
}

TEST_CASE("bench prints the stage table") {
    auto r = run({"bench", "--n", "12", "--k", "5"});
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("matching") != std::string::npos);
    CHECK(r.out.find("total") != std::string::npos);
    auto j = run({"bench", "--n", "12", "--k", "5", "--json", "--matcher", "hk"});
    REQUIRE(j.code == exit_ok);
    auto doc = nlohmann::json::parse(j.out);
    CHECK(doc["cycles"] == 66);
    CHECK(doc["matcher"] == "hk");
    CHECK(doc["seconds"]["total"].get<double>() >= 0);
}

TEST_CASE("output is byte-identical across runs and thread counts") {
    auto a = run({"decompose", "--n", "14", "--k", "5", "--force-range", "--seed", "4"});
    auto b = run({"decompose", "--n", "14", "--k", "5", "--force-range", "--seed", "4", "--threads", "3"});
    REQUIRE(a.code == exit_ok);
    CHECK(a.out == b.out);
}

TEST_CASE("installed binary exit codes") {
    const char* bin = std::getenv("BERGE_CLI");
    if (!bin) return;
    auto status = [&](const std::string& args) {
        std::string cmd = std::string(bin) + " " + args + " >/dev/null 2>&1";
        int s = std::system(cmd.c_str());
        return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
    };
    CHECK(status("decompose --n 9 --k 7 --force-range") == 0);
    CHECK(status("decompose --n 8 --k 4") == 2);
    CHECK(status("decompose --n 9 --k 4 --cap 10") == 4);
    CHECK(status("verify --in /nonexistent/file.hbd") == 5);
    CHECK(status("--help") == 0);
}
