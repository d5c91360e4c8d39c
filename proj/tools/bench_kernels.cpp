// Serial reference kernels against their OpenMP versions: same output,
// wall time for each.
#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>

#include <omp.h>

#include "berge/construct.hpp"
#include "berge/kk_check.hpp"

using namespace berge;

namespace {

template <class F>
double timed(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void row(const char* kernel, const std::string& instance, double serial, double parallel, bool same) {
    std::printf("%-12s %-16s %10.4f %10.4f %8.2fx  %s\n", kernel, instance.c_str(), serial, parallel,
                parallel > 0 ? serial / parallel : 0.0, same ? "same" : "DIFFERENT");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Serial vs OpenMP kernel benchmark", "berge_bench"};
    int threads = omp_get_max_threads();
    int n = 21, k = 5;
    int kk_n = 8, kk_k = 3;
    std::uint64_t samples = 2000;
    int dk_n = 40;
    app.add_option("--threads", threads, "OpenMP threads for the parallel runs");
    app.add_option("--n", n, "Aux graph: vertices");
    app.add_option("--k", k, "Aux graph: edge size");
    app.add_option("--kk-n", kk_n, "Shadow sampling: ground set");
    app.add_option("--kk-k", kk_k, "Shadow sampling: set size");
    app.add_option("--samples", samples, "Shadow sampling: families per size");
    app.add_option("--dk-n", dk_n, "DK_n search: even n");
    CLI11_PARSE(app, argc, argv);

    std::printf("threads %d\n", threads);
    std::printf("%-12s %-16s %10s %10s %9s  %s\n", "kernel", "instance", "serial_s", "omp_s", "speedup", "check");

    {
        Family M = choose_default_M(n, k);
        Parameters p = compute_parameters(n, k, M.size());
        std::vector<HamCycle> h;
        auto m = p.m.convert_to<std::uint64_t>();
        if (m > 0) h = select_m_cycles(dk_decompose(n, 0), m);
        auto b = build_B(p, h);
        AStar a(n, k, M);
        BipartiteGraph gs, gp;
        double ts = timed([&] { gs = build_aux_graph_serial(a, b); });
        double tp = timed([&] { gp = build_aux_graph(a, b, threads); });
        bool same = gs.offsets() == gp.offsets() && gs.targets() == gp.targets();
        row("aux_graph", "n=" + std::to_string(n) + " k=" + std::to_string(k), ts, tp, same);
    }
    {
        SampledShadows ss, sp;
        double ts = timed([&] { ss = sample_min_shadows_serial(kk_n, kk_k, samples, 1); });
        double tp = timed([&] { sp = sample_min_shadows_parallel(kk_n, kk_k, samples, 1, threads); });
        bool same = ss.min_lower == sp.min_lower && ss.min_upper == sp.min_upper;
        row("kk_sample", "n=" + std::to_string(kk_n) + " k=" + std::to_string(kk_k), ts, tp, same);
    }
    {
        HamDecomposition ds, dp;
        DkSearchOptions o1, o2;
        o2.threads = threads;
        double ts = timed([&] { ds = dk_decompose(dk_n, 0, o1); });
        double tp = timed([&] { dp = dk_decompose(dk_n, 0, o2); });
        row("dk_search", "n=" + std::to_string(dk_n), ts, tp, ds.cycles == dp.cycles);
    }
    return 0;
}
