// Acceptance gate for the robustness-study artifact. Runs the seven release
// criteria end to end against the published reference values and prints one
// PASS/FAIL line per criterion with a timing and a numeric summary. Exits 0
// only when every criterion passes.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qrws/analysis.hpp"
#include "qrws/hill.hpp"
#include "qrws/io.hpp"
#include "qrws/reference_tables.hpp"
#include "qrws/schedule.hpp"
#include "qrws/sweep.hpp"
#include "qrws/verify.hpp"
#include "qrws/walk.hpp"

namespace {

using namespace qrws;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double value, int digits = 3) {
    return format_sig(value, digits);
}

double rel_dev(double value, double ref) { return std::fabs(value - ref) / std::fabs(ref); }

// Scans shared between the trend criterion and the ranking criterion.
struct ScanBank {
    std::vector<SequenceAnalysis> analyses;
};

// ---------------------------------------------------------------------------
// 1. Cross-sections at the two reference angles for m in {4, 6, 8} refit the
//    published Hill parameters: b +-0.02 absolute, k +-15%, n +-20%, sigma
//    within a factor of two.

Outcome criterion1() {
    const ScanOptions opts;
    double max_b = 0.0, max_k = 0.0, max_n = 0.0, max_s = 0.0;
    for (const HillRef& ref : hill_fit_references()) {
        const double theta = ref.theta_units * kPi / 360.0;
        const FittedSection fs = fit_cross_section(ref.m, SequenceKind::PM, theta, opts);
        if (!fs.fit.ok)
            return {false, "fit failed at m=" + std::to_string(ref.m) + ": " + fs.fit.error};
        const HillParams& p = fs.fit.params;
        max_b = std::max(max_b, std::fabs(p.b - ref.b));
        max_k = std::max(max_k, rel_dev(p.k, ref.k));
        max_n = std::max(max_n, rel_dev(p.n, ref.n));
        max_s = std::max(max_s, std::max(p.sigma / ref.sigma, ref.sigma / p.sigma));
    }
    const bool pass = max_b <= 0.02 && max_k <= 0.15 && max_n <= 0.20 && max_s <= 2.0;
    return {pass, "6 fits; max |b-ref| " + fmt(max_b) + ", k dev " + fmt(100 * max_k) +
                      "%, n dev " + fmt(100 * max_n) + "%, sigma ratio " + fmt(max_s)};
}

// ---------------------------------------------------------------------------
// 2. Fixed-angle robustness trends for the single-phase walk: k(m) fitted at
//    the best angle over m = 5..9 (m = 4 excluded) and at the worst angle
//    over m = 4..9 reproduce the published asymptotes within +-25%.

Outcome criterion2() {
    const ScanOptions opts;
    const auto series = [&](double theta) {
        std::vector<KTrendPoint> pts;
        for (int m = 4; m <= 9; ++m) {
            const FittedSection fs = fit_cross_section(m, SequenceKind::PM, theta, opts);
            if (!fs.fit.ok)
                throw std::runtime_error("fit failed at m=" + std::to_string(m));
            pts.push_back({m, fs.fit.params.k});
        }
        return pts;
    };
    const auto& refs = trend_references_single();
    const KTrend best = fit_k_trend(series(kThetaBestRef), refs[0].excluded_m);
    const KTrend worst = fit_k_trend(series(kThetaWorstRef), refs[1].excluded_m);
    if (!best.ok || !worst.ok)
        return {false, "trend fit failed: " + (best.ok ? worst.error : best.error)};
    const double dev_b = rel_dev(best.k3, refs[0].k3);
    const double dev_w = rel_dev(worst.k3, refs[1].k3);
    const bool pass = dev_b <= 0.25 && dev_w <= 0.25;
    return {pass, "best k3 " + fmt(best.k3) + " vs " + fmt(refs[0].k3) + " (dev " +
                      fmt(100 * dev_b) + "%); worst k3 " + fmt(worst.k3) + " vs " +
                      fmt(refs[1].k3) + " (dev " + fmt(100 * dev_w) + "%)"};
}

// ---------------------------------------------------------------------------
// 3. Scanned best/worst robustness trends for the six modified sequences
//    reproduce the published k3 asymptotes within +-25%.

Outcome criterion3(ScanBank& bank) {
    const std::vector<double> grid = make_theta_grid(1);
    const ScanOptions opts;
    const SequenceKind kinds[] = {SequenceKind::A1, SequenceKind::A2, SequenceKind::A3,
                                  SequenceKind::H1, SequenceKind::H2, SequenceKind::H3};
    for (SequenceKind kind : kinds)
        bank.analyses.push_back(analyze_sequence(4, 9, kind, grid, opts));

    std::vector<TrendRef> refs = trend_references_alternating();
    const auto& halves = trend_references_halves();
    refs.insert(refs.end(), halves.begin(), halves.end());

    bool pass = true;
    std::string detail = "k3 devs%:";
    for (const TrendRef& ref : refs) {
        const SequenceAnalysis* ana = nullptr;
        for (const SequenceAnalysis& a : bank.analyses)
            if (a.kind == ref.kind) ana = &a;
        const KTrend& trend = ref.best_case ? ana->trend_best : ana->trend_worst;
        const bool row_ok = trend.ok && rel_dev(trend.k3, ref.k3) <= 0.25;
        pass = pass && row_ok;
        detail += std::string(" ") + kind_name(ref.kind) + (ref.best_case ? "b=" : "w=") +
                  (trend.ok ? fmt(100 * rel_dev(trend.k3, ref.k3)) : "fit-failed");
    }
    return {pass, detail};
}

// ---------------------------------------------------------------------------
// 4. Rankings at m = 9: by worst-angle fitted k, A3 ranks above H3 and A2 and
//    every modified sequence ranks above the single-phase walk; by best-angle
//    fitted k the single-phase walk ranks first.

Outcome criterion4(const ScanBank& bank) {
    const std::vector<double> grid = make_theta_grid(1);
    const ScanOptions opts;
    std::vector<SequenceAnalysis> all = bank.analyses;
    all.push_back(analyze_sequence(9, 9, SequenceKind::PM, grid, opts));
    const Comparison cmp = compare_sequences(all);

    const auto pos = [](const std::vector<RankEntry>& ranked, SequenceKind kind) {
        for (std::size_t i = 0; i < ranked.size(); ++i)
            if (ranked[i].kind == kind) return i;
        return ranked.size();
    };
    const auto k_of = [](const std::vector<RankEntry>& ranked, SequenceKind kind) {
        for (const RankEntry& e : ranked)
            if (e.kind == kind) return e.k;
        return 0.0;
    };
    const auto& w = cmp.worst_ranked;
    const auto& b = cmp.best_ranked;
    const bool a3_top = pos(w, SequenceKind::A3) < pos(w, SequenceKind::H3) &&
                        pos(w, SequenceKind::A3) < pos(w, SequenceKind::A2);
    const bool pm_last = pos(w, SequenceKind::PM) == w.size() - 1;
    const bool pm_first = !b.empty() && b.front().kind == SequenceKind::PM;
    const bool pass = cmp.m == 9 && a3_top && pm_last && pm_first;
    return {pass, "worst k: A3 " + fmt(k_of(w, SequenceKind::A3)) + ", H3 " +
                      fmt(k_of(w, SequenceKind::H3)) + ", A2 " + fmt(k_of(w, SequenceKind::A2)) +
                      ", PM " + fmt(k_of(w, SequenceKind::PM)) + " (last: " +
                      (pm_last ? "yes" : "no") + "); best first: " +
                      (b.empty() ? "none" : kind_name(b.front().kind))};
}

// ---------------------------------------------------------------------------
// 5. Peak probability p(pi, pi, m) stays within 0.05 of the published plateau
//    heights at m in {4, 6, 8} and is non-decreasing over m = 4..9.

Outcome criterion5() {
    std::vector<double> p;
    for (int m = 4; m <= 9; ++m) {
        const PhaseSchedule sched =
            schedule_phases(SequenceKind::PM, {0.0, kThetaBestRef}, iteration_count(m));
        p.push_back(run_walk(m, sched.phases, {0}));
    }
    bool monotone = true;
    for (std::size_t i = 1; i < p.size(); ++i) monotone = monotone && p[i] >= p[i - 1];
    double max_dev = 0.0;
    for (const HillRef& ref : hill_fit_references()) {
        if (ref.theta_units != 233) continue;
        max_dev = std::max(max_dev, std::fabs(p[ref.m - 4] - ref.b));
    }
    const bool pass = monotone && max_dev <= 0.05;
    return {pass, "p(pi,pi) m=4..9: " + fmt(p[0]) + ".." + fmt(p[5]) +
                      (monotone ? " non-decreasing" : " NOT monotone") + "; max |p-b_ref| " +
                      fmt(max_dev)};
}

// ---------------------------------------------------------------------------
// 6. The independent property suite passes in under a minute.

Outcome criterion6() {
    const auto start = Clock::now();
    const std::vector<PropertyResult> results = run_verification(0);
    const double secs = seconds_since(start);
    std::string failed;
    for (const PropertyResult& r : results)
        if (!r.pass) failed += (failed.empty() ? "" : ", ") + r.name;
    const bool pass = all_passed(results) && secs < 60.0;
    return {pass, std::to_string(results.size()) + " properties in " + fmt(secs) + " s" +
                      (failed.empty() ? "" : "; failed: " + failed)};
}

// ---------------------------------------------------------------------------
// 7. Determinism: serialized outputs are byte-identical across repeated runs
//    and across worker counts, at the library surface and through the CLI.

std::string grid_bytes(unsigned workers) {
    const Grid2D grid = sweep_phase_plane(3, SequenceKind::A3, 17, {0}, workers);
    std::ostringstream out;
    write_grid_csv(out, grid, "command=sweep2d m=3 kind=A3 resolution=17");
    return out.str();
}

std::string section_bytes(unsigned workers) {
    const CrossSection cs = sweep_omega(4, SequenceKind::H2, kThetaBestRef, 101, {0}, workers);
    std::ostringstream out;
    write_cross_section_csv(out, cs, "command=cross-section m=4 kind=H2");
    return out.str();
}

std::string scan_bytes(unsigned workers) {
    ScanOptions opts;
    opts.n_points = 51;
    opts.workers = workers;
    const ThetaScanResult scan = scan_theta(3, SequenceKind::PM, make_theta_grid(12), opts);
    std::ostringstream out;
    write_scan_csv(out, scan, "command=scan-theta m=3 kind=PM step=12");
    return out.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(QRWS_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome criterion7() {
    if (grid_bytes(1) != grid_bytes(4)) return {false, "phase-plane CSV differs across workers"};
    if (section_bytes(1) != section_bytes(3))
        return {false, "cross-section CSV differs across workers"};
    const std::string scan1 = scan_bytes(1);
    if (scan1 != scan_bytes(4)) return {false, "scan CSV differs across workers"};
    if (scan1 != scan_bytes(1)) return {false, "scan CSV differs across reruns"};

    const std::string dir =
        (std::filesystem::temp_directory_path() / "qrws_acceptance").string();
    std::filesystem::create_directories(dir);
    const std::string base = "cross-section --m 3 --kind A1 --points 41 ";
    if (run_cli(base + "--workers 1 --out " + dir + "/a.csv") != 0 ||
        run_cli(base + "--workers 4 --out " + dir + "/b.csv") != 0 ||
        run_cli(base + "--workers 1 --out " + dir + "/c.csv") != 0)
        return {false, "CLI cross-section invocation failed"};
    const std::string a = slurp(dir + "/a.csv");
    if (a.empty() || a != slurp(dir + "/b.csv") || a != slurp(dir + "/c.csv"))
        return {false, "CLI cross-section files differ"};

    const std::string grid_cmd = "sweep2d --m 2 --resolution 13 ";
    if (run_cli(grid_cmd + "--workers 2 --out " + dir + "/g1.csv") != 0 ||
        run_cli(grid_cmd + "--workers 4 --out " + dir + "/g2.csv") != 0)
        return {false, "CLI sweep2d invocation failed"};
    const std::string g = slurp(dir + "/g1.csv");
    if (g.empty() || g != slurp(dir + "/g2.csv")) return {false, "CLI sweep2d files differ"};

    return {true, "3 library surfaces and 2 CLI commands byte-identical across reruns "
                  "and worker counts 1-4"};
}

}  // namespace

int main() {
    struct Criterion {
        const char* title;
        Outcome (*run)(ScanBank&);
    };
    ScanBank bank;

    const auto wrap1 = [](ScanBank&) { return criterion1(); };
    const auto wrap2 = [](ScanBank&) { return criterion2(); };
    const auto wrap3 = [](ScanBank& b) { return criterion3(b); };
    const auto wrap4 = [](ScanBank& b) { return criterion4(static_cast<const ScanBank&>(b)); };
    const auto wrap5 = [](ScanBank&) { return criterion5(); };
    const auto wrap6 = [](ScanBank&) { return criterion6(); };
    const auto wrap7 = [](ScanBank&) { return criterion7(); };

    const Criterion criteria[] = {
        {"reference-angle Hill fits (m=4,6,8)", wrap1},
        {"fixed-angle robustness trends", wrap2},
        {"scanned best/worst robustness trends", wrap3},
        {"sequence rankings at m=9", wrap4},
        {"peak-probability plateau heights", wrap5},
        {"independent property suite", wrap6},
        {"deterministic outputs", wrap7},
    };

    std::cout << "qrws acceptance suite 0.1.0\n";
    int passed = 0;
    int index = 0;
    for (const Criterion& c : criteria) {
        ++index;
        const auto start = Clock::now();
        Outcome outcome;
        try {
            outcome = c.run(bank);
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        passed += outcome.pass ? 1 : 0;
        std::printf("%s  criterion %d: %s (%.1f s) -- %s\n", outcome.pass ? "PASS" : "FAIL",
                    index, c.title, seconds_since(start), outcome.detail.c_str());
        std::fflush(stdout);
    }
    std::cout << "acceptance: " << passed << "/7 criteria passed\n";
    return passed == 7 ? 0 : 1;
}
