// qrws: simulator and robustness toolkit for the quantum random walk search
// on the hypercube with Householder-reflection traversing coins.
//
// Commands: run, sweep2d, cross-section, fit-hill, scan-theta, k-trend,
// tables, verify, heatmap. Every file output carries a version + config
// stamp and uses 9 significant digits, so repeated runs are byte-identical
// at any worker count.
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qrws/analysis.hpp"
#include "qrws/io.hpp"
#include "qrws/reference_tables.hpp"
#include "qrws/verify.hpp"

namespace {

using namespace qrws;

std::string join_path(const std::string& dir, const std::string& name) {
    if (dir.empty() || dir == ".") return name;
    if (dir.back() == '/') return dir + name;
    return dir + "/" + name;
}

// Computation happens before this is called: a failed validation or fit must
// not leave an output file behind.
void write_file(const std::string& path, const std::function<void(std::ostream&)>& emit) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::invalid_argument("cannot open output file: " + path);
    emit(os);
    os.flush();
    if (!os) throw std::runtime_error("write failed: " + path);
}

std::string list_to_string(const std::vector<std::uint64_t>& xs) {
    std::string out;
    for (std::uint64_t x : xs) {
        if (!out.empty()) out += ',';
        out += std::to_string(x);
    }
    return out;
}

FitRecord make_record(SequenceKind kind, int m, double theta, const HillParams& params,
                      const CrossSection& section, double threshold) {
    FitRecord rec;
    rec.sequence = kind_name(kind);
    rec.m = m;
    rec.theta = theta;
    rec.params = params;
    const RobustnessReport rep = robustness_epsilon(section, threshold);
    rec.omega_max = rep.omega_max;
    rec.epsilon = rep.epsilon;
    rec.omega_threshold = threshold;
    return rec;
}

ScanOptions scan_options(const RunConfig& cfg) {
    ScanOptions opts;
    opts.n_points = cfg.omega_points;
    opts.omega_threshold = cfg.omega_threshold;
    opts.marked = cfg.marked;
    opts.workers = cfg.workers;
    return opts;
}

bool wants_format(const RunConfig& cfg, const std::string& f) {
    for (const std::string& have : cfg.formats)
        if (have == f) return true;
    return false;
}

// Shared flag plumbing: every command accepts --config plus overrides for the
// keys it uses; flags win over config-file values.
struct CommonFlags {
    std::string config_path;
    CLI::App* cmd = nullptr;

    void attach(CLI::App* sub) {
        cmd = sub;
        cmd->add_option("--config", config_path, "plain-text config file (sections of key = value)");
    }

    RunConfig resolve() const {
        RunConfig cfg;
        if (!config_path.empty()) {
            std::ifstream is(config_path);
            if (!is) throw std::invalid_argument("cannot open config file: " + config_path);
            apply_config(cfg, parse_config_text(is));
        }
        return cfg;
    }

    bool given(const std::string& flag) const { return cmd->count(flag) > 0; }
};

// ---------------------------------------------------------------------------
// run: a single walk at one (omega, theta) point.

int cmd_run(const CommonFlags& common, int m, const std::string& kind_str,
            const std::string& theta_str, double omega, int iterations,
            const std::vector<std::uint64_t>& marked, const std::string& dump_path) {
    RunConfig cfg = common.resolve();
    if (common.given("--m")) cfg.m = m;
    if (common.given("--kind")) cfg.kind = kind_from_name(kind_str);
    if (common.given("--theta")) cfg.theta = parse_angle(theta_str);
    if (common.given("--iterations")) cfg.iterations = iterations;
    if (common.given("--marked")) cfg.marked = marked;
    validate_config(cfg);

    const int k_iter = cfg.iterations > 0 ? cfg.iterations : iteration_count(cfg.m);
    const PhaseSchedule sched = schedule_phases(cfg.kind, {omega, cfg.theta}, k_iter);

    WalkState st = init_state(cfg.m);
    for (const CoinPhases& ph : sched.phases) apply_iteration(st, ph, cfg.marked);
    double p = 0.0;
    for (std::uint64_t x : cfg.marked) p += node_probability(st, x);

    if (!dump_path.empty()) {
        const std::string stamp = build_stamp({{"command", "run"},
                                               {"kind", kind_name(cfg.kind)},
                                               {"m", std::to_string(cfg.m)},
                                               {"theta", format_sig(cfg.theta)},
                                               {"omega", format_sig(omega)},
                                               {"iterations", std::to_string(k_iter)},
                                               {"marked", list_to_string(cfg.marked)}});
        write_file(dump_path, [&](std::ostream& os) { write_state_csv(os, st, stamp); });
    }
    std::cout << format_sig(p) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// sweep2d: probability over the full (phi, zeta) plane.

int cmd_sweep2d(const CommonFlags& common, int m, const std::string& kind_str, int resolution,
                const std::vector<std::uint64_t>& marked, unsigned workers,
                std::string out_path) {
    RunConfig cfg = common.resolve();
    if (common.given("--m")) cfg.m = m;
    if (common.given("--kind")) cfg.kind = kind_from_name(kind_str);
    if (common.given("--resolution")) cfg.resolution = resolution;
    if (common.given("--marked")) cfg.marked = marked;
    if (common.given("--workers")) cfg.workers = workers;
    validate_config(cfg);

    const Grid2D grid = sweep_phase_plane(cfg.m, cfg.kind, cfg.resolution, cfg.marked, cfg.workers);
    const std::string stamp = build_stamp({{"command", "sweep2d"},
                                           {"kind", kind_name(cfg.kind)},
                                           {"m", std::to_string(cfg.m)},
                                           {"resolution", std::to_string(cfg.resolution)},
                                           {"marked", list_to_string(cfg.marked)}});
    if (out_path.empty())
        out_path = join_path(cfg.directory, std::string("sweep2d_") + kind_name(cfg.kind) + "_m" +
                                                std::to_string(cfg.m) + ".csv");
    write_file(out_path, [&](std::ostream& os) { write_grid_csv(os, grid, stamp); });
    std::cout << "wrote " << out_path << "\n";
    if (wants_format(cfg, "ppm")) {
        const std::string ppm_path = out_path.substr(0, out_path.rfind('.')) + ".ppm";
        write_file(ppm_path, [&](std::ostream& os) { write_heatmap_ppm(os, grid); });
        std::cout << "wrote " << ppm_path << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// cross-section: probability along one theta line.

int cmd_cross_section(const CommonFlags& common, int m, const std::string& kind_str,
                      const std::string& theta_str, int points, double omega_max,
                      const std::vector<std::uint64_t>& marked, unsigned workers,
                      std::string out_path) {
    RunConfig cfg = common.resolve();
    if (common.given("--m")) cfg.m = m;
    if (common.given("--kind")) cfg.kind = kind_from_name(kind_str);
    if (common.given("--theta")) cfg.theta = parse_angle(theta_str);
    if (common.given("--points")) cfg.omega_points = points;
    if (common.given("--omega-max")) cfg.omega_max = omega_max;
    if (common.given("--marked")) cfg.marked = marked;
    if (common.given("--workers")) cfg.workers = workers;
    validate_config(cfg);

    const CrossSection cs = sweep_omega(cfg.m, cfg.kind, cfg.theta, cfg.omega_points, cfg.marked,
                                        cfg.workers, cfg.omega_max);
    const std::string stamp = build_stamp({{"command", "cross-section"},
                                           {"kind", kind_name(cfg.kind)},
                                           {"m", std::to_string(cfg.m)},
                                           {"theta", format_sig(cfg.theta)},
                                           {"points", std::to_string(cfg.omega_points)},
                                           {"omega_max", format_sig(cs.omega_axis.back())},
                                           {"marked", list_to_string(cfg.marked)}});
    if (out_path.empty())
        out_path = join_path(cfg.directory, std::string("cross_section_") + kind_name(cfg.kind) +
                                                "_m" + std::to_string(cfg.m) + ".csv");
    write_file(out_path, [&](std::ostream& os) { write_cross_section_csv(os, cs, stamp); });
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// fit-hill: Hill fit of a stored cross-section CSV.

int cmd_fit_hill(const CommonFlags& common, const std::string& input, bool fix_center,
                 bool strict_nk, double omega_threshold, const std::string& out_path) {
    RunConfig cfg = common.resolve();
    if (common.given("--fix-center")) cfg.fix_center = fix_center;
    if (common.given("--strict-nk")) cfg.strict_nk = strict_nk;
    if (common.given("--omega-threshold")) cfg.omega_threshold = omega_threshold;
    validate_config(cfg);

    std::ifstream is(input);
    if (!is) throw std::invalid_argument("cannot open input file: " + input);
    const CrossSection cs = read_cross_section_csv(is);
    const HillFit fit = fit_hill(cs, cfg.fix_center, cfg.strict_nk);
    if (!fit.ok) throw std::runtime_error("fit-hill: " + fit.error);

    const FitRecord rec =
        make_record(cs.kind, cs.m, cs.theta, fit.params, cs, cfg.omega_threshold);
    const std::string stamp = build_stamp({{"command", "fit-hill"},
                                           {"input", input},
                                           {"fix_center", cfg.fix_center ? "1" : "0"},
                                           {"strict_nk", cfg.strict_nk ? "1" : "0"}});
    if (out_path.empty()) {
        write_fit_records_json(std::cout, {rec}, stamp);
    } else {
        write_file(out_path,
                   [&](std::ostream& os) { write_fit_records_json(os, {rec}, stamp); });
        std::cout << "wrote " << out_path << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// scan-theta: best/worst linear dependence for one coin size.

int cmd_scan_theta(const CommonFlags& common, int m, const std::string& kind_str, int theta_step,
                   int points, const std::vector<std::uint64_t>& marked, unsigned workers,
                   std::string out_path) {
    RunConfig cfg = common.resolve();
    if (common.given("--m")) cfg.m = m;
    if (common.given("--kind")) cfg.kind = kind_from_name(kind_str);
    if (common.given("--theta-step")) cfg.theta_step = theta_step;
    if (common.given("--points")) cfg.omega_points = points;
    if (common.given("--marked")) cfg.marked = marked;
    if (common.given("--workers")) cfg.workers = workers;
    validate_config(cfg);

    const std::vector<double> grid = make_theta_grid(cfg.theta_step);
    const ThetaScanResult scan = scan_theta(cfg.m, cfg.kind, grid, scan_options(cfg));
    const std::string stamp = build_stamp({{"command", "scan-theta"},
                                           {"kind", kind_name(cfg.kind)},
                                           {"m", std::to_string(cfg.m)},
                                           {"theta_step", std::to_string(cfg.theta_step)},
                                           {"points", std::to_string(cfg.omega_points)},
                                           {"marked", list_to_string(cfg.marked)}});
    if (out_path.empty())
        out_path = join_path(cfg.directory, std::string("scan_") + kind_name(cfg.kind) + "_m" +
                                                std::to_string(cfg.m) + ".csv");
    write_file(out_path, [&](std::ostream& os) { write_scan_csv(os, scan, stamp); });
    std::cout << "wrote " << out_path << "\n";

    if (wants_format(cfg, "json")) {
        std::vector<FitRecord> recs;
        for (const ThetaScanEntry& e : scan.entries)
            if (e.valid_best || e.valid_worst) {
                const FittedSection& rep = e.valid_best ? e.full : e.narrow;
                recs.push_back(make_record(cfg.kind, cfg.m, e.theta, rep.fit.params, rep.section,
                                           cfg.omega_threshold));
            }
        const std::string json_path = out_path.substr(0, out_path.rfind('.')) + ".json";
        write_file(json_path,
                   [&](std::ostream& os) { write_fit_records_json(os, recs, stamp); });
        std::cout << "wrote " << json_path << "\n";
    }
    std::cout << "best: theta=" << format_sig(scan.best().theta)
              << " k=" << format_sig(scan.report_best.fit.params.k)
              << "\nworst: theta=" << format_sig(scan.worst().theta)
              << " k=" << format_sig(scan.report_worst.fit.params.k) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// k-trend: scan every coin size in the range, fit k(m) = k1 exp(-m k2) + k3.

int cmd_k_trend(const CommonFlags& common, const std::string& kind_str, const std::string& which,
                const std::string& m_range, int theta_step, int points,
                const std::vector<int>& exclude, unsigned workers, std::string out_path) {
    RunConfig cfg = common.resolve();
    if (common.given("--kind")) cfg.kind = kind_from_name(kind_str);
    if (common.given("--m-range")) {
        apply_config(cfg, {{"scan.m_range", m_range}});
    }
    if (common.given("--theta-step")) cfg.theta_step = theta_step;
    if (common.given("--points")) cfg.omega_points = points;
    if (common.given("--exclude")) cfg.exclusions = exclude;
    if (common.given("--workers")) cfg.workers = workers;
    validate_config(cfg);
    if (which != "best" && which != "worst")
        throw std::invalid_argument("k-trend --case: expected 'best' or 'worst'");
    const bool best_case = which == "best";

    const std::vector<double> grid = make_theta_grid(cfg.theta_step);
    const ScanOptions opts = scan_options(cfg);
    std::vector<KTrendPoint> pts;
    for (int mm = cfg.m_min; mm <= cfg.m_max; ++mm) {
        const ThetaScanResult scan = scan_theta(mm, cfg.kind, grid, opts);
        const ThetaScanEntry& e = best_case ? scan.best() : scan.worst();
        const FittedSection& rep = best_case ? scan.report_best : scan.report_worst;
        pts.push_back({mm, rep.fit.params.k});
        std::cout << "m=" << mm << " theta=" << format_sig(e.theta)
                  << " k=" << format_sig(rep.fit.params.k) << "\n";
    }
    const std::vector<int> excl = common.given("--exclude") || !cfg.exclusions.empty()
                                      ? cfg.exclusions
                                      : default_exclusions(cfg.kind, best_case);
    const KTrend trend = fit_k_trend(pts, excl);
    if (!trend.ok) throw std::runtime_error("k-trend: " + trend.error);

    const std::string stamp = build_stamp(
        {{"command", "k-trend"},
         {"kind", kind_name(cfg.kind)},
         {"case", which},
         {"m_range", std::to_string(cfg.m_min) + ":" + std::to_string(cfg.m_max)},
         {"theta_step", std::to_string(cfg.theta_step)},
         {"points", std::to_string(cfg.omega_points)}});
    if (out_path.empty())
        out_path = join_path(cfg.directory,
                             std::string("ktrend_") + kind_name(cfg.kind) + "_" + which + ".csv");
    write_file(out_path, [&](std::ostream& os) { write_trend_csv(os, trend, stamp); });
    std::cout << "wrote " << out_path << "\n";
    std::cout << "k(m) = " << format_sig(trend.k1) << " * exp(-m * " << format_sig(trend.k2)
              << ") + " << format_sig(trend.k3) << "  (sigma " << format_sig(trend.sigma)
              << (trend.degenerate ? ", degenerate" : "") << ")\n"
              << "m -> infinity robustness asymptote: k3 = " << format_sig(trend.k3) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// tables: recompute a published table and report deviations.

int cmd_tables(const CommonFlags& common, int which, int points, int theta_step, unsigned workers,
               std::string out_path) {
    RunConfig cfg = common.resolve();
    if (common.given("--points")) cfg.omega_points = points;
    if (common.given("--theta-step")) cfg.theta_step = theta_step;
    if (common.given("--workers")) cfg.workers = workers;
    validate_config(cfg);
    if (which < 1 || which > 4) throw std::invalid_argument("tables: which must be 1..4");

    const ScanOptions opts = scan_options(cfg);
    const std::string stamp = build_stamp({{"command", "tables"},
                                           {"which", std::to_string(which)},
                                           {"points", std::to_string(cfg.omega_points)},
                                           {"theta_step", std::to_string(cfg.theta_step)}});
    if (out_path.empty())
        out_path = join_path(cfg.directory, "table" + std::to_string(which) + ".csv");

    std::ostringstream body;
    if (which == 1) {
        body << "m,theta,b,k,n,sigma,ref_b,ref_k,ref_n,ref_sigma,dev_k_rel\n";
        for (const HillRef& ref : hill_fit_references()) {
            const double theta = ref.theta_units * kPi / 360.0;
            const FittedSection fs = fit_cross_section(ref.m, SequenceKind::PM, theta, opts);
            if (!fs.fit.ok) throw std::runtime_error("tables 1: fit failed: " + fs.fit.error);
            const HillParams& p = fs.fit.params;
            body << ref.m << ',' << format_sig(theta) << ',' << format_sig(p.b) << ','
                 << format_sig(p.k) << ',' << format_sig(p.n) << ',' << format_sig(p.sigma) << ','
                 << format_sig(ref.b) << ',' << format_sig(ref.k) << ',' << format_sig(ref.n)
                 << ',' << format_sig(ref.sigma) << ','
                 << format_sig(std::fabs(p.k - ref.k) / ref.k) << "\n";
        }
    } else if (which == 2) {
        // Fixed reference angles; k(m) points from per-m cross-section fits.
        body << "theta,k1,k2,k3,sigma,ref_k1,ref_k2,ref_k3,ref_sigma,dev_k3_rel\n";
        for (const TrendRef& ref : trend_references_single()) {
            const double theta = ref.best_case ? kThetaBestRef : kThetaWorstRef;
            std::vector<KTrendPoint> pts;
            for (int mm = ref.m_min; mm <= ref.m_max; ++mm) {
                const FittedSection fs = fit_cross_section(mm, SequenceKind::PM, theta, opts);
                if (!fs.fit.ok) throw std::runtime_error("tables 2: fit failed: " + fs.fit.error);
                pts.push_back({mm, fs.fit.params.k});
            }
            const KTrend trend = fit_k_trend(pts, ref.excluded_m);
            if (!trend.ok) throw std::runtime_error("tables 2: trend failed: " + trend.error);
            body << format_sig(theta) << ',' << format_sig(trend.k1) << ','
                 << format_sig(trend.k2) << ',' << format_sig(trend.k3) << ','
                 << format_sig(trend.sigma) << ',' << format_sig(ref.k1) << ','
                 << format_sig(ref.k2) << ',' << format_sig(ref.k3) << ','
                 << format_sig(ref.sigma) << ','
                 << format_sig(std::fabs(trend.k3 - ref.k3) / std::fabs(ref.k3)) << "\n";
        }
    } else {
        const std::vector<TrendRef>& refs =
            which == 3 ? trend_references_alternating() : trend_references_halves();
        body << "sequence,case,k1,k2,k3,sigma,ref_k1,ref_k2,ref_k3,ref_sigma,dev_k3_rel\n";
        SequenceKind last_kind = SequenceKind::PM;
        SequenceAnalysis analysis;
        for (const TrendRef& ref : refs) {
            if (ref.kind != last_kind || analysis.best.empty()) {
                analysis = analyze_sequence(ref.m_min, ref.m_max, ref.kind,
                                            make_theta_grid(cfg.theta_step), opts);
                last_kind = ref.kind;
            }
            const KTrend& trend = ref.best_case ? analysis.trend_best : analysis.trend_worst;
            if (!trend.ok)
                throw std::runtime_error(std::string("tables: trend failed for ") +
                                         kind_name(ref.kind) + ": " + trend.error);
            body << kind_name(ref.kind) << ',' << (ref.best_case ? "best" : "worst") << ','
                 << format_sig(trend.k1) << ',' << format_sig(trend.k2) << ','
                 << format_sig(trend.k3) << ',' << format_sig(trend.sigma) << ','
                 << format_sig(ref.k1) << ',' << format_sig(ref.k2) << ',' << format_sig(ref.k3)
                 << ',' << format_sig(ref.sigma) << ','
                 << format_sig(std::fabs(trend.k3 - ref.k3) / std::fabs(ref.k3)) << "\n";
        }
    }
    write_file(out_path, [&](std::ostream& os) {
        os << "# qrws " << kVersion << "\n# config: " << stamp << "\n" << body.str();
    });
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// verify: property suite against independent predictions.

int cmd_verify(unsigned workers) {
    const std::vector<PropertyResult> results = run_verification(workers);
    for (const PropertyResult& r : results)
        std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name << " -- " << r.detail << "\n";
    if (!all_passed(results)) {
        std::cout << "verification FAILED\n";
        return 2;
    }
    std::cout << "all properties passed\n";
    return 0;
}

// ---------------------------------------------------------------------------
// heatmap: PPM raster of a stored grid CSV.

int cmd_heatmap(const std::string& input, std::string out_path) {
    std::ifstream is(input);
    if (!is) throw std::invalid_argument("cannot open input file: " + input);
    const Grid2D grid = read_grid_csv(is);
    if (out_path.empty()) {
        const auto dot = input.rfind('.');
        out_path = (dot == std::string::npos ? input : input.substr(0, dot)) + ".ppm";
    }
    write_file(out_path, [&](std::ostream& os) { write_heatmap_ppm(os, grid); });
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum random walk search: simulator and robustness analysis"};
    app.require_subcommand(1);
    int rc = 0;

    // run ---------------------------------------------------------------
    CommonFlags run_common;
    int run_m = 4, run_iterations = 0;
    std::string run_kind = "PM", run_theta = "233pi/360", run_dump;
    double run_omega = 0.0;
    std::vector<std::uint64_t> run_marked{0};
    {
        CLI::App* sub = app.add_subcommand("run", "single walk at one (omega, theta) point");
        run_common.attach(sub);
        sub->add_option("--m", run_m, "coin size / hypercube dimension");
        sub->add_option("--kind", run_kind, "sequence kind: PM A1 A2 A3 H1 H2 H3");
        sub->add_option("--theta", run_theta, "theta angle (e.g. 233pi/360 or 2.03)");
        sub->add_option("--omega", run_omega, "omega offset along the theta line");
        sub->add_option("--iterations", run_iterations, "iteration override (0 = automatic)");
        sub->add_option("--marked", run_marked, "marked node list");
        sub->add_option("--dump", run_dump, "write the final state to this CSV (17 digits)");
        sub->callback([&] {
            rc = cmd_run(run_common, run_m, run_kind, run_theta, run_omega, run_iterations,
                         run_marked, run_dump);
        });
    }

    // sweep2d -------------------------------------------------------------
    CommonFlags sweep_common;
    int sweep_m = 4, sweep_resolution = 181;
    std::string sweep_kind = "PM", sweep_out;
    std::vector<std::uint64_t> sweep_marked{0};
    unsigned sweep_workers = 0;
    {
        CLI::App* sub = app.add_subcommand("sweep2d", "probability over the (phi, zeta) plane");
        sweep_common.attach(sub);
        sub->add_option("--m", sweep_m, "coin size");
        sub->add_option("--kind", sweep_kind, "sequence kind");
        sub->add_option("--resolution", sweep_resolution, "grid points per axis");
        sub->add_option("--marked", sweep_marked, "marked node list");
        sub->add_option("--workers", sweep_workers, "worker thread cap");
        sub->add_option("--out", sweep_out, "output CSV path");
        sub->callback([&] {
            rc = cmd_sweep2d(sweep_common, sweep_m, sweep_kind, sweep_resolution, sweep_marked,
                             sweep_workers, sweep_out);
        });
    }

    // cross-section ---------------------------------------------------------
    CommonFlags cs_common;
    int cs_m = 4, cs_points = 201;
    std::string cs_kind = "PM", cs_theta = "233pi/360", cs_out;
    double cs_omega_max = 0.0;
    std::vector<std::uint64_t> cs_marked{0};
    unsigned cs_workers = 0;
    {
        CLI::App* sub =
            app.add_subcommand("cross-section", "probability along one theta line");
        cs_common.attach(sub);
        sub->add_option("--m", cs_m, "coin size");
        sub->add_option("--kind", cs_kind, "sequence kind");
        sub->add_option("--theta", cs_theta, "theta angle");
        sub->add_option("--points", cs_points, "odd sample count (>= 11)");
        sub->add_option("--omega-max", cs_omega_max, "half-window (0 = full admissible range)");
        sub->add_option("--marked", cs_marked, "marked node list");
        sub->add_option("--workers", cs_workers, "worker thread cap");
        sub->add_option("--out", cs_out, "output CSV path");
        sub->callback([&] {
            rc = cmd_cross_section(cs_common, cs_m, cs_kind, cs_theta, cs_points, cs_omega_max,
                                   cs_marked, cs_workers, cs_out);
        });
    }

    // fit-hill ---------------------------------------------------------------
    CommonFlags fit_common;
    std::string fit_input, fit_out;
    bool fit_fix_center = false, fit_strict_nk = false;
    double fit_threshold = 0.9;
    {
        CLI::App* sub = app.add_subcommand("fit-hill", "Hill fit of a cross-section CSV");
        fit_common.attach(sub);
        sub->add_option("--input", fit_input, "cross-section CSV")->required();
        sub->add_flag("--fix-center", fit_fix_center, "pin the center c = 0 (q = 3)");
        sub->add_flag("--strict-nk", fit_strict_nk, "discard candidates with n <= k");
        sub->add_option("--omega-threshold", fit_threshold, "Omega level for epsilon");
        sub->add_option("--out", fit_out, "output JSON path (default: stdout)");
        sub->callback([&] {
            rc = cmd_fit_hill(fit_common, fit_input, fit_fix_center, fit_strict_nk, fit_threshold,
                              fit_out);
        });
    }

    // scan-theta --------------------------------------------------------------
    CommonFlags scan_common;
    int scan_m = 4, scan_step = 1, scan_points = 201;
    std::string scan_kind = "PM", scan_out;
    std::vector<std::uint64_t> scan_marked{0};
    unsigned scan_workers = 0;
    {
        CLI::App* sub = app.add_subcommand(
            "scan-theta", "Hill fit per theta; report the best/worst dependence");
        scan_common.attach(sub);
        sub->add_option("--m", scan_m, "coin size");
        sub->add_option("--kind", scan_kind, "sequence kind");
        sub->add_option("--theta-step", scan_step, "grid step in pi/360 units");
        sub->add_option("--points", scan_points, "samples per cross-section");
        sub->add_option("--marked", scan_marked, "marked node list");
        sub->add_option("--workers", scan_workers, "worker thread cap");
        sub->add_option("--out", scan_out, "output CSV path");
        sub->callback([&] {
            rc = cmd_scan_theta(scan_common, scan_m, scan_kind, scan_step, scan_points,
                                scan_marked, scan_workers, scan_out);
        });
    }

    // k-trend -------------------------------------------------------------------
    CommonFlags trend_common;
    std::string trend_kind = "PM", trend_case = "best", trend_range = "4:9", trend_out;
    int trend_step = 1, trend_points = 201;
    std::vector<int> trend_exclude;
    unsigned trend_workers = 0;
    {
        CLI::App* sub =
            app.add_subcommand("k-trend", "k(m) = k1 exp(-m k2) + k3 over scanned coin sizes");
        trend_common.attach(sub);
        sub->add_option("--kind", trend_kind, "sequence kind");
        sub->add_option("--case", trend_case, "'best' or 'worst'");
        sub->add_option("--m-range", trend_range, "coin size range min:max");
        sub->add_option("--theta-step", trend_step, "scan grid step in pi/360 units");
        sub->add_option("--points", trend_points, "samples per cross-section");
        sub->add_option("--exclude", trend_exclude, "m values to drop from the trend fit");
        sub->add_option("--workers", trend_workers, "worker thread cap");
        sub->add_option("--out", trend_out, "output CSV path");
        sub->callback([&] {
            rc = cmd_k_trend(trend_common, trend_kind, trend_case, trend_range, trend_step,
                             trend_points, trend_exclude, trend_workers, trend_out);
        });
    }

    // tables ------------------------------------------------------------------
    CommonFlags tables_common;
    int tables_which = 1, tables_points = 201, tables_step = 1;
    unsigned tables_workers = 0;
    std::string tables_out;
    {
        CLI::App* sub = app.add_subcommand(
            "tables", "recompute a published reference table with a deviation column");
        tables_common.attach(sub);
        sub->add_option("--which", tables_which, "table number 1..4")->required();
        sub->add_option("--points", tables_points, "samples per cross-section");
        sub->add_option("--theta-step", tables_step, "scan grid step (tables 3 and 4)");
        sub->add_option("--workers", tables_workers, "worker thread cap");
        sub->add_option("--out", tables_out, "output CSV path");
        sub->callback([&] {
            rc = cmd_tables(tables_common, tables_which, tables_points, tables_step,
                            tables_workers, tables_out);
        });
    }

    // verify ------------------------------------------------------------------
    unsigned verify_workers = 0;
    {
        CLI::App* sub =
            app.add_subcommand("verify", "property suite against independent predictions");
        sub->add_option("--workers", verify_workers, "worker thread cap");
        sub->callback([&] { rc = cmd_verify(verify_workers); });
    }

    // heatmap -----------------------------------------------------------------
    std::string heatmap_input, heatmap_out;
    {
        CLI::App* sub = app.add_subcommand("heatmap", "PPM raster of a grid CSV");
        sub->add_option("--input", heatmap_input, "grid CSV")->required();
        sub->add_option("--out", heatmap_out, "output PPM path");
        sub->callback([&] { rc = cmd_heatmap(heatmap_input, heatmap_out); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
