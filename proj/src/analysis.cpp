#include "qrws/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qrws/detail/gauss_newton.hpp"

namespace qrws {
namespace {

// Index-ordered parallel dispatch into preallocated slots (same determinism
// contract as parallel_map, but for structured per-entry results).
template <typename Fn>
void parallel_for_index(std::size_t count, unsigned workers, const Fn& fn) {
    workers = resolve_workers(workers);
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> first_failure{count};
    std::vector<std::string> messages(count);
    auto body = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (const std::exception& e) {
                std::size_t expected = first_failure.load();
                while (i < expected && !first_failure.compare_exchange_weak(expected, i)) {
                }
                messages[i] = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    const std::size_t failed = first_failure.load();
    if (failed < count)
        throw std::runtime_error("scan task failed at grid index " + std::to_string(failed) +
                                 ": " + messages[failed]);
}

}  // namespace

FittedSection fit_cross_section(int m, SequenceKind kind, double theta, const ScanOptions& opts) {
    const double bound = omega_bound(theta);
    FittedSection out;
    out.section = sweep_omega(m, kind, theta, opts.n_points, opts.marked, 1);
    out.fit = fit_hill(out.section);
    out.window = bound;
    if (opts.adaptive_window && out.fit.ok && out.fit.params.k < opts.narrow_trigger * bound) {
        CrossSection narrow = sweep_omega(m, kind, theta, opts.n_points, opts.marked, 1,
                                          opts.narrow_factor * bound);
        HillFit refit = fit_hill(narrow);
        if (refit.ok) {
            out.section = std::move(narrow);
            out.fit = refit;
            out.window = opts.narrow_factor * bound;
            out.narrowed = true;
        }
    }
    return out;
}

bool scan_entry_valid(const FittedSection& entry, double theta, const ScanOptions& opts) {
    if (!entry.fit.ok) return false;
    const HillParams& p = entry.fit.params;
    const std::size_t n_samples = entry.section.prob.size();
    if (n_samples < 3 || entry.section.omega_axis.size() != n_samples) return false;
    const double grid_step = 2.0 * entry.window / static_cast<double>(n_samples - 1);

    // Scale sanity: plateau height within physical range, width resolvable on
    // the grid and bounded by the admissible span, residuals small.
    if (p.b < opts.b_min || p.b > opts.b_max) return false;
    if (p.k < grid_step || p.k > opts.k_max_bounds * omega_bound(theta)) return false;
    if (p.sigma > opts.sigma_b_ratio * p.b) return false;
    // Shape sanity: a plateau, not a dome or cusp.
    if (p.n < opts.n_min) return false;
    // The plateau must describe the central peak, not an off-center sidelobe.
    const double p_center = entry.section.prob[n_samples / 2];
    if (std::fabs(p.b - p_center) > opts.center_tol) return false;
    // Fit/data agreement on the robust interval itself. The sampled interval
    // is quantized to the grid and can under-reach by up to one step, so the
    // lower comparison gets that one step as credit.
    const double eps_fit = robustness_epsilon(p, opts.omega_threshold).epsilon;
    if (!(eps_fit > 0.0) || !std::isfinite(eps_fit)) return false;
    const double eps_data = robustness_epsilon(entry.section, opts.omega_threshold).epsilon;
    if (eps_data + grid_step < opts.eps_ratio_lo * eps_fit) return false;
    if (eps_data > opts.eps_ratio_hi * eps_fit) return false;
    return true;
}

std::vector<double> make_theta_grid(int step_units) {
    if (step_units <= 0 || 360 % step_units != 0)
        throw std::invalid_argument("make_theta_grid: step must be a positive divisor of 360");
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(360 / step_units) + 1);
    for (int i = 0; i * step_units <= 360; ++i) grid.push_back(i * step_units * kPi / 360.0);
    return grid;
}

ThetaScanResult scan_theta(int m, SequenceKind kind, const std::vector<double>& theta_grid,
                           const ScanOptions& opts) {
    if (theta_grid.empty()) throw std::invalid_argument("scan_theta: empty theta grid");
    for (double t : theta_grid)
        if (!(t >= 0.0 && t <= kPi + 1e-12))
            throw std::invalid_argument("scan_theta: theta outside [0, pi]");

    ThetaScanResult result;
    result.m = m;
    result.kind = kind;
    result.entries.resize(theta_grid.size());

    // Parallelize over theta; the inner sweeps stay single-threaded.
    parallel_for_index(theta_grid.size(), opts.workers, [&](std::size_t i) {
        ThetaScanEntry& e = result.entries[i];
        e.theta = theta_grid[i];
        const double bound = omega_bound(e.theta);

        e.full.section = sweep_omega(m, kind, e.theta, opts.n_points, opts.marked, 1);
        e.full.fit = fit_hill(e.full.section);
        e.full.window = bound;

        e.narrow.section = sweep_omega(m, kind, e.theta, opts.n_points, opts.marked, 1,
                                       opts.narrow_factor * bound);
        e.narrow.fit = fit_hill(e.narrow.section);
        e.narrow.window = opts.narrow_factor * bound;
        e.narrow.narrowed = true;

        e.valid_best = scan_entry_valid(e.full, e.theta, opts);
        e.valid_worst = scan_entry_valid(e.narrow, e.theta, opts);
    });

    bool any_best = false, any_worst = false;
    double best_k = -std::numeric_limits<double>::infinity();
    double worst_k = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < result.entries.size(); ++i) {
        const ThetaScanEntry& e = result.entries[i];
        if (e.valid_best && e.full.fit.params.k > best_k) {  // strict: ties keep smaller theta
            best_k = e.full.fit.params.k;
            result.idx_best = i;
            any_best = true;
        }
        if (e.valid_worst && e.narrow.fit.params.k < worst_k) {
            worst_k = e.narrow.fit.params.k;
            result.idx_worst = i;
            any_worst = true;
        }
    }
    if (!any_best || !any_worst) {
        std::ostringstream msg;
        msg << "scan_theta: no valid " << (any_best ? "worst" : "best") << "-case fit for "
            << kind_name(kind) << " at m=" << m << ";";
        int shown = 0;
        for (const ThetaScanEntry& e : result.entries) {
            if (shown == 3) break;
            const HillFit& fit = any_best ? e.narrow.fit : e.full.fit;
            msg << " theta=" << e.theta << ": "
                << (fit.ok ? "rejected by validity gate" : fit.error) << ";";
            ++shown;
        }
        throw std::runtime_error(msg.str());
    }
    result.report_best = result.entries[result.idx_best].full;
    result.report_worst = result.entries[result.idx_worst].narrow;
    return result;
}

KTrend fit_k_trend(const std::vector<KTrendPoint>& points, const std::vector<int>& excluded_m) {
    KTrend trend;
    trend.excluded_m = excluded_m;
    for (const KTrendPoint& p : points) {
        if (std::find(excluded_m.begin(), excluded_m.end(), p.m) == excluded_m.end())
            trend.points.push_back(p);
    }
    const std::size_t n = trend.points.size();
    if (n < 4)
        throw std::invalid_argument("fit_k_trend: need at least 4 points after exclusion");

    double k_min = trend.points[0].k, k_max = trend.points[0].k, k_sum = 0.0;
    for (const KTrendPoint& p : trend.points) {
        k_min = std::min(k_min, p.k);
        k_max = std::max(k_max, p.k);
        k_sum += p.k;
    }
    const double mean = k_sum / static_cast<double>(n);
    if (k_max - k_min < 1e-9) {
        trend.ok = true;
        trend.degenerate = true;
        trend.k1 = 0.0;
        trend.k2 = 0.0;
        trend.k3 = mean;
        double sse = 0.0;
        for (const KTrendPoint& p : trend.points) sse += (p.k - mean) * (p.k - mean);
        trend.sigma = std::sqrt(sse / static_cast<double>(n - 3));
        return trend;
    }

    const detail::GnModel model = [&](const std::vector<double>& p, std::vector<double>& r,
                                      std::vector<double>& jac) {
        const double k1 = p[0], k2 = p[1], k3 = p[2];
        if (!std::isfinite(k1) || !std::isfinite(k2) || !std::isfinite(k3)) return false;
        for (std::size_t i = 0; i < trend.points.size(); ++i) {
            const double mval = trend.points[i].m;
            const double arg = -mval * k2;
            if (arg > 500.0) return false;  // exp overflow
            const double e = std::exp(arg);
            r[i] = k1 * e + k3 - trend.points[i].k;
            jac[i * 3 + 0] = e;
            jac[i * 3 + 1] = -mval * k1 * e;
            jac[i * 3 + 2] = 1.0;
        }
        return true;
    };

    const double k2_starts[] = {0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 20.0};
    bool have_best = false;
    double best_sse = std::numeric_limits<double>::infinity();
    std::vector<double> best_params;
    for (double k2_0 : k2_starts) {
        // Linear least squares for (k1, k3) on the basis {exp(-m k2_0), 1}.
        double sff = 0.0, sf = 0.0, sfk = 0.0, sk = 0.0;
        for (const KTrendPoint& p : trend.points) {
            const double f = std::exp(-p.m * k2_0);
            sff += f * f;
            sf += f;
            sfk += f * p.k;
            sk += p.k;
        }
        std::vector<double> init;
        std::vector<double> a{sff, sf, sf, static_cast<double>(n)};
        if (detail::solve_small(a, {sfk, sk}, 2, init)) {
            init = {init[0], k2_0, init[1]};
        } else {
            init = {0.0, k2_0, mean};
        }
        const detail::GnResult res = detail::gauss_newton(model, init, n);
        if (!res.ok || !std::isfinite(res.sse)) continue;
        if (res.sse < best_sse) {  // strict: ties keep the earlier start
            best_sse = res.sse;
            best_params = res.params;
            have_best = true;
        }
    }
    if (!have_best) {
        trend.error = "all trend starts diverged";
        return trend;
    }
    trend.ok = true;
    trend.k1 = best_params[0];
    trend.k2 = best_params[1];
    trend.k3 = best_params[2];
    trend.sigma = std::sqrt(best_sse / static_cast<double>(n - 3));
    return trend;
}

std::vector<int> default_exclusions(SequenceKind kind, bool best_case) {
    if (kind == SequenceKind::PM && best_case) return {4};
    return {};
}

SequenceAnalysis analyze_sequence(int m_min, int m_max, SequenceKind kind,
                                  const std::vector<double>& theta_grid,
                                  const ScanOptions& opts) {
    if (m_min < 2 || m_max < m_min)
        throw std::invalid_argument("analyze_sequence: need 2 <= m_min <= m_max");
    SequenceAnalysis out;
    out.kind = kind;
    for (int m = m_min; m <= m_max; ++m) {
        const ThetaScanResult scan = scan_theta(m, kind, theta_grid, opts);
        for (bool best_case : {true, false}) {
            const ThetaScanEntry& e = best_case ? scan.best() : scan.worst();
            const FittedSection& rep = best_case ? scan.report_best : scan.report_worst;
            CaseSummary s;
            s.m = m;
            s.theta = e.theta;
            s.fit = rep.fit.params;
            s.window = rep.window;
            s.narrowed = rep.narrowed;
            s.epsilon = robustness_epsilon(s.fit, opts.omega_threshold).epsilon;
            (best_case ? out.best : out.worst).push_back(s);
        }
    }
    for (bool best_case : {true, false}) {
        std::vector<KTrendPoint> pts;
        for (const CaseSummary& s : best_case ? out.best : out.worst)
            pts.push_back({s.m, s.fit.k});
        KTrend& trend = best_case ? out.trend_best : out.trend_worst;
        if (pts.size() >= 4)
            trend = fit_k_trend(pts, default_exclusions(kind, best_case));
        else
            trend.error = "too few m values for a trend fit";
    }
    return out;
}

Comparison compare_sequences(const std::vector<SequenceAnalysis>& seqs) {
    if (seqs.empty()) throw std::invalid_argument("compare_sequences: no analyses");
    // Largest m present in every analysis.
    int m_top = std::numeric_limits<int>::max();
    for (const SequenceAnalysis& s : seqs) {
        if (s.best.empty() || s.worst.empty())
            throw std::invalid_argument("compare_sequences: analysis without per-m summaries");
        m_top = std::min(m_top, s.best.back().m);
    }
    Comparison cmp;
    cmp.m = m_top;
    auto pick = [&](const std::vector<CaseSummary>& rows) {
        for (const CaseSummary& r : rows)
            if (r.m == m_top) return r.fit.k;
        throw std::invalid_argument("compare_sequences: analyses cover different m ranges");
    };
    for (const SequenceAnalysis& s : seqs) {
        cmp.best_ranked.push_back({s.kind, pick(s.best)});
        cmp.worst_ranked.push_back({s.kind, pick(s.worst)});
    }
    auto by_k_desc = [](const RankEntry& a, const RankEntry& b) { return a.k > b.k; };
    std::stable_sort(cmp.best_ranked.begin(), cmp.best_ranked.end(), by_k_desc);
    std::stable_sort(cmp.worst_ranked.begin(), cmp.worst_ranked.end(), by_k_desc);
    return cmp;
}

}  // namespace qrws
