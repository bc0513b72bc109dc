#include "qrws/hill.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qrws/detail/gauss_newton.hpp"

namespace qrws {
namespace {

// Numerically safe evaluation core. With t = (|omega-c|/k)^n the model is
// W = b / (1 + t); computing s = 1/(1+t) through log t avoids overflow for
// large exponents n and extreme distances. Returns s and, through g, the
// shared derivative factor n * s * (1 - s).
struct HillCore {
    double s = 1.0;
    double g = 0.0;       // n * s * (1 - s)
    double ln_ratio = 0;  // log(|omega - c| / k)
    bool at_center = false;
};

HillCore hill_core(double omega, double lb_unused, double lk, double ln_n, double c) {
    (void)lb_unused;
    HillCore core;
    const double r = std::fabs(omega - c);
    if (r < 1e-300) {
        core.at_center = true;
        return core;  // W = b exactly; all shape derivatives vanish
    }
    const double n = std::exp(ln_n);
    core.ln_ratio = std::log(r) - lk;
    const double ln_t = n * core.ln_ratio;
    if (ln_t > 0.0) {
        const double e = std::exp(-ln_t);  // in (0, 1]
        core.s = e / (1.0 + e);
    } else {
        const double t = std::exp(ln_t);  // in (0, 1]
        core.s = 1.0 / (1.0 + t);
    }
    core.g = n * core.s * (1.0 - core.s);
    return core;
}

// Builds the Gauss-Newton model over parameters [log b, log k, log n (, c)].
detail::GnModel make_model(const std::vector<double>& omega, const std::vector<double>& prob,
                           bool fix_center) {
    const std::size_t q = fix_center ? 3 : 4;
    return [&omega, &prob, q, fix_center](const std::vector<double>& p, std::vector<double>& r,
                                          std::vector<double>& jac) {
        const double lb = p[0], lk = p[1], ln_n = p[2];
        const double c = fix_center ? 0.0 : p[3];
        if (!std::isfinite(lb) || !std::isfinite(lk) || !std::isfinite(ln_n) || !std::isfinite(c))
            return false;
        if (lb > 700.0 || lk > 700.0 || ln_n > 10.0) return false;  // exp would overflow/blow up
        const double b = std::exp(lb);
        for (std::size_t i = 0; i < omega.size(); ++i) {
            const HillCore core = hill_core(omega[i], lb, lk, ln_n, c);
            const double w = b * core.s;
            r[i] = w - prob[i];
            jac[i * q + 0] = w;                   // d/d(log b)
            jac[i * q + 1] = b * core.g;          // d/d(log k)
            jac[i * q + 2] = core.at_center ? 0.0
                                            : -b * core.g * core.ln_ratio;  // d/d(log n)
            if (!fix_center) {
                if (core.at_center) {
                    jac[i * q + 3] = 0.0;
                } else {
                    const double rdist = std::fabs(omega[i] - c);
                    const double sgn = omega[i] > c ? 1.0 : -1.0;
                    jac[i * q + 3] = b * core.g * sgn / rdist;  // d/dc
                }
            }
        }
        return true;
    };
}

struct Candidate {
    bool valid = false;
    double sse = std::numeric_limits<double>::infinity();
    HillParams params;
};

}  // namespace

double hill_eval(double omega, const HillParams& params) {
    const HillCore core =
        hill_core(omega, 0.0, std::log(params.k), std::log(params.n), params.c);
    return params.b * core.s;
}

double hill_sigma(const HillParams& params, const std::vector<double>& omega,
                  const std::vector<double>& prob) {
    if (omega.size() != prob.size())
        throw std::invalid_argument("hill_sigma: omega/prob size mismatch");
    const int dof = static_cast<int>(omega.size()) - params.q;
    if (dof <= 0) throw std::invalid_argument("hill_sigma: need more points than parameters");
    double sse = 0.0;
    for (std::size_t i = 0; i < omega.size(); ++i) {
        const double d = hill_eval(omega[i], params) - prob[i];
        sse += d * d;
    }
    return std::sqrt(sse / dof);
}

HillFit fit_hill(const CrossSection& cs, bool fix_center, bool strict_nk) {
    const std::vector<double>& omega = cs.omega_axis;
    const std::vector<double>& prob = cs.prob;
    if (omega.size() != prob.size())
        throw std::invalid_argument("fit_hill: omega/prob size mismatch");
    if (omega.size() < 8) throw std::invalid_argument("fit_hill: need at least 8 points");

    HillFit fit;
    const auto [min_it, max_it] = std::minmax_element(prob.begin(), prob.end());
    if (*max_it - *min_it < 1e-9 || *max_it < 1e-300) {
        fit.error = "flat data: Hill parameters are not identifiable";
        return fit;
    }

    const std::size_t i_peak =
        static_cast<std::size_t>(std::max_element(prob.begin(), prob.end()) - prob.begin());
    const double span = omega.back() - omega.front();
    const double b0 = *max_it;
    const detail::GnModel model = make_model(omega, prob, fix_center);
    const std::size_t q = fix_center ? 3 : 4;

    std::vector<double> c_starts{0.0};
    if (!fix_center && omega[i_peak] != 0.0) c_starts.push_back(omega[i_peak]);
    const double k_scales[] = {0.1, 0.5, 1.0, 2.0, 5.0};
    const double n_starts[] = {1.0, 2.0, 4.0, 8.0};

    Candidate best;
    for (double ks : k_scales)
        for (double n0 : n_starts)
            for (double c0 : c_starts) {
                const double k0 = ks * span / 4.0;
                if (k0 <= 0.0) continue;
                std::vector<double> p0{std::log(b0), std::log(k0), std::log(n0)};
                if (!fix_center) p0.push_back(c0);
                const detail::GnResult res = detail::gauss_newton(model, p0, omega.size());
                if (!res.ok) continue;
                Candidate cand;
                cand.valid = true;
                cand.sse = res.sse;
                cand.params.b = std::exp(res.params[0]);
                cand.params.k = std::exp(res.params[1]);
                cand.params.n = std::exp(res.params[2]);
                cand.params.c = fix_center ? 0.0 : res.params[3];
                cand.params.q = static_cast<int>(q);
                cand.params.n_points = static_cast<int>(omega.size());
                if (!std::isfinite(cand.params.b) || !std::isfinite(cand.params.k) ||
                    !std::isfinite(cand.params.n) || !std::isfinite(cand.sse))
                    continue;
                if (strict_nk && cand.params.n <= cand.params.k) continue;
                if (cand.sse < best.sse) best = cand;  // ties keep the earlier start
            }

    if (!best.valid) {
        fit.error = strict_nk ? "no candidate satisfied n > k"
                              : "all optimizer starts diverged";
        return fit;
    }
    best.params.sigma = hill_sigma(best.params, omega, prob);
    fit.ok = true;
    fit.params = best.params;
    return fit;
}

RobustnessReport robustness_epsilon(const CrossSection& cs, double omega_threshold) {
    if (cs.omega_axis.empty() || cs.omega_axis.size() != cs.prob.size())
        throw std::invalid_argument("robustness_epsilon: empty or mismatched cross-section");
    if (omega_threshold <= 0.0 || omega_threshold >= 1.0)
        throw std::invalid_argument("robustness_epsilon: threshold must lie in (0, 1)");

    RobustnessReport rep;
    rep.omega_threshold = omega_threshold;
    const std::size_t n = cs.prob.size();
    const std::size_t i_max = static_cast<std::size_t>(
        std::max_element(cs.prob.begin(), cs.prob.end()) - cs.prob.begin());
    rep.omega_max = cs.omega_axis[i_max];
    rep.p_max = cs.prob[i_max];
    const double floor = omega_threshold * rep.p_max;

    // Expand symmetric rings around the peak; a ring fails as soon as any
    // sampled point inside it drops below the threshold. Points beyond the
    // sampled window never constrain the interval.
    std::size_t ring = 1;
    double eps = 0.0;
    for (;; ++ring) {
        const bool has_left = i_max >= ring;
        const bool has_right = i_max + ring < n;
        if (!has_left && !has_right) break;  // ran off both ends: whole window robust
        if (has_left && cs.prob[i_max - ring] < floor) break;
        if (has_right && cs.prob[i_max + ring] < floor) break;
        double reach = 0.0;
        if (has_left) reach = std::max(reach, rep.omega_max - cs.omega_axis[i_max - ring]);
        if (has_right) reach = std::max(reach, cs.omega_axis[i_max + ring] - rep.omega_max);
        eps = reach;
    }
    rep.epsilon = eps;
    return rep;
}

RobustnessReport robustness_epsilon(const HillParams& params, double omega_threshold) {
    if (omega_threshold <= 0.0 || omega_threshold >= 1.0)
        throw std::invalid_argument("robustness_epsilon: threshold must lie in (0, 1)");
    if (params.k <= 0.0 || params.n <= 0.0)
        throw std::invalid_argument("robustness_epsilon: k and n must be positive");
    RobustnessReport rep;
    rep.omega_threshold = omega_threshold;
    rep.omega_max = params.c;
    rep.p_max = params.b;
    // Solve b * k^n / (eps^n + k^n) = threshold * b for eps.
    rep.epsilon = params.k * std::pow((1.0 - omega_threshold) / omega_threshold, 1.0 / params.n);
    return rep;
}

}  // namespace qrws
