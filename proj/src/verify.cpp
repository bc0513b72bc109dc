#include "qrws/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "qrws/dense_reference.hpp"
#include "qrws/hill.hpp"
#include "qrws/schedule.hpp"
#include "qrws/sweep.hpp"
#include "qrws/walk.hpp"

namespace qrws {
namespace {

constexpr std::uint64_t kSeedBase = 0x51c3a7b2d4e5f601ULL;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

// Deterministic random polar point for schedule index i: theta uniform in
// [0, pi], omega uniform within its admissible range.
PolarPoint random_polar(std::uint64_t i) {
    std::mt19937_64 rng(kSeedBase + i);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    PolarPoint pt;
    pt.theta = unit(rng) * 3.14159265358979323846;
    const double bound = omega_bound(pt.theta);
    pt.omega = (2.0 * unit(rng) - 1.0) * bound;
    return pt;
}

// A state with generic complex amplitudes: a short walk from the uniform
// start. Used where "random" inputs must still be reproducible.
WalkState generic_state(int m) {
    WalkState st = init_state(m);
    const std::vector<std::uint64_t> marked{0};
    apply_iteration(st, {2.0, 1.0}, marked);
    apply_iteration(st, {4.5, 5.5}, marked);
    return st;
}

PropertyResult check_norm_preservation() {
    PropertyResult res{"norm preservation per operator (< 1e-10)", true, ""};
    double worst = 0.0;
    for (int m : {2, 3, 4}) {
        const std::vector<std::uint64_t> marked{1 % (1u << m)};
        WalkState st = init_state(m);
        for (int j = 0; j < iteration_count(m); ++j) {
            const PolarPoint pt = random_polar(1000 + static_cast<std::uint64_t>(100 * m + j));
            const CoinPhases ph = polar_to_phases(pt.omega, pt.theta);
            apply_oracle(st, marked);
            worst = std::max(worst, std::fabs(total_norm(st) - 1.0));
            apply_coins(st, ph);
            worst = std::max(worst, std::fabs(total_norm(st) - 1.0));
            apply_oracle(st, marked);
            worst = std::max(worst, std::fabs(total_norm(st) - 1.0));
            apply_shift(st);
            worst = std::max(worst, std::fabs(total_norm(st) - 1.0));
        }
    }
    res.pass = worst < 1e-10;
    res.detail = "max |norm - 1| = " + fmt(worst);
    return res;
}

PropertyResult check_involutions() {
    PropertyResult res{"oracle and shift involutions (exact)", true, ""};
    for (int m : {2, 3, 4}) {
        const std::vector<std::uint64_t> marked{0, (1u << m) - 1u};
        const WalkState original = generic_state(m);
        WalkState st = original;
        apply_oracle(st, marked);
        apply_oracle(st, marked);
        bool same = st.amp == original.amp;
        st = original;
        apply_shift(st);
        apply_shift(st);
        same = same && st.amp == original.amp;
        if (!same) {
            res.pass = false;
            res.detail = "double application differs at m=" + std::to_string(m);
            return res;
        }
    }
    res.detail = "O*O and S*S bitwise identical for m in {2,3,4}";
    return res;
}

PropertyResult check_dense_equivalence(unsigned workers) {
    PropertyResult res{"dense-matrix equivalence (< 1e-10)", true, ""};
    const int schedules_per_kind = 20;
    double worst = 0.0;
    for (int m : {2, 3, 4}) {
        const std::vector<std::uint64_t> marked{0};
        const std::vector<SequenceKind> kinds = all_kinds();
        const std::size_t total = kinds.size() * schedules_per_kind;
        // Each cell returns its probability deviation; the map keeps the
        // dense runs deterministic and index-ordered at any worker count.
        const std::vector<double> devs = parallel_map(
            total,
            [&](std::size_t idx) {
                const SequenceKind kind = kinds[idx / schedules_per_kind];
                const PolarPoint pt =
                    random_polar(static_cast<std::uint64_t>(m) * 10000 + idx);
                const PhaseSchedule sched = schedule_phases(kind, pt, iteration_count(m));
                const double p_fast = run_walk(m, sched.phases, marked);
                const double p_dense = dense_reference_run(m, sched.phases, marked);
                return std::fabs(p_fast - p_dense);
            },
            workers);
        for (double d : devs) worst = std::max(worst, d);
    }
    res.pass = worst < 1e-10;
    res.detail = "max |p_fast - p_dense| = " + fmt(worst) +
                 " over 20 random schedules/kind, m in {2,3,4}";
    return res;
}

PropertyResult check_conjugation_symmetry() {
    PropertyResult res{"conjugation symmetry p(phi,zeta) = p(2pi-phi,2pi-zeta) (< 1e-12)", true,
                       ""};
    constexpr double two_pi = 2.0 * 3.14159265358979323846;
    double worst = 0.0;
    for (int m : {2, 3, 4}) {
        const std::vector<std::uint64_t> marked{0};
        for (SequenceKind kind : all_kinds())
            for (std::uint64_t i = 0; i < 6; ++i) {
                const PolarPoint pt =
                    random_polar(static_cast<std::uint64_t>(m) * 777 + i * 7 +
                                 static_cast<std::uint64_t>(kind));
                const PhaseSchedule sched = schedule_phases(kind, pt, iteration_count(m));
                std::vector<CoinPhases> mirrored = sched.phases;
                for (CoinPhases& ph : mirrored) {
                    ph.phi = two_pi - ph.phi;
                    ph.zeta = two_pi - ph.zeta;
                }
                const double p = run_walk(m, sched.phases, marked);
                const double p_conj = run_walk(m, mirrored, marked);
                worst = std::max(worst, std::fabs(p - p_conj));
            }
    }
    res.pass = worst < 1e-12;
    res.detail = "max |p - p_conj| = " + fmt(worst);
    return res;
}

PropertyResult check_omega_zero_equivalence() {
    PropertyResult res{"omega = 0 cross-kind equivalence (< 1e-12)", true, ""};
    double worst = 0.0;
    for (int m : {2, 3, 4, 5}) {
        const std::vector<std::uint64_t> marked{0};
        for (double theta : {0.3, 1.1088, 2.0333, 2.9}) {
            double p_ref = -1.0;
            for (SequenceKind kind : all_kinds()) {
                const PhaseSchedule sched =
                    schedule_phases(kind, {0.0, theta}, iteration_count(m));
                const double p = run_walk(m, sched.phases, marked);
                if (p_ref < 0.0)
                    p_ref = p;
                else
                    worst = std::max(worst, std::fabs(p - p_ref));
            }
        }
    }
    res.pass = worst < 1e-12;
    res.detail = "max cross-kind spread = " + fmt(worst);
    return res;
}

PropertyResult check_hill_self_consistency() {
    PropertyResult res{"Hill fit self-consistency on noiseless data (< 1e-6)", true, ""};
    HillParams truth;
    truth.b = 0.4;
    truth.k = 2.0;
    truth.n = 3.0;
    truth.c = 0.0;
    CrossSection cs;
    cs.theta = 0.0;
    const int n_points = 201;
    for (int i = 0; i < n_points; ++i) {
        const double omega = -3.0 + 6.0 * i / (n_points - 1);
        cs.omega_axis.push_back(omega);
        cs.prob.push_back(hill_eval(omega, truth));
    }
    const HillFit fit = fit_hill(cs);
    if (!fit.ok) {
        res.pass = false;
        res.detail = "fit failed: " + fit.error;
        return res;
    }
    const double dev = std::max({std::fabs(fit.params.b - truth.b), std::fabs(fit.params.k - truth.k),
                                 std::fabs(fit.params.n - truth.n), std::fabs(fit.params.c - truth.c)});
    res.pass = dev < 1e-6 && fit.params.sigma < 1e-7;
    res.detail = "max parameter deviation = " + fmt(dev) + ", sigma = " + fmt(fit.params.sigma);
    return res;
}

PropertyResult check_epsilon_agreement() {
    PropertyResult res{"analytic vs sampled robustness epsilon (within one grid step)", true, ""};
    HillParams truth;
    truth.b = 0.42;
    truth.k = 1.3;
    truth.n = 2.5;
    truth.c = 0.0;
    CrossSection cs;
    const int n_points = 201;
    const double span = 3.0;
    for (int i = 0; i < n_points; ++i) {
        const double omega = -span + 2.0 * span * i / (n_points - 1);
        cs.omega_axis.push_back(omega);
        cs.prob.push_back(hill_eval(omega, truth));
    }
    const double grid_step = 2.0 * span / (n_points - 1);
    double worst = 0.0;
    for (double threshold : {0.8, 0.9, 0.95}) {
        const double eps_data = robustness_epsilon(cs, threshold).epsilon;
        const double eps_analytic = robustness_epsilon(truth, threshold).epsilon;
        worst = std::max(worst, std::fabs(eps_data - eps_analytic));
    }
    res.pass = worst <= grid_step + 1e-12;
    res.detail = "max |eps_data - eps_analytic| = " + fmt(worst) + ", grid step = " +
                 fmt(grid_step);
    return res;
}

}  // namespace

std::vector<PropertyResult> run_verification(unsigned workers) {
    std::vector<PropertyResult> results;
    results.push_back(check_norm_preservation());
    results.push_back(check_involutions());
    results.push_back(check_dense_equivalence(workers));
    results.push_back(check_conjugation_symmetry());
    results.push_back(check_omega_zero_equivalence());
    results.push_back(check_hill_self_consistency());
    results.push_back(check_epsilon_agreement());
    return results;
}

bool all_passed(const std::vector<PropertyResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const PropertyResult& r) { return r.pass; });
}

}  // namespace qrws
