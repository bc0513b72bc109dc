#include "qrws/sweep.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

namespace qrws {

unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("QRWS_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return unsigned(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

std::vector<double> parallel_map(std::size_t count, const std::function<double(std::size_t)>& fn,
                                 unsigned workers) {
    std::vector<double> out(count, 0.0);
    if (count == 0) return out;
    workers = resolve_workers(workers);
    if (workers > count) workers = unsigned(count);

    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> first_failure{count};
    std::vector<std::string> messages(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count || first_failure.load() < count) return;
                try {
                    out[i] = fn(i);
                } catch (const std::exception& e) {
                    std::size_t expected = count;
                    // keep the smallest failing index so diagnostics are deterministic
                    while (!first_failure.compare_exchange_weak(expected, i) && expected < i) {
                    }
                    if (first_failure.load() == i) messages[w] = e.what();
                    return;
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();

    const std::size_t failed = first_failure.load();
    if (failed < count) {
        std::string what = "sweep task failed at grid index " + std::to_string(failed);
        for (const std::string& msg : messages)
            if (!msg.empty()) {
                what += ": " + msg;
                break;
            }
        throw std::runtime_error(what);
    }
    return out;
}

Grid2D sweep_phase_plane(int m, SequenceKind kind, int resolution,
                         const std::vector<std::uint64_t>& marked, unsigned workers) {
    if (resolution < 2) throw std::invalid_argument("sweep2d: resolution must be >= 2");
    Grid2D grid;
    grid.m = m;
    grid.kind = kind;
    grid.phi_axis.resize(resolution);
    grid.zeta_axis.resize(resolution);
    for (int i = 0; i < resolution; ++i) {
        const double t = 2.0 * kPi * double(i) / double(resolution - 1);
        grid.phi_axis[i] = t;
        grid.zeta_axis[i] = t;
    }
    const int k_iter = iteration_count(m);
    const std::size_t cells = std::size_t(resolution) * resolution;
    grid.prob = parallel_map(
        cells,
        [&](std::size_t idx) {
            const std::size_t iz = idx / resolution;
            const std::size_t ip = idx % resolution;
            // The sign rule acts on the raw base phases, exactly as on a
            // schedule built from (omega, theta).
            const CoinPhases base{grid.phi_axis[ip], grid.zeta_axis[iz]};
            return run_walk(m, apply_sign_rule(kind, base, k_iter), marked);
        },
        workers);
    return grid;
}

CrossSection sweep_omega(int m, SequenceKind kind, double theta, int n_points,
                         const std::vector<std::uint64_t>& marked, unsigned workers,
                         double omega_max) {
    if (n_points < 11 || n_points % 2 == 0)
        throw std::invalid_argument("cross-section: n_points must be odd and >= 11");
    const double bound = omega_bound(theta);
    double span = omega_max > 0.0 ? omega_max : bound;
    if (span > bound + 1e-12) throw std::invalid_argument("cross-section: omega_max beyond omega_bound");
    CrossSection cs;
    cs.m = m;
    cs.kind = kind;
    cs.theta = theta;
    cs.omega_axis.resize(n_points);
    for (int i = 0; i < n_points; ++i)
        cs.omega_axis[i] = -span + 2.0 * span * double(i) / double(n_points - 1);
    cs.omega_axis[(n_points - 1) / 2] = 0.0;  // exact center
    const int k_iter = iteration_count(m);
    cs.prob = parallel_map(
        std::size_t(n_points),
        [&](std::size_t i) {
            const PhaseSchedule sched =
                schedule_phases(kind, PolarPoint{cs.omega_axis[i], theta}, k_iter);
            return run_walk(m, sched.phases, marked);
        },
        workers);
    return cs;
}

}  // namespace qrws
