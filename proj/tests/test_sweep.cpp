#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "qrws/dense_reference.hpp"
#include "qrws/sweep.hpp"

using namespace qrws;

namespace {
const std::vector<std::uint64_t> kMarked0{0};
}

TEST_CASE("parallel_map: empty input, order, and worker invariance") {
    CHECK(parallel_map(0, [](std::size_t) { return 0.0; }, 4).empty());

    auto fn = [](std::size_t i) { return std::sin(0.1 * static_cast<double>(i)); };
    const std::vector<double> one = parallel_map(1000, fn, 1);
    const std::vector<double> four = parallel_map(1000, fn, 4);
    CHECK(one == four);  // bitwise: assembly is by index, not completion
}

TEST_CASE("parallel_map reports the smallest failing index") {
    auto fn = [](std::size_t i) -> double {
        if (i >= 17) throw std::runtime_error("boom");
        return 1.0;
    };
    try {
        parallel_map(100, fn, 4);
        FAIL("expected a failure");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("17") != std::string::npos);
    }
}

TEST_CASE("resolve_workers: explicit > env > hardware") {
    CHECK(resolve_workers(3) == 3);
    setenv("QRWS_WORKERS", "2", 1);
    CHECK(resolve_workers(0) == 2);
    CHECK(resolve_workers(5) == 5);
    unsetenv("QRWS_WORKERS");
    CHECK(resolve_workers(0) >= 1);
}

TEST_CASE("sweep_phase_plane: axes, center value, and probability bounds") {
    const Grid2D grid = sweep_phase_plane(4, SequenceKind::PM, 5, kMarked0);
    REQUIRE(grid.phi_axis.size() == 5);
    REQUIRE(grid.zeta_axis.size() == 5);
    CHECK(grid.phi_axis.front() == 0.0);
    CHECK(grid.phi_axis.back() == doctest::Approx(2 * kPi).epsilon(1e-15));
    // Cell (2, 2) is exactly (pi, pi): the known peak.
    CHECK(std::fabs(grid.at(2, 2) - 0.391) <= 0.05);
    for (double p : grid.prob) {
        CHECK(p >= 0.0);
        CHECK(p <= 1.0 + 1e-12);
    }
}

TEST_CASE("sweep_phase_plane: grid is conjugation-symmetric") {
    // p(phi, zeta) = p(2pi - phi, 2pi - zeta); with both endpoints on the
    // axes this is an index mirror.
    const int r = 9;
    for (SequenceKind kind : {SequenceKind::PM, SequenceKind::A3, SequenceKind::H2}) {
        const Grid2D grid = sweep_phase_plane(3, kind, r, kMarked0);
        for (int iz = 0; iz < r; ++iz)
            for (int ip = 0; ip < r; ++ip)
                CHECK(std::fabs(grid.at(iz, ip) - grid.at(r - 1 - iz, r - 1 - ip)) < 1e-12);
    }
}

TEST_CASE("sweep_phase_plane: high-probability stripe exists and is not everything") {
    const Grid2D grid = sweep_phase_plane(6, SequenceKind::PM, 31, kMarked0);
    std::size_t high = 0;
    for (double p : grid.prob)
        if (p >= 0.4) ++high;
    CHECK(high > 0);
    CHECK(high < grid.prob.size());
}

TEST_CASE("sweep_omega: axis symmetric with an exact zero center") {
    const CrossSection cs = sweep_omega(4, SequenceKind::PM, kThetaBestRef, 21, kMarked0);
    REQUIRE(cs.omega_axis.size() == 21);
    CHECK(cs.omega_axis[10] == 0.0);
    for (int i = 0; i < 21; ++i)
        CHECK(cs.omega_axis[i] == doctest::Approx(-cs.omega_axis[20 - i]).epsilon(1e-15));
    CHECK(cs.omega_axis.back() == doctest::Approx(omega_bound(kThetaBestRef)).epsilon(1e-12));
}

TEST_CASE("sweep_omega: omega_max narrows the sampled window") {
    const CrossSection cs = sweep_omega(4, SequenceKind::PM, kThetaBestRef, 11, kMarked0, 1, 0.5);
    CHECK(cs.omega_axis.front() == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(cs.omega_axis.back() == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("sweep_omega input validation") {
    CHECK_THROWS_AS(sweep_omega(4, SequenceKind::PM, kThetaBestRef, 20, kMarked0),
                    std::invalid_argument);  // even
    CHECK_THROWS_AS(sweep_omega(4, SequenceKind::PM, kThetaBestRef, 9, kMarked0),
                    std::invalid_argument);  // too few
    CHECK_THROWS_AS(sweep_omega(4, SequenceKind::PM, kThetaBestRef, 11, kMarked0, 1, 100.0),
                    std::invalid_argument);  // beyond the bound
}

TEST_CASE("sweep_omega matches the dense reference pointwise") {
    const CrossSection cs = sweep_omega(3, SequenceKind::A2, 2.0, 11, kMarked0);
    for (std::size_t i = 0; i < cs.omega_axis.size(); ++i) {
        const PhaseSchedule sched =
            schedule_phases(SequenceKind::A2, {cs.omega_axis[i], 2.0}, iteration_count(3));
        const double p_dense = dense_reference_run(3, sched.phases, kMarked0);
        CHECK(std::fabs(cs.prob[i] - p_dense) < 1e-10);
    }
}

TEST_CASE("sweeps are bitwise deterministic across worker counts") {
    const CrossSection a = sweep_omega(4, SequenceKind::H3, 1.0, 51, kMarked0, 1);
    const CrossSection b = sweep_omega(4, SequenceKind::H3, 1.0, 51, kMarked0, 3);
    CHECK(a.prob == b.prob);
    const Grid2D ga = sweep_phase_plane(3, SequenceKind::A1, 13, kMarked0, 1);
    const Grid2D gb = sweep_phase_plane(3, SequenceKind::A1, 13, kMarked0, 4);
    CHECK(ga.prob == gb.prob);
}

TEST_CASE("grid value at (pi, pi) is kind-independent") {
    // Sign rules act on (pi, pi) by full-period shifts, so every kind agrees.
    double p_ref = -1.0;
    for (SequenceKind kind : all_kinds()) {
        const Grid2D grid = sweep_phase_plane(3, kind, 3, kMarked0);  // axis {0, pi, 2pi}
        if (p_ref < 0)
            p_ref = grid.at(1, 1);
        else
            CHECK(std::fabs(grid.at(1, 1) - p_ref) < 1e-12);
    }
}
