#pragma once
#include <cstdint>
#include <functional>
#include <vector>

#include "qrws/schedule.hpp"
#include "qrws/walk.hpp"

namespace qrws {

// Success probability over an R x R grid of base phases (phi, zeta) in
// [0, 2pi]^2 (both endpoints included; row-major over zeta-then-phi index).
struct Grid2D {
    int m = 0;
    SequenceKind kind = SequenceKind::PM;
    std::vector<double> phi_axis;
    std::vector<double> zeta_axis;
    std::vector<double> prob;  // prob[iz * phi_axis.size() + ip]

    double at(std::size_t iz, std::size_t ip) const { return prob[iz * phi_axis.size() + ip]; }
};

// Success probability along a fixed-theta line, sampled symmetrically about
// omega = 0 (includes 0; default span is the full admissible omega range).
struct CrossSection {
    int m = 0;
    SequenceKind kind = SequenceKind::PM;
    double theta = 0.0;
    std::vector<double> omega_axis;
    std::vector<double> prob;
};

// Deterministic parallel map: evaluates fn(i) for i in [0, count) on up to
// `workers` threads and assembles results strictly by index, so the output is
// identical for any worker count. A throwing cell aborts the map; the error
// is reported for the smallest failing index.
std::vector<double> parallel_map(std::size_t count, const std::function<double(std::size_t)>& fn,
                                 unsigned workers);

// Worker count resolution: explicit request > QRWS_WORKERS env > hardware.
unsigned resolve_workers(unsigned requested);

// Fig.-style 2D sweep. The kind's sign rule is applied directly to the base
// phases (phi_a, zeta_b); no (omega, theta) mapping is involved.
Grid2D sweep_phase_plane(int m, SequenceKind kind, int resolution,
                         const std::vector<std::uint64_t>& marked, unsigned workers = 0);

// 1D omega sweep along the theta line via schedule_phases. n_points must be
// odd (>= 11) so omega = 0 is sampled. omega_max = 0 means the full
// omega_bound(theta) span; a positive value narrows the sampled interval.
CrossSection sweep_omega(int m, SequenceKind kind, double theta, int n_points,
                         const std::vector<std::uint64_t>& marked, unsigned workers = 0,
                         double omega_max = 0.0);

}  // namespace qrws
