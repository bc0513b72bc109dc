#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "qrws/hill.hpp"
#include "qrws/schedule.hpp"

namespace qrws {

// Options shared by the theta scans and the per-sequence pipeline.
struct ScanOptions {
    int n_points = 201;            // odd, >= 11; samples per cross-section
    double omega_threshold = 0.9;  // Omega level for the robustness interval
    // Adaptive fit window (fixed-theta pipeline): fit on the full admissible
    // omega span first; when the fitted k is small against that span, refit
    // once on a narrower window so the plateau is properly resolved.
    bool adaptive_window = true;
    double narrow_trigger = 0.25;  // refit when k < trigger * omega_bound
    double narrow_factor = 0.5;    // narrow window = factor * omega_bound
    // Validity gate (scan_entry_valid): entries failing it cannot win the
    // best/worst selection. The landscape k(theta) is littered with fit
    // artifacts that would otherwise steal argmin/argmax: collapsed fits on
    // non-bell sections, dome-transition fits with inflated k and small n,
    // spike fits whose plateau tracks a sidelobe instead of the center peak.
    double b_min = 0.02;
    double b_max = 0.6;          // plateau cannot exceed the physical peak scale
    double center_tol = 0.05;    // |b - p(omega=0)|: plateau must track the center
    double n_min = 1.2;          // dome/cusp fits (n below ~1) are not plateaus
    double eps_ratio_lo = 0.7;   // measured / analytic robust half-width must
    double eps_ratio_hi = 1.4;   //   agree: fit and data tell the same story
    double k_max_bounds = 2.0;   // k <= k_max_bounds * omega_bound(theta)
    double sigma_b_ratio = 0.5;  // sigma <= sigma_b_ratio * b
    std::vector<std::uint64_t> marked{0};
    unsigned workers = 0;  // 0: QRWS_WORKERS env, then hardware
};

// A cross-section fitted under the adaptive window policy.
struct FittedSection {
    CrossSection section;   // samples of the window the accepted fit used
    HillFit fit;
    double window = 0.0;    // half-width of that window
    bool narrowed = false;  // the half-window refit was accepted
};

FittedSection fit_cross_section(int m, SequenceKind kind, double theta, const ScanOptions& opts);

bool scan_entry_valid(const FittedSection& entry, double theta, const ScanOptions& opts);

// Scans fit every theta twice: once over the full admissible window and once
// over the narrow (narrow_factor * bound) window. Each case then sticks to
// one profile across all theta and all m — a single consistent estimator. A
// mixed per-theta window choice would put a spurious step in k(theta) right
// where the window policy switches, and argmin/argmax latch onto such steps.
//   best case:  wide plateaus need the full span to pin the shoulder, so the
//               best angle is argmax of the full-profile k over entries whose
//               full fit passes the gate;
//   worst case: narrow plateaus drown in sidelobe structure on the full span,
//               so the worst angle is argmin of the narrow-profile k over
//               entries whose narrow fit passes the gate.
struct ThetaScanEntry {
    double theta = 0.0;
    FittedSection full;        // fit over the full admissible omega span
    FittedSection narrow;      // fit over the narrow window
    bool valid_best = false;   // full-profile fit passed the validity gate
    bool valid_worst = false;  // narrow-profile fit passed the validity gate
};

// Ties resolve toward the smaller theta. Throws if a side has no valid entry.
struct ThetaScanResult {
    int m = 0;
    SequenceKind kind = SequenceKind::PM;
    std::vector<ThetaScanEntry> entries;
    std::size_t idx_best = 0;
    std::size_t idx_worst = 0;
    FittedSection report_best;   // the full-profile fit at the best angle
    FittedSection report_worst;  // the narrow-profile fit at the worst angle

    const ThetaScanEntry& best() const { return entries[idx_best]; }
    const ThetaScanEntry& worst() const { return entries[idx_worst]; }
};

// theta_i = i * step_units * pi/360 over [0, pi]; 360 must be divisible by
// step_units so the endpoint is hit exactly.
std::vector<double> make_theta_grid(int step_units);

ThetaScanResult scan_theta(int m, SequenceKind kind, const std::vector<double>& theta_grid,
                           const ScanOptions& opts);

// ---------------------------------------------------------------------------
// k(m) trend: k(m) = k1 * exp(-m k2) + k3, so k3 is the large-m robustness
// asymptote of a sequence kind.

struct KTrendPoint {
    int m = 0;
    double k = 0.0;
};

struct KTrend {
    bool ok = false;
    std::string error;
    std::vector<KTrendPoint> points;  // the points actually fitted
    std::vector<int> excluded_m;
    double k1 = 0.0;
    double k2 = 0.0;
    double k3 = 0.0;
    double sigma = 0.0;
    int q = 3;
    bool degenerate = false;  // near-constant data: k1 = 0, k3 = mean
};

// Damped Gauss-Newton with k2 multi-start {0.05, 0.1, 0.25, 0.5, 1, 2, 20};
// (k1, k3) are seeded per start by linear least squares on the basis
// {exp(-m k2), 1}. Requires >= 4 points after exclusion.
KTrend fit_k_trend(const std::vector<KTrendPoint>& points, const std::vector<int>& excluded_m = {});

// ---------------------------------------------------------------------------
// Full robustness pipeline for one sequence kind.

struct CaseSummary {
    int m = 0;
    double theta = 0.0;
    HillParams fit;
    double window = 0.0;
    bool narrowed = false;
    double epsilon = 0.0;  // analytic robust half-width at the Omega level
};

struct SequenceAnalysis {
    SequenceKind kind = SequenceKind::PM;
    std::vector<CaseSummary> best;   // per m, ascending
    std::vector<CaseSummary> worst;  // per m, ascending
    KTrend trend_best;
    KTrend trend_worst;
};

// m values dropped from the trend fit by default. The single-phase best-case
// k(4) sits far off the exponential through m >= 5 and is excluded there.
std::vector<int> default_exclusions(SequenceKind kind, bool best_case);

SequenceAnalysis analyze_sequence(int m_min, int m_max, SequenceKind kind,
                                  const std::vector<double>& theta_grid,
                                  const ScanOptions& opts);

// Cross-kind ranking of the fitted k at the largest m common to all analyses.
struct RankEntry {
    SequenceKind kind = SequenceKind::PM;
    double k = 0.0;
};

struct Comparison {
    int m = 0;
    std::vector<RankEntry> best_ranked;   // descending k at the best theta
    std::vector<RankEntry> worst_ranked;  // descending k at the worst theta
};

Comparison compare_sequences(const std::vector<SequenceAnalysis>& seqs);

}  // namespace qrws
