#pragma once
#include <string>
#include <vector>

#include "qrws/walk.hpp"

namespace qrws {

inline constexpr double kPi = 3.14159265358979323846;

// Polar coordinates about (pi, pi) in the (phi, zeta) plane: a fixed theta is
// a linear dependence between the phases, omega the signed offset along it.
struct PolarPoint {
    double omega = 0.0;
    double theta = 0.0;  // in [0, pi]
};

enum class SequenceKind { PM, A1, A2, A3, H1, H2, H3 };

const char* kind_name(SequenceKind k);
SequenceKind kind_from_name(const std::string& name);  // throws on unknown name
std::vector<SequenceKind> all_kinds();

// Reference theta presets for the single-phase walk's high/low robustness
// lines and their mirrored-coin counterparts.
inline constexpr double kThetaBestRef = 233.0 * kPi / 360.0;
inline constexpr double kThetaWorstRef = 127.0 * kPi / 360.0;
inline constexpr double kThetaBestMirror = 53.0 * kPi / 360.0;
inline constexpr double kThetaWorstMirror = 307.0 * kPi / 360.0;

struct PhaseSchedule {
    SequenceKind kind = SequenceKind::PM;
    PolarPoint base;
    int k_iter = 0;
    std::vector<CoinPhases> phases;  // one entry per iteration, 1-based rule applied
};

// phi = pi + omega cos(theta), zeta = pi + omega sin(theta). Throws if omega
// lies outside [-omega_bound(theta), +omega_bound(theta)] (with slack 1e-12).
CoinPhases polar_to_phases(double omega, double theta);

// min(pi/|sin theta|, pi/|cos theta|); a vanishing trig factor contributes
// +infinity. Keeps phi, zeta within [0, 2pi] over the admissible omega range.
double omega_bound(double theta);

// ceil((pi/2) * sqrt(2^(m-1))) iterations for a single marked node.
int iteration_count(int m);

// (-1)^ceil(j/2) for 1-based j: -1, -1, +1, +1, -1, -1, ...
int sign_alternating(int j);

// (-1)^round(j/k_iter) for 1-based j, rounding half away from zero: the sign
// flips at the midpoint of the iteration sequence.
int sign_halves(int j, int k_iter);

// Applies the kind's per-iteration sign rule to raw base phases: PM repeats
// the pair; A-kinds multiply zeta (A1), phi (A2) or both (A3) by
// sign_alternating(j); H-kinds do the same with sign_halves(j, k_iter).
// Negative phases are kept as-is (the coin is 2pi-periodic in both).
std::vector<CoinPhases> apply_sign_rule(SequenceKind kind, const CoinPhases& base, int k_iter);

// Builds the schedule for a polar point (validates the omega range first).
PhaseSchedule schedule_phases(SequenceKind kind, const PolarPoint& polar, int k_iter);

}  // namespace qrws
