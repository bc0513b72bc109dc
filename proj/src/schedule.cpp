#include "qrws/schedule.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qrws {

const char* kind_name(SequenceKind k) {
    switch (k) {
        case SequenceKind::PM: return "PM";
        case SequenceKind::A1: return "A1";
        case SequenceKind::A2: return "A2";
        case SequenceKind::A3: return "A3";
        case SequenceKind::H1: return "H1";
        case SequenceKind::H2: return "H2";
        case SequenceKind::H3: return "H3";
    }
    return "?";
}

SequenceKind kind_from_name(const std::string& name) {
    for (SequenceKind k : all_kinds())
        if (name == kind_name(k)) return k;
    throw std::invalid_argument("unknown sequence kind: " + name);
}

std::vector<SequenceKind> all_kinds() {
    return {SequenceKind::PM, SequenceKind::A1, SequenceKind::A2, SequenceKind::A3,
            SequenceKind::H1, SequenceKind::H2, SequenceKind::H3};
}

double omega_bound(double theta) {
    const double s = std::fabs(std::sin(theta));
    const double c = std::fabs(std::cos(theta));
    const double inf = std::numeric_limits<double>::infinity();
    const double a = s > 0.0 ? kPi / s : inf;
    const double b = c > 0.0 ? kPi / c : inf;
    return a < b ? a : b;
}

CoinPhases polar_to_phases(double omega, double theta) {
    if (theta < 0.0 || theta > kPi)
        throw std::invalid_argument("polar_to_phases: theta outside [0, pi]");
    if (std::fabs(omega) > omega_bound(theta) + 1e-12)
        throw std::invalid_argument("polar_to_phases: omega beyond omega_bound(theta)");
    return {kPi + omega * std::cos(theta), kPi + omega * std::sin(theta)};
}

int iteration_count(int m) {
    if (m < 2) throw std::invalid_argument("iteration_count: m must be >= 2");
    return int(std::ceil(kPi / 2.0 * std::sqrt(std::pow(2.0, m - 1))));
}

int sign_alternating(int j) {
    if (j < 1) throw std::invalid_argument("sign_alternating: j is 1-based");
    return ((j + 1) / 2) % 2 == 0 ? 1 : -1;  // (-1)^ceil(j/2)
}

int sign_halves(int j, int k_iter) {
    if (j < 1 || j > k_iter) throw std::invalid_argument("sign_halves: j outside [1, k_iter]");
    // First half of the schedule keeps the base sign, second half flips it.  The
    // leading (+) block holds ceil(k/2) steps, so even counts split evenly and odd
    // counts put the extra step before the flip.
    return 2 * j <= k_iter + 1 ? 1 : -1;
}

std::vector<CoinPhases> apply_sign_rule(SequenceKind kind, const CoinPhases& base, int k_iter) {
    if (k_iter < 1) throw std::invalid_argument("apply_sign_rule: k_iter must be >= 1");
    const bool flips_phi = kind == SequenceKind::A2 || kind == SequenceKind::A3 ||
                           kind == SequenceKind::H2 || kind == SequenceKind::H3;
    const bool flips_zeta = kind == SequenceKind::A1 || kind == SequenceKind::A3 ||
                            kind == SequenceKind::H1 || kind == SequenceKind::H3;
    const bool alternating = kind == SequenceKind::A1 || kind == SequenceKind::A2 ||
                             kind == SequenceKind::A3;
    std::vector<CoinPhases> phases;
    phases.reserve(k_iter);
    for (int j = 1; j <= k_iter; ++j) {
        double s = 1.0;
        if (kind != SequenceKind::PM)
            s = alternating ? sign_alternating(j) : sign_halves(j, k_iter);
        CoinPhases ph = base;
        if (flips_phi) ph.phi *= s;
        if (flips_zeta) ph.zeta *= s;
        phases.push_back(ph);
    }
    return phases;
}

PhaseSchedule schedule_phases(SequenceKind kind, const PolarPoint& polar, int k_iter) {
    PhaseSchedule sched;
    sched.kind = kind;
    sched.base = polar;
    sched.k_iter = k_iter;
    sched.phases = apply_sign_rule(kind, polar_to_phases(polar.omega, polar.theta), k_iter);
    return sched;
}

}  // namespace qrws
