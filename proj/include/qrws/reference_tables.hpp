#pragma once
#include <vector>

#include "qrws/schedule.hpp"

namespace qrws {

// Published reference values for the robustness study. The `tables` command
// and the acceptance suite compare freshly computed fits against these rows
// and report the deviations.

// Hill fit of the probability cross-section P(omega) for the single-phase
// walk at theta = theta_units * pi/360.
struct HillRef {
    int m = 0;
    int theta_units = 0;
    double b = 0.0;
    double k = 0.0;
    double n = 0.0;
    double sigma = 0.0;
};

// Reference k(m) = k1 exp(-m k2) + k3 trend for one sequence kind and case.
struct TrendRef {
    SequenceKind kind = SequenceKind::PM;
    bool best_case = true;
    double k1 = 0.0;
    double k2 = 0.0;
    double k3 = 0.0;
    double sigma = 0.0;
    int m_min = 4;
    int m_max = 9;
    std::vector<int> excluded_m;  // m values left out of the reference fit
};

const std::vector<HillRef>& hill_fit_references();           // 6 rows, m in {4, 6, 8}
const std::vector<TrendRef>& trend_references_single();      // PM best/worst
const std::vector<TrendRef>& trend_references_alternating(); // A1..A3 best/worst
const std::vector<TrendRef>& trend_references_halves();      // H1..H3 best/worst
std::vector<TrendRef> all_trend_references();

}  // namespace qrws
