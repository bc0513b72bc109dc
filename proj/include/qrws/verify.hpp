#pragma once
#include <string>
#include <vector>

namespace qrws {

// One verification property: a named invariant checked against an
// independent prediction (dense matrices, closed forms, or symmetry).
struct PropertyResult {
    std::string name;
    bool pass = false;
    std::string detail;  // worst deviation and where it occurred
};

// Runs the full property suite at desk scale (m <= 5): operator norm
// preservation, oracle/shift involutions, dense-matrix equivalence over
// randomized schedules of every sequence kind, conjugation symmetry,
// omega = 0 cross-kind equivalence, Hill-fit self-consistency on noiseless
// data, and analytic-vs-sampled robustness epsilon agreement.
std::vector<PropertyResult> run_verification(unsigned workers = 0);

bool all_passed(const std::vector<PropertyResult>& results);

}  // namespace qrws
