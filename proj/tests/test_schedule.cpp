#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "qrws/schedule.hpp"

using namespace qrws;

TEST_CASE("polar_to_phases maps (omega, theta) around (pi, pi)") {
    const CoinPhases center = polar_to_phases(0.0, 1.234);
    CHECK(center.phi == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(center.zeta == doctest::Approx(kPi).epsilon(1e-15));

    const CoinPhases p = polar_to_phases(1.0, kThetaBestRef);
    CHECK(p.phi == doctest::Approx(2.69539).epsilon(1e-5));
    CHECK(p.zeta == doctest::Approx(4.03649).epsilon(1e-5));
}

TEST_CASE("polar_to_phases validates theta and the omega range") {
    CHECK_THROWS_AS(polar_to_phases(0.0, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(polar_to_phases(0.0, kPi + 0.1), std::invalid_argument);
    const double bound = omega_bound(kThetaBestRef);
    CHECK_NOTHROW(polar_to_phases(bound, kThetaBestRef));
    CHECK_NOTHROW(polar_to_phases(-bound, kThetaBestRef));
    CHECK_THROWS_AS(polar_to_phases(bound + 1e-6, kThetaBestRef), std::invalid_argument);
}

TEST_CASE("omega_bound keeps both phases inside [0, 2pi]") {
    CHECK(omega_bound(0.0) == doctest::Approx(kPi));           // cos term limits
    CHECK(omega_bound(kPi / 2) == doctest::Approx(kPi));       // sin term limits
    CHECK(omega_bound(kPi / 4) == doctest::Approx(kPi * std::sqrt(2.0)));
    // The two reference lines share a bound: their sines are supplementary.
    CHECK(omega_bound(kThetaBestRef) == doctest::Approx(omega_bound(kThetaWorstRef)));
    CHECK(omega_bound(kThetaBestRef) == doctest::Approx(3.51041684).epsilon(1e-8));

    for (double theta : {0.01, 0.8, 1.5707, 2.9}) {
        const double b = omega_bound(theta);
        for (double omega : {-b, b}) {
            const CoinPhases p = polar_to_phases(omega, theta);
            CHECK(p.phi >= -1e-12);
            CHECK(p.phi <= 2 * kPi + 1e-12);
            CHECK(p.zeta >= -1e-12);
            CHECK(p.zeta <= 2 * kPi + 1e-12);
        }
    }
}

TEST_CASE("iteration_count follows ceil((pi/2) sqrt(2^(m-1)))") {
    CHECK(iteration_count(4) == 5);
    CHECK(iteration_count(6) == 9);
    CHECK(iteration_count(8) == 18);
    CHECK(iteration_count(9) == 26);
}

TEST_CASE("sign_alternating flips every two iterations, 1-based") {
    const int expected[] = {-1, -1, +1, +1, -1, -1, +1, +1};
    for (int j = 1; j <= 8; ++j) CHECK(sign_alternating(j) == expected[j - 1]);
}

TEST_CASE("sign_halves flips at the schedule midpoint") {
    // Leading + block spans ceil(k/2) steps: even counts split evenly, odd counts
    // carry the extra step before the flip.
    const int expected5[] = {+1, +1, +1, -1, -1};
    for (int j = 1; j <= 5; ++j) CHECK(sign_halves(j, 5) == expected5[j - 1]);
    const int expected4[] = {+1, +1, -1, -1};
    for (int j = 1; j <= 4; ++j) CHECK(sign_halves(j, 4) == expected4[j - 1]);
    const int expected6[] = {+1, +1, +1, -1, -1, -1};
    for (int j = 1; j <= 6; ++j) CHECK(sign_halves(j, 6) == expected6[j - 1]);
}

TEST_CASE("apply_sign_rule: PM repeats the base pair verbatim") {
    const CoinPhases base{2.5, 3.5};
    const auto phases = apply_sign_rule(SequenceKind::PM, base, 6);
    REQUIRE(phases.size() == 6);
    for (const CoinPhases& ph : phases) {
        CHECK(ph.phi == base.phi);
        CHECK(ph.zeta == base.zeta);
    }
}

TEST_CASE("apply_sign_rule: A-kinds alternate the right phase") {
    const CoinPhases base{2.5, 3.5};
    const auto a1 = apply_sign_rule(SequenceKind::A1, base, 4);
    const auto a2 = apply_sign_rule(SequenceKind::A2, base, 4);
    const auto a3 = apply_sign_rule(SequenceKind::A3, base, 4);
    for (int j = 0; j < 4; ++j) {
        const double s = sign_alternating(j + 1);
        CHECK(a1[j].phi == base.phi);          // A1 flips zeta only
        CHECK(a1[j].zeta == s * base.zeta);
        CHECK(a2[j].phi == s * base.phi);      // A2 flips phi only
        CHECK(a2[j].zeta == base.zeta);
        CHECK(a3[j].phi == s * base.phi);      // A3 flips both
        CHECK(a3[j].zeta == s * base.zeta);
    }
}

TEST_CASE("apply_sign_rule: H-kinds flip at the halfway iteration") {
    const CoinPhases base{2.5, 3.5};
    const int k_iter = 5;
    const auto h1 = apply_sign_rule(SequenceKind::H1, base, k_iter);
    const auto h2 = apply_sign_rule(SequenceKind::H2, base, k_iter);
    const auto h3 = apply_sign_rule(SequenceKind::H3, base, k_iter);
    for (int j = 0; j < k_iter; ++j) {
        const double s = sign_halves(j + 1, k_iter);
        CHECK(h1[j].phi == base.phi);
        CHECK(h1[j].zeta == s * base.zeta);
        CHECK(h2[j].phi == s * base.phi);
        CHECK(h2[j].zeta == base.zeta);
        CHECK(h3[j].phi == s * base.phi);
        CHECK(h3[j].zeta == s * base.zeta);
    }
}

TEST_CASE("schedule_phases validates the omega range and fills metadata") {
    const PolarPoint pt{1.0, kThetaBestRef};
    const PhaseSchedule sched = schedule_phases(SequenceKind::A3, pt, 5);
    CHECK(sched.kind == SequenceKind::A3);
    CHECK(sched.k_iter == 5);
    REQUIRE(sched.phases.size() == 5);
    CHECK_THROWS_AS(schedule_phases(SequenceKind::PM, {100.0, kThetaBestRef}, 5),
                    std::invalid_argument);
}

TEST_CASE("kind names round-trip and reject unknowns") {
    for (SequenceKind k : all_kinds()) CHECK(kind_from_name(kind_name(k)) == k);
    CHECK(all_kinds().size() == 7);
    CHECK_THROWS_AS(kind_from_name("B2"), std::invalid_argument);
    CHECK_THROWS_AS(kind_from_name(""), std::invalid_argument);
}
