#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "qrws/dense_reference.hpp"
#include "qrws/schedule.hpp"
#include "qrws/walk.hpp"

using namespace qrws;

namespace {
const std::vector<std::uint64_t> kMarked0{0};
}

TEST_CASE("init_state is the uniform superposition on the control-0 block") {
    const WalkState st = init_state(2);
    REQUIRE(st.amp.size() == 16);
    const double expected = 1.0 / std::sqrt(8.0);
    for (int d = 0; d < 2; ++d)
        for (std::uint64_t x = 0; x < 4; ++x) {
            CHECK(st.at(0, d, x).real() == doctest::Approx(expected).epsilon(1e-15));
            CHECK(st.at(0, d, x).imag() == 0.0);
            CHECK(st.at(1, d, x) == Complex(0.0, 0.0));
        }
    CHECK(total_norm(st) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("init_state rejects m < 2") {
    CHECK_THROWS_AS(init_state(1), std::invalid_argument);
    CHECK_THROWS_AS(init_state(0), std::invalid_argument);
}

TEST_CASE("node_probability: uniform marginals and completeness") {
    const WalkState st = init_state(4);
    CHECK(node_probability(st, 0) == doctest::Approx(1.0 / 16).epsilon(1e-14));
    double sum = 0.0;
    for (std::uint64_t x = 0; x < 16; ++x) sum += node_probability(st, x);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("node_probability agrees with an explicit marginal sum") {
    WalkState st = init_state(3);
    apply_iteration(st, {1.3, 2.1}, kMarked0);  // make amplitudes generic
    const std::uint64_t x = 5;
    Complex dummy;
    double manual = 0.0;
    for (int q = 0; q < 2; ++q)
        for (int d = 0; d < 3; ++d) manual += std::norm(st.at(q, d, x));
    CHECK(node_probability(st, x) == doctest::Approx(manual).epsilon(1e-14));
    (void)dummy;
}

TEST_CASE("oracle swaps control blocks on marked nodes only") {
    WalkState st = init_state(3);
    st.at(1, 0, 0) = Complex(0.25, -0.5);  // make the q=1 block visible
    const Complex q0 = st.at(0, 0, 0), q1 = st.at(1, 0, 0), other = st.at(0, 1, 3);
    apply_oracle(st, kMarked0);
    CHECK(st.at(0, 0, 0) == q1);
    CHECK(st.at(1, 0, 0) == q0);
    CHECK(st.at(0, 1, 3) == other);
}

TEST_CASE("oracle with no marked nodes is the identity") {
    WalkState st = init_state(3);
    apply_iteration(st, {2.0, 0.7}, kMarked0);
    const WalkState before = st;
    apply_oracle(st, {});
    CHECK(st.amp == before.amp);
}

TEST_CASE("oracle and shift are involutions (bitwise)") {
    for (int m : {2, 3, 4}) {
        WalkState st = init_state(m);
        apply_iteration(st, {2.0, 1.0}, kMarked0);
        apply_iteration(st, {4.5, 5.5}, kMarked0);
        const WalkState before = st;
        const std::vector<std::uint64_t> marked{0, (std::uint64_t{1} << m) - 1};
        apply_oracle(st, marked);
        apply_oracle(st, marked);
        CHECK(st.amp == before.amp);
        apply_shift(st);
        apply_shift(st);
        CHECK(st.amp == before.amp);
    }
}

TEST_CASE("coin at (phi, zeta) = (0, 0) is the identity on the control-0 block") {
    WalkState st = init_state(4);
    const WalkState before = st;
    apply_coins(st, {0.0, 0.0});
    for (int d = 0; d < 4; ++d)
        for (std::uint64_t x = 0; x < 16; ++x)
            CHECK(std::abs(st.at(0, d, x) - before.at(0, d, x)) < 1e-15);
}

TEST_CASE("coin phases are 2pi-periodic with identical physical effect") {
    constexpr double two_pi = 2.0 * kPi;
    const std::vector<CoinPhases> sched_a(5, CoinPhases{2.2, 4.8});
    const std::vector<CoinPhases> sched_b(5, CoinPhases{2.2 + two_pi, 4.8 - two_pi});
    const double pa = run_walk(4, sched_a, kMarked0);
    const double pb = run_walk(4, sched_b, kMarked0);
    CHECK(std::fabs(pa - pb) < 1e-12);
}

TEST_CASE("iteration preserves the norm") {
    WalkState st = init_state(4);
    for (int j = 0; j < iteration_count(4); ++j) {
        apply_iteration(st, {0.3 + 0.7 * j, 5.9 - 0.9 * j}, kMarked0);
        CHECK(std::fabs(total_norm(st) - 1.0) < 1e-10);
    }
}

TEST_CASE("run_walk at (pi, pi) reaches the known peak") {
    const std::vector<CoinPhases> sched(iteration_count(4), CoinPhases{kPi, kPi});
    const double p = run_walk(4, sched, kMarked0);
    CHECK(std::fabs(p - 0.391) <= 0.05);
}

TEST_CASE("run_walk matches the dense reference on a full schedule") {
    for (int m : {2, 3}) {
        std::vector<CoinPhases> sched;
        for (int j = 0; j < iteration_count(m); ++j)
            sched.push_back({0.4 + 1.1 * j, 5.2 - 0.8 * j});
        const double p_fast = run_walk(m, sched, kMarked0);
        const double p_dense = dense_reference_run(m, sched, kMarked0);
        CHECK(std::fabs(p_fast - p_dense) < 1e-10);
    }
}

TEST_CASE("identity coin run matches the dense coinless evolution") {
    const std::vector<CoinPhases> sched(iteration_count(4), CoinPhases{0.0, 0.0});
    const double p_fast = run_walk(4, sched, kMarked0);
    const double p_dense = dense_reference_run(4, sched, kMarked0);
    CHECK(std::fabs(p_fast - p_dense) < 1e-10);
}

TEST_CASE("full iteration matches the dense composite matrix statewise") {
    const int m = 3;
    const std::vector<CoinPhases> sched{{kPi, kPi}, {2.7, 1.1}};
    WalkState st = init_state(m);
    for (const CoinPhases& ph : sched) apply_iteration(st, ph, kMarked0);
    const std::vector<Complex> dense = dense_reference_state(m, sched, kMarked0);
    REQUIRE(dense.size() == st.amp.size());
    for (std::size_t i = 0; i < dense.size(); ++i)
        CHECK(std::abs(st.amp[i] - dense[i]) < 1e-12);
}

TEST_CASE("walk rejects out-of-range marked nodes and empty marked list") {
    WalkState st = init_state(2);
    CHECK_THROWS_AS(apply_oracle(st, {4}), std::invalid_argument);
    CHECK_THROWS_AS(run_walk(2, {}, {}), std::invalid_argument);
}
