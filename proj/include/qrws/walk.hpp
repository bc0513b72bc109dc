#pragma once
#include <complex>
#include <cstdint>
#include <vector>

namespace qrws {

using Complex = std::complex<double>;

// One coin phase pair (phi: Householder phase, zeta: global phase multiplier).
struct CoinPhases {
    double phi = 0.0;
    double zeta = 0.0;
};

// Full register state of the search walk on the m-dimensional hypercube:
// control qubit (2) x coin direction (m) x node (2^m), flat index
// q*(m*2^m) + d*2^m + x.
struct WalkState {
    int m = 0;
    std::vector<Complex> amp;

    std::size_t node_count() const { return std::size_t(1) << m; }
    std::size_t block_size() const { return std::size_t(m) << m; }
    Complex& at(int q, int d, std::size_t x) {
        return amp[std::size_t(q) * block_size() + std::size_t(d) * node_count() + x];
    }
    const Complex& at(int q, int d, std::size_t x) const {
        return amp[std::size_t(q) * block_size() + std::size_t(d) * node_count() + x];
    }
};

// Uniform superposition over the control-0 block (DFT of |0>), zero elsewhere.
WalkState init_state(int m);

// Control-qubit flip on marked nodes: swaps the q=0 and q=1 amplitudes of
// every (d, x) with x marked. Involution.
void apply_oracle(WalkState& st, const std::vector<std::uint64_t>& marked);

// Coin layer: the traversing coin e^{i zeta}(I - (1 - e^{i phi})|chi><chi|)
// on the control-0 block and the marking coin -I on the control-1 block.
void apply_coins(WalkState& st, const CoinPhases& ph);

// Flip-free shift along the coin direction: (q, d, x) <-> (q, d, x ^ 2^d).
// Involution.
void apply_shift(WalkState& st);

// One search iteration W = S * O * C1*C0 * O applied in place.
void apply_iteration(WalkState& st, const CoinPhases& ph,
                     const std::vector<std::uint64_t>& marked);

// Probability of measuring the node register in `x` (summed over control and
// coin registers).
double node_probability(const WalkState& st, std::uint64_t x);

// Sum of |amp|^2 over the whole register.
double total_norm(const WalkState& st);

// Runs the full walk: init_state, then one apply_iteration per schedule entry;
// returns the probability of the first marked node.
double run_walk(int m, const std::vector<CoinPhases>& schedule,
                const std::vector<std::uint64_t>& marked);

}  // namespace qrws
