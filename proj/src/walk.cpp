#include "qrws/walk.hpp"

#include <cmath>
#include <stdexcept>

namespace qrws {

WalkState init_state(int m) {
    if (m < 2) throw std::invalid_argument("walk: m must be >= 2");
    WalkState st;
    st.m = m;
    st.amp.assign(2 * (std::size_t(m) << m), Complex(0.0, 0.0));
    const double a = 1.0 / std::sqrt(double(st.block_size()));
    for (std::size_t i = 0; i < st.block_size(); ++i) st.amp[i] = a;
    return st;
}

void apply_oracle(WalkState& st, const std::vector<std::uint64_t>& marked) {
    const std::size_t n = st.node_count();
    for (std::uint64_t x : marked) {
        if (x >= n) throw std::invalid_argument("walk: marked node out of range");
        for (int d = 0; d < st.m; ++d) std::swap(st.at(0, d, x), st.at(1, d, x));
    }
}

void apply_coins(WalkState& st, const CoinPhases& ph) {
    const std::size_t n = st.node_count();
    const Complex ez = std::polar(1.0, ph.zeta);
    // (1 - e^{i phi}) <chi|a> / sqrt(m) folds into a per-node correction of
    // (1 - e^{i phi}) * (sum_d a_d) / m subtracted from every direction.
    const Complex w = (1.0 - std::polar(1.0, ph.phi)) / double(st.m);
    std::vector<Complex> colsum(n, Complex(0.0, 0.0));
    for (int d = 0; d < st.m; ++d) {
        const Complex* row = &st.at(0, d, 0);
        for (std::size_t x = 0; x < n; ++x) colsum[x] += row[x];
    }
    for (int d = 0; d < st.m; ++d) {
        Complex* row = &st.at(0, d, 0);
        for (std::size_t x = 0; x < n; ++x) row[x] = ez * (row[x] - w * colsum[x]);
    }
    Complex* mrk = &st.at(1, 0, 0);
    for (std::size_t i = 0; i < st.block_size(); ++i) mrk[i] = -mrk[i];
}

void apply_shift(WalkState& st) {
    const std::size_t n = st.node_count();
    for (int q = 0; q < 2; ++q)
        for (int d = 0; d < st.m; ++d) {
            Complex* row = &st.at(q, d, 0);
            const std::size_t bit = std::size_t(1) << d;
            for (std::size_t x = 0; x < n; ++x)
                if (!(x & bit)) std::swap(row[x], row[x | bit]);
        }
}

void apply_iteration(WalkState& st, const CoinPhases& ph,
                     const std::vector<std::uint64_t>& marked) {
    apply_oracle(st, marked);
    apply_coins(st, ph);
    apply_oracle(st, marked);
    apply_shift(st);
}

double node_probability(const WalkState& st, std::uint64_t x) {
    double p = 0.0;
    for (int q = 0; q < 2; ++q)
        for (int d = 0; d < st.m; ++d) p += std::norm(st.at(q, d, x));
    return p;
}

double total_norm(const WalkState& st) {
    double s = 0.0;
    for (const Complex& a : st.amp) s += std::norm(a);
    return s;
}

double run_walk(int m, const std::vector<CoinPhases>& schedule,
                const std::vector<std::uint64_t>& marked) {
    if (marked.empty()) throw std::invalid_argument("walk: need at least one marked node");
    WalkState st = init_state(m);
    for (const CoinPhases& ph : schedule) apply_iteration(st, ph, marked);
    return node_probability(st, marked.front());
}

}  // namespace qrws
