#include "qrws/dense_reference.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace qrws {

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m = zero(n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::zero(std::size_t n) {
    DenseMatrix m;
    m.dim = n;
    m.a.assign(n * n, Complex(0.0, 0.0));
    return m;
}

DenseMatrix matmul(const DenseMatrix& lhs, const DenseMatrix& rhs) {
    if (lhs.dim != rhs.dim) throw std::invalid_argument("matmul: dimension mismatch");
    DenseMatrix out = DenseMatrix::zero(lhs.dim);
    for (std::size_t i = 0; i < lhs.dim; ++i)
        for (std::size_t k = 0; k < lhs.dim; ++k) {
            const Complex v = lhs.at(i, k);
            if (v == Complex(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < lhs.dim; ++j) out.at(i, j) += v * rhs.at(k, j);
        }
    return out;
}

std::vector<Complex> matvec(const DenseMatrix& mat, const std::vector<Complex>& v) {
    if (mat.dim != v.size()) throw std::invalid_argument("matvec: dimension mismatch");
    std::vector<Complex> out(mat.dim, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < mat.dim; ++i)
        for (std::size_t j = 0; j < mat.dim; ++j) out[i] += mat.at(i, j) * v[j];
    return out;
}

DenseMatrix kron(const DenseMatrix& lhs, const DenseMatrix& rhs) {
    DenseMatrix out = DenseMatrix::zero(lhs.dim * rhs.dim);
    for (std::size_t i = 0; i < lhs.dim; ++i)
        for (std::size_t j = 0; j < lhs.dim; ++j) {
            const Complex v = lhs.at(i, j);
            if (v == Complex(0.0, 0.0)) continue;
            for (std::size_t r = 0; r < rhs.dim; ++r)
                for (std::size_t c = 0; c < rhs.dim; ++c)
                    out.at(i * rhs.dim + r, j * rhs.dim + c) = v * rhs.at(r, c);
        }
    return out;
}

DenseMatrix dft_matrix(std::size_t n) {
    DenseMatrix f = DenseMatrix::zero(n);
    const double norm = 1.0 / std::sqrt(double(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            f.at(a, b) = std::polar(norm, 2.0 * 3.14159265358979323846 * double(a * b) / double(n));
    return f;
}

DenseMatrix dense_coin_matrix(int m, const CoinPhases& ph) {
    const std::size_t n = std::size_t(1) << m;
    // Traversing coin on the direction register.
    DenseMatrix c0 = DenseMatrix::zero(m);
    const Complex ez = std::polar(1.0, ph.zeta);
    const Complex w = (1.0 - std::polar(1.0, ph.phi)) / double(m);
    for (int d = 0; d < m; ++d)
        for (int e = 0; e < m; ++e) c0.at(d, e) = ez * ((d == e ? 1.0 : 0.0) - w);
    // Block diagonal over the control qubit: C0 kron I_n on control 0, -I on control 1.
    DenseMatrix out = DenseMatrix::zero(2 * std::size_t(m) * n);
    DenseMatrix top = kron(c0, DenseMatrix::identity(n));
    const std::size_t half = std::size_t(m) * n;
    for (std::size_t i = 0; i < half; ++i)
        for (std::size_t j = 0; j < half; ++j) out.at(i, j) = top.at(i, j);
    for (std::size_t i = 0; i < half; ++i) out.at(half + i, half + i) = -1.0;
    return out;
}

DenseMatrix dense_oracle_matrix(int m, const std::vector<std::uint64_t>& marked) {
    const std::size_t n = std::size_t(1) << m;
    const std::size_t half = std::size_t(m) * n;
    DenseMatrix out = DenseMatrix::identity(2 * half);
    for (std::uint64_t x : marked) {
        if (x >= n) throw std::invalid_argument("dense oracle: marked node out of range");
        for (int d = 0; d < m; ++d) {
            const std::size_t i0 = std::size_t(d) * n + x;
            const std::size_t i1 = half + i0;
            out.at(i0, i0) = 0.0;
            out.at(i1, i1) = 0.0;
            out.at(i0, i1) = 1.0;
            out.at(i1, i0) = 1.0;
        }
    }
    return out;
}

DenseMatrix dense_shift_matrix(int m) {
    const std::size_t n = std::size_t(1) << m;
    const std::size_t half = std::size_t(m) * n;
    DenseMatrix out = DenseMatrix::zero(2 * half);
    for (std::size_t q = 0; q < 2; ++q)
        for (int d = 0; d < m; ++d)
            for (std::size_t x = 0; x < n; ++x) {
                const std::size_t row = q * half + std::size_t(d) * n + (x ^ (std::size_t(1) << d));
                const std::size_t col = q * half + std::size_t(d) * n + x;
                out.at(row, col) = 1.0;
            }
    return out;
}

std::vector<Complex> dense_initial_state(int m) {
    const std::size_t n = std::size_t(1) << m;
    DenseMatrix f = kron(dft_matrix(std::size_t(m)), dft_matrix(n));
    std::vector<Complex> zero_state(f.dim, Complex(0.0, 0.0));
    zero_state[0] = 1.0;
    std::vector<Complex> block = matvec(f, zero_state);
    std::vector<Complex> full(2 * block.size(), Complex(0.0, 0.0));
    for (std::size_t i = 0; i < block.size(); ++i) full[i] = block[i];
    return full;
}

std::vector<Complex> dense_reference_state(int m, const std::vector<CoinPhases>& schedule,
                                           const std::vector<std::uint64_t>& marked) {
    if (m > 6) throw std::invalid_argument("dense reference: m too large for dense matrices");
    const DenseMatrix oracle = dense_oracle_matrix(m, marked);
    const DenseMatrix shift = dense_shift_matrix(m);
    std::map<std::pair<double, double>, DenseMatrix> iteration_cache;
    std::vector<Complex> state = dense_initial_state(m);
    for (const CoinPhases& ph : schedule) {
        const std::pair<double, double> key{ph.phi, ph.zeta};
        auto it = iteration_cache.find(key);
        if (it == iteration_cache.end()) {
            DenseMatrix w = matmul(shift, matmul(oracle, matmul(dense_coin_matrix(m, ph), oracle)));
            it = iteration_cache.emplace(key, std::move(w)).first;
        }
        state = matvec(it->second, state);
    }
    return state;
}

double dense_reference_run(int m, const std::vector<CoinPhases>& schedule,
                           const std::vector<std::uint64_t>& marked) {
    if (marked.empty()) throw std::invalid_argument("dense reference: need a marked node");
    const std::vector<Complex> state = dense_reference_state(m, schedule, marked);
    const std::size_t n = std::size_t(1) << m;
    const std::size_t half = std::size_t(m) * n;
    double p = 0.0;
    for (std::size_t q = 0; q < 2; ++q)
        for (int d = 0; d < m; ++d) p += std::norm(state[q * half + std::size_t(d) * n + marked.front()]);
    return p;
}

}  // namespace qrws
