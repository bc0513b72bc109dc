#pragma once
#include <cstdint>
#include <vector>

#include "qrws/walk.hpp"

namespace qrws {

// Independent dense-matrix implementation of the same walk, used only to
// cross-check the production kernel at small m (dimension 2*m*2^m, so m <= 4
// keeps matrices at 256x256 or below). Everything here is built from explicit
// operator matrices and generic matrix products; nothing is shared with the
// in-place kernel in walk.cpp.
struct DenseMatrix {
    std::size_t dim = 0;
    std::vector<Complex> a;  // row-major dim x dim

    static DenseMatrix identity(std::size_t n);
    static DenseMatrix zero(std::size_t n);
    Complex& at(std::size_t r, std::size_t c) { return a[r * dim + c]; }
    const Complex& at(std::size_t r, std::size_t c) const { return a[r * dim + c]; }
};

DenseMatrix matmul(const DenseMatrix& lhs, const DenseMatrix& rhs);
std::vector<Complex> matvec(const DenseMatrix& mat, const std::vector<Complex>& v);
DenseMatrix kron(const DenseMatrix& lhs, const DenseMatrix& rhs);

// Unitary DFT matrix of size n: F[a][b] = exp(2*pi*i*a*b/n)/sqrt(n).
DenseMatrix dft_matrix(std::size_t n);

// Explicit operator matrices in the flat q*(m*2^m) + d*2^m + x basis.
DenseMatrix dense_coin_matrix(int m, const CoinPhases& ph);
DenseMatrix dense_oracle_matrix(int m, const std::vector<std::uint64_t>& marked);
DenseMatrix dense_shift_matrix(int m);

// Initial state built the long way: (F_m kron F_{2^m}) |0> on the control-0
// block, validating the uniform-state shortcut of init_state.
std::vector<Complex> dense_initial_state(int m);

// Full run via matrix products; returns the probability of the first marked
// node. The composed iteration matrix is cached per distinct phase pair.
double dense_reference_run(int m, const std::vector<CoinPhases>& schedule,
                           const std::vector<std::uint64_t>& marked);

// Amplitudes after running the given schedule (same layout as WalkState.amp).
std::vector<Complex> dense_reference_state(int m, const std::vector<CoinPhases>& schedule,
                                           const std::vector<std::uint64_t>& marked);

}  // namespace qrws
