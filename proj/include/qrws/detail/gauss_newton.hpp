#pragma once
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace qrws::detail {

// Shared damped Gauss-Newton (Levenberg-style multiplicative damping of the
// normal-equation diagonal) used by both curve fitters. The model callback
// fills residuals r (size N) and the row-major Jacobian J (N x q) for the
// given parameter vector; it returns false if the parameters are unusable
// (NaN model), which rejects the trial step.
using GnModel =
    std::function<bool(const std::vector<double>&, std::vector<double>&, std::vector<double>&)>;

struct GnResult {
    bool ok = false;
    std::vector<double> params;
    double sse = 0.0;
    int iterations = 0;
};

// Solves A x = rhs for small dense symmetric-ish A (q <= 4) by Gaussian
// elimination with partial pivoting. Returns false on a vanishing pivot.
inline bool solve_small(std::vector<double> a, std::vector<double> rhs, std::size_t q,
                        std::vector<double>& x) {
    for (std::size_t col = 0; col < q; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < q; ++r)
            if (std::fabs(a[r * q + col]) > std::fabs(a[piv * q + col])) piv = r;
        if (std::fabs(a[piv * q + col]) < 1e-300) return false;
        if (piv != col) {
            for (std::size_t c = 0; c < q; ++c) std::swap(a[col * q + c], a[piv * q + c]);
            std::swap(rhs[col], rhs[piv]);
        }
        for (std::size_t r = col + 1; r < q; ++r) {
            const double f = a[r * q + col] / a[col * q + col];
            for (std::size_t c = col; c < q; ++c) a[r * q + c] -= f * a[col * q + c];
            rhs[r] -= f * rhs[col];
        }
    }
    x.assign(q, 0.0);
    for (std::size_t r = q; r-- > 0;) {
        double s = rhs[r];
        for (std::size_t c = r + 1; c < q; ++c) s -= a[r * q + c] * x[c];
        x[r] = s / (a[r * q + r] + (a[r * q + r] == 0.0 ? 1e-300 : 0.0));
    }
    return true;
}

inline double sum_squares(const std::vector<double>& r) {
    double s = 0.0;
    for (double v : r) s += v * v;
    return s;
}

inline GnResult gauss_newton(const GnModel& model, std::vector<double> p, std::size_t n_data,
                             int max_iter = 500, double rel_tol = 1e-12) {
    GnResult res;
    const std::size_t q = p.size();
    std::vector<double> r(n_data), jac(n_data * q);
    if (!model(p, r, jac)) return res;
    double sse = sum_squares(r);
    if (!std::isfinite(sse)) return res;

    double lambda = 1e-3;
    std::vector<double> jtj(q * q), jtr(q), delta, p_try, r_try(n_data), j_try(n_data * q);
    for (int iter = 0; iter < max_iter; ++iter) {
        res.iterations = iter + 1;
        for (std::size_t a = 0; a < q; ++a) {
            jtr[a] = 0.0;
            for (std::size_t b = 0; b < q; ++b) jtj[a * q + b] = 0.0;
        }
        for (std::size_t i = 0; i < n_data; ++i)
            for (std::size_t a = 0; a < q; ++a) {
                const double ja = jac[i * q + a];
                jtr[a] += ja * r[i];
                for (std::size_t b = a; b < q; ++b) jtj[a * q + b] += ja * jac[i * q + b];
            }
        for (std::size_t a = 0; a < q; ++a)
            for (std::size_t b = 0; b < a; ++b) jtj[a * q + b] = jtj[b * q + a];

        bool accepted = false;
        for (int damp = 0; damp < 60 && !accepted; ++damp) {
            std::vector<double> a_damped = jtj;
            for (std::size_t d = 0; d < q; ++d) {
                const double diag = jtj[d * q + d];
                a_damped[d * q + d] = diag + lambda * (diag > 1e-30 ? diag : 1e-30);
            }
            std::vector<double> neg_jtr(q);
            for (std::size_t d = 0; d < q; ++d) neg_jtr[d] = -jtr[d];
            if (!solve_small(a_damped, neg_jtr, q, delta)) {
                lambda *= 10.0;
                if (lambda > 1e14) break;
                continue;
            }
            p_try = p;
            for (std::size_t d = 0; d < q; ++d) p_try[d] += delta[d];
            if (model(p_try, r_try, j_try)) {
                const double sse_try = sum_squares(r_try);
                if (std::isfinite(sse_try) && sse_try <= sse) {
                    const double rel = (sse - sse_try) / (sse > 1e-300 ? sse : 1e-300);
                    p = p_try;
                    r.swap(r_try);
                    jac.swap(j_try);
                    sse = sse_try;
                    lambda = lambda * 0.3 > 1e-12 ? lambda * 0.3 : 1e-12;
                    accepted = true;
                    if (rel < rel_tol) {
                        res.ok = true;
                        res.params = p;
                        res.sse = sse;
                        return res;
                    }
                    break;
                }
            }
            lambda *= 10.0;
            if (lambda > 1e14) break;
        }
        if (!accepted) break;  // stuck: report the best point reached
    }
    res.ok = true;
    res.params = p;
    res.sse = sse;
    return res;
}

}  // namespace qrws::detail
