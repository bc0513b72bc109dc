#pragma once
#include <string>
#include <vector>

#include "qrws/sweep.hpp"

namespace qrws {

// Modified Hill curve W(omega) = b * k^n / (|omega - c|^n + k^n):
// b = plateau height, k = half-width at half maximum (the robustness proxy),
// n = slope exponent, c = center.
struct HillParams {
    double b = 0.0;
    double k = 0.0;
    double n = 0.0;
    double c = 0.0;
    double sigma = 0.0;  // residual rms over N_p - q degrees of freedom
    int q = 4;           // free parameters (3 when the center is pinned)
    int n_points = 0;
};

// fit_hill either produces params or an explicit failure (never throws for
// numerical reasons; precondition violations still throw).
struct HillFit {
    bool ok = false;
    std::string error;
    HillParams params;
};

// Robust interval around the sampled (or analytic) peak.
struct RobustnessReport {
    double omega_max = 0.0;  // argmax of p
    double p_max = 0.0;
    double epsilon = 0.0;  // symmetric robust half-width
    double omega_threshold = 0.9;
};

double hill_eval(double omega, const HillParams& params);

// Residual rms sqrt(sum (W_j - p_j)^2 / (N_p - q)) of params against data.
double hill_sigma(const HillParams& params, const std::vector<double>& omega,
                  const std::vector<double>& prob);

// Damped Gauss-Newton least squares with a fixed multi-start grid
// (b0 = max p; k0 in {0.1, 0.5, 1, 2, 5} * span/4; n0 in {1, 2, 4, 8};
// c0 in {0, omega at max p}), optimizing log b, log k, log n to keep them
// positive; converges when the relative objective change drops below 1e-12
// or after 500 iterations; the best of all starts wins (ties toward the
// earlier start). fix_center pins c = 0 (q = 3). strict_nk discards
// candidate minima with n <= k before selection.
HillFit fit_hill(const CrossSection& cs, bool fix_center = false, bool strict_nk = false);

// Data mode: largest symmetric interval around the sampled peak where every
// sampled point stays >= Omega * p_max.
RobustnessReport robustness_epsilon(const CrossSection& cs, double omega_threshold);

// Analytic mode: epsilon = k * ((1 - Omega)/Omega)^(1/n) from the Hill shape.
RobustnessReport robustness_epsilon(const HillParams& params, double omega_threshold);

}  // namespace qrws
