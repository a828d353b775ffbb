// SPDX-License-Identifier: Apache-2.0
//
// Test-only oracles, independent of the library code paths they check.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "rissnr/rng.hpp"

namespace oracles {

/// Untransformed route to the cross-moment term: pi/4 * (1-x)^2 *
/// 2F1(3/2,3/2;1;x) summed directly. Converges usefully for x <= 0.9.
inline double cross_moment_direct_series(double x) {
    if (x < 0.0 || x > 0.9)
        throw std::domain_error("direct series only usable on [0, 0.9]");
    double term = 1.0;
    double sum = 1.0;
    for (int k = 0; k < 2000000; ++k) {
        const double kd = static_cast<double>(k);
        const double ratio = (kd + 1.5) * (kd + 1.5) / ((kd + 1.0) * (kd + 1.0));
        term *= x * ratio;
        sum += term;
        if (term < 1e-17 * sum)
            break;
    }
    const double one_minus = 1.0 - x;
    return 0.25 * rissnr::pi * one_minus * one_minus * sum;
}

struct MonteCarloEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

/// Monte Carlo estimate of E{|h_i||h_j|} for jointly Gaussian unit-power
/// h_i, h_j with correlation rho: h_i = z1, h_j = rho z1 + sqrt(1-rho^2) z2.
inline MonteCarloEstimate bivariate_magnitude_moment(double rho, std::uint64_t n,
                                                     std::uint64_t seed) {
    const double ortho = std::sqrt(std::max(0.0, 1.0 - rho * rho));
    double sum = 0.0, sum_sq = 0.0;
    rissnr::CounterRng rng(seed, 0);
    for (std::uint64_t i = 0; i < n; ++i) {
        const std::complex<double> z1 = rng.next_cgauss();
        const std::complex<double> z2 = rng.next_cgauss();
        const double v = std::abs(z1) * std::abs(rho * z1 + ortho * z2);
        sum += v;
        sum_sq += v * v;
    }
    const double nd = static_cast<double>(n);
    const double mean = sum / nd;
    const double var = (sum_sq - nd * mean * mean) / (nd - 1.0);
    return {mean, std::sqrt(var / nd)};
}

/// Adaptive Simpson quadrature.
inline double adaptive_simpson(const std::function<double(double)>& f, double a,
                               double b, double tol = 1e-12, int depth = 40) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    std::function<double(double, double, double, double, double, double, int)> go =
        [&](double lo, double hi, double flo, double fmid, double fhi, double eps,
            int d) -> double {
        const double mid = 0.5 * (lo + hi);
        const double lmid = 0.5 * (lo + mid), rmid = 0.5 * (mid + hi);
        const double flm = f(lmid), frm = f(rmid);
        const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
        const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
        if (d <= 0 || std::fabs(left + right - whole) < 15.0 * eps)
            return left + right + (left + right - whole) / 15.0;
        return go(lo, mid, flo, flm, fmid, 0.5 * eps, d - 1) +
               go(mid, hi, fmid, frm, fhi, 0.5 * eps, d - 1);
    };
    return go(a, b, fa, fm, fb, tol, depth);
}

/// Quadrature oracle for the regularized lower incomplete gamma. The
/// tolerance is scaled by Gamma(shape) so the regularized result carries
/// ~1e-13 error regardless of the integrand's magnitude.
inline double reg_lower_gamma_quadrature(double shape, double x) {
    const auto integrand = [shape](double t) {
        return t <= 0.0 ? 0.0 : std::exp((shape - 1.0) * std::log(t) - t);
    };
    const double norm = std::tgamma(shape);
    return adaptive_simpson(integrand, 0.0, x, 1e-13 * norm, 44) / norm;
}

/// Bootstrap standard error of the unbiased sample variance.
inline double bootstrap_variance_se(const std::vector<double>& samples,
                                    int n_resamples, std::uint64_t seed) {
    const std::uint64_t n = samples.size();
    std::vector<double> variances;
    variances.reserve(n_resamples);
    for (int b = 0; b < n_resamples; ++b) {
        rissnr::CounterRng rng(seed, static_cast<std::uint64_t>(b) + 1);
        double sum = 0.0, sum_sq = 0.0;
        for (std::uint64_t i = 0; i < n; ++i) {
            const auto idx = static_cast<std::uint64_t>(rng.next_uniform() *
                                                        static_cast<double>(n));
            const double v = samples[std::min(idx, n - 1)];
            sum += v;
            sum_sq += v * v;
        }
        const double nd = static_cast<double>(n);
        const double mean = sum / nd;
        variances.push_back((sum_sq - nd * mean * mean) / (nd - 1.0));
    }
    double mean = 0.0;
    for (const double v : variances)
        mean += v;
    mean /= variances.size();
    double var = 0.0;
    for (const double v : variances)
        var += (v - mean) * (v - mean);
    var /= (variances.size() - 1);
    return std::sqrt(var);
}

} // namespace oracles
