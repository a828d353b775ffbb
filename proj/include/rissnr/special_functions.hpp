// SPDX-License-Identifier: Apache-2.0
//
// Scalar special functions used by the closed-form SNR expressions.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include "rissnr/common.hpp"

namespace rissnr {

/// Cross moment E{|h_i||h_j|} of two correlated unit-power complex Gaussian
/// magnitudes, as a function of x = |rho_ij|^2:
///
///   pi/4 * (1-x)^2 * 2F1(3/2,3/2;1;x)
///
/// evaluated through the linearly transformed series
///
///   pi/4 * 2F1(-1/2,-1/2;1;x),
///
/// whose terms are all nonnegative and which converges absolutely on [0,1]
/// (the untransformed 2F1 diverges as x -> 1 while the product stays finite).
/// Absolute error <= 1e-12.
inline double cross_moment_term(double rho_abs_sq) {
    double x = rho_abs_sq;
    // Correlation matrices built from rho = 1 can round slightly outside.
    if (x > 1.0 && x <= 1.0 + 1e-12)
        x = 1.0;
    if (x < 0.0 && x >= -1e-12)
        x = 0.0;
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error("cross_moment_term: rho_abs_sq outside [0,1]: " +
                                std::to_string(rho_abs_sq));

    constexpr double quarter_pi = pi / 4.0;
    if (x == 0.0)
        return quarter_pi;
    if (x == 1.0)
        return 1.0; // 2F1(-1/2,-1/2;1;1) = 4/pi

    // term_{k+1} = term_k * x * ((k - 1/2)/(k + 1))^2. Term ratios are < x
    // and term*k^3 decreases, so after the k-th term the remaining tail is
    // bounded by term * min(x/(1-x), k/2 + 3/2). Stop once that bound (or
    // the relative term size) is negligible; the tail is O(k^-3) near x = 1.
    const double geometric_bound = x / (1.0 - x);
    double term = 1.0;
    KahanSum sum;
    sum.add(1.0);
    constexpr std::uint64_t max_terms = 1000000;
    for (std::uint64_t k = 0; k < max_terms; ++k) {
        const double kd = static_cast<double>(k);
        const double ratio = (kd - 0.5) / (kd + 1.0);
        term *= x * ratio * ratio;
        sum.add(term);
        const double tail_bound =
            term * std::min(geometric_bound, 0.5 * kd + 1.5);
        if (tail_bound < 1e-13 || term < 1e-15 * sum.value())
            return quarter_pi * sum.value();
    }
    throw std::runtime_error("cross_moment_term: series did not converge at x = " +
                             std::to_string(x));
}

/// Gamma function for z > 0.
inline double gamma_fn(double z) {
    if (!(z > 0.0))
        throw std::domain_error("gamma_fn: requires z > 0, got " +
                                std::to_string(z));
    return std::tgamma(z);
}

namespace detail {

// Series expansion of P(a,x), effective for x < a + 1.
inline double gamma_p_series(double a, double x) {
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int n = 0; n < 100000; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16)
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw std::runtime_error("reg_lower_incomplete_gamma: series did not converge");
}

// Modified Lentz continued fraction for Q(a,x), effective for x >= a + 1.
inline double gamma_q_contfrac(double a, double x) {
    constexpr double eps = 1e-16;
    constexpr double fpmin = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / fpmin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 100000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < fpmin)
            d = fpmin;
        c = b + an / c;
        if (std::fabs(c) < fpmin)
            c = fpmin;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < eps)
            return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
    }
    throw std::runtime_error(
        "reg_lower_incomplete_gamma: continued fraction did not converge");
}

} // namespace detail

/// Regularized lower incomplete gamma P(shape, x), the CDF of a unit-scale
/// gamma variable. Series branch below shape+1, continued fraction above.
inline double reg_lower_incomplete_gamma(double shape, double x) {
    if (!(shape > 0.0))
        throw std::domain_error("reg_lower_incomplete_gamma: shape must be > 0");
    if (!(x >= 0.0))
        throw std::domain_error("reg_lower_incomplete_gamma: x must be >= 0");
    if (x == 0.0)
        return 0.0;
    if (x < shape + 1.0)
        return detail::gamma_p_series(shape, x);
    return 1.0 - detail::gamma_q_contfrac(shape, x);
}

} // namespace rissnr
