// SPDX-License-Identifier: Apache-2.0
//
// Closed-form mean, variance, bounds and asymptotics of the optimal-phase
// uplink SNR over correlated Rayleigh fading.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cmath>
#include <unordered_map>

#include "rissnr/channel.hpp"
#include "rissnr/linalg.hpp"
#include "rissnr/special_functions.hpp"

namespace rissnr {

/// Scalars the moment expressions are built from:
///   beam_norm        ||R_d^{1/2} a_b||              (A)
///   beam_cross       M*beam_norm + a_b^H R_d^2 a_b / (2*beam_norm)   (B)
///   pair_sum         RIS cross-moment double sum     (F)
///   y3, y4           third/fourth moments of Y = sum |h_ru_tilde|,
///                    exact when R_ru = I, gamma-matched otherwise
///   y_shape, y_scale gamma fit to Y (method of moments)
///   trace_rd_sq      tr(R_d^2)
struct MomentIngredients {
    double beam_norm = 0.0;
    double beam_cross = 0.0;
    double pair_sum = 0.0;
    double y3 = 0.0;
    double y4 = 0.0;
    double y_shape = 0.0;
    double y_scale = 0.0;
    double trace_rd_sq = 0.0;
    bool y_moments_exact = false;
};

/// Analytic first two moments of the SNR. variance_exact distinguishes the
/// exact uncorrelated-RIS path from the gamma-approximated one.
struct SnrStatistics {
    double mean = 0.0;
    double variance = 0.0;
    bool variance_exact = false;
};

struct MeanSnrBounds {
    double lower = 0.0;
    double upper = 0.0;
};

/// Pair sum for uncorrelated RIS elements: N(N-1) * pi/4.
inline double pair_moment_sum_uncorrelated(int n) {
    const double nd = static_cast<double>(n);
    return nd * (nd - 1.0) * pi / 4.0;
}

/// Double sum over distinct element pairs of cross_moment_term(|rho_ij|^2).
/// Symmetric, so twice the upper triangle; grid geometries produce few
/// distinct distances, so terms are cached per distinct |rho_ij|^2.
inline double ris_pair_moment_sum(const ComplexMatrix& r_ru) {
    detail::require(r_ru.rows() == r_ru.cols(), "ris_pair_moment_sum: matrix must be square");
    for (Eigen::Index i = 0; i < r_ru.rows(); ++i)
        detail::require(std::abs(r_ru(i, i) - Complex(1.0, 0.0)) <= 1e-9,
                        "ris_pair_moment_sum: diagonal must be 1");
    std::unordered_map<double, double> cache;
    KahanSum sum;
    for (Eigen::Index i = 0; i < r_ru.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < r_ru.cols(); ++j) {
            const double x = std::norm(r_ru(i, j));
            auto it = cache.find(x);
            if (it == cache.end())
                it = cache.emplace(x, cross_moment_term(x)).first;
            sum.add(2.0 * it->second);
        }
    }
    return sum.value();
}

/// Exact E{Y^3} for independent unit-power Rayleigh magnitudes.
inline double y3_uncorrelated(int n) {
    const double nd = static_cast<double>(n);
    return 0.5 * nd * std::sqrt(pi) *
           (pi / 4.0 * (nd - 1.0) * (nd - 2.0) + 3.0 * nd - 1.5);
}

/// Exact E{Y^4} for independent unit-power Rayleigh magnitudes.
inline double y4_uncorrelated(int n) {
    const double nd = static_cast<double>(n);
    const double pairs = 0.5 * nd * (nd - 1.0);
    return 2.0 * nd +
           pairs * ((nd - 2.0) * (nd - 3.0) * pi * pi / 8.0 + 6.0 +
                    3.0 * pi * (nd - 1.0));
}

struct YMomentFit {
    double y3 = 0.0;
    double y4 = 0.0;
    double shape = 0.0;
    double scale = 0.0;
};

/// Gamma-matched approximation to E{Y^3}, E{Y^4}. The fit reproduces
/// E{Y} = N sqrt(pi)/2 and E{Y^2} = N + pair_sum exactly; the higher
/// moments are the gamma raw moments of that fit.
inline YMomentFit y_moments_gamma_approx(int n, double pair_sum) {
    detail::require(n >= 1, "y_moments_gamma_approx: n must be >= 1");
    const double nd = static_cast<double>(n);
    const double slack = 1e-6 * std::max(1.0, nd * nd);
    detail::require_domain(pair_sum >= pair_moment_sum_uncorrelated(n) - slack &&
                               pair_sum <= nd * (nd - 1.0) + slack,
                           "y_moments_gamma_approx: pair_sum outside its bounds");
    const double mean_y = 0.5 * nd * std::sqrt(pi);
    const double second = nd + pair_sum;
    if (4.0 * second - nd * nd * pi <= 0.0)
        throw std::domain_error("y_moments_gamma_approx: nonpositive Y variance");
    const double var_y = second - mean_y * mean_y;

    YMomentFit fit;
    fit.shape = mean_y * mean_y / var_y;
    fit.scale = var_y / mean_y;
    fit.y3 = fit.scale * fit.scale * fit.scale * fit.shape * (fit.shape + 1.0) *
             (fit.shape + 2.0);
    fit.y4 = fit.y3 * fit.scale * (fit.shape + 3.0);
    return fit;
}

/// Assemble every scalar the moment formulas need from the correlation
/// matrices and the BS steering vector.
inline MomentIngredients compute_ingredients(const ComplexMatrix& r_d,
                                             const ComplexMatrix& r_ru,
                                             const ComplexVector& a_b) {
    const double m = static_cast<double>(a_b.size());
    MomentIngredients ing;
    ing.beam_norm = std::sqrt(std::real(quadratic_form(a_b, r_d)));
    const ComplexVector rd_ab = r_d * a_b;
    ing.beam_cross = m * ing.beam_norm + rd_ab.squaredNorm() / (2.0 * ing.beam_norm);
    ing.pair_sum = ris_pair_moment_sum(r_ru);
    ing.trace_rd_sq = r_d.squaredNorm();
    ing.y_moments_exact = is_identity(r_ru);

    const int n = static_cast<int>(r_ru.rows());
    const YMomentFit fit = y_moments_gamma_approx(n, ing.pair_sum);
    ing.y_shape = fit.shape;
    ing.y_scale = fit.scale;
    if (ing.y_moments_exact) {
        ing.y3 = y3_uncorrelated(n);
        ing.y4 = y4_uncorrelated(n);
    } else {
        ing.y3 = fit.y3;
        ing.y4 = fit.y4;
    }
    return ing;
}

/// Exact mean SNR:
///   (beta_d M + N A pi sqrt(beta_d beta_br beta_ru)/2
///      + beta_br beta_ru M (N + F)) * tau_bar.
inline double mean_snr(const LinkGains& g, const MomentIngredients& ing, int m, int n) {
    validate(g);
    const double md = static_cast<double>(m);
    const double nd = static_cast<double>(n);
    const double cascade = g.beta_br * g.beta_ru;
    return (g.beta_d * md +
            0.5 * nd * ing.beam_norm * pi * std::sqrt(g.beta_d * cascade) +
            cascade * md * (nd + ing.pair_sum)) *
           g.tau_bar;
}

inline double mean_snr(const LinkGains& g, const ComplexMatrix& r_d,
                       const ComplexMatrix& r_ru, const ComplexVector& a_b) {
    return mean_snr(g, compute_ingredients(r_d, r_ru, a_b),
                    static_cast<int>(a_b.size()), static_cast<int>(r_ru.rows()));
}

/// SNR variance from the five-term expansion of E{SNR^2} - E{SNR}^2.
/// Exact when the RIS-side Y moments are exact (R_ru = I), a gamma-based
/// approximation otherwise.
inline SnrStatistics var_snr(const LinkGains& g, const MomentIngredients& ing, int m,
                             int n) {
    validate(g);
    const double md = static_cast<double>(m);
    const double nd = static_cast<double>(n);
    const double cascade = g.beta_br * g.beta_ru;
    const double second = nd + ing.pair_sum;
    const double a = ing.beam_norm;

    const double t1 = g.beta_d * g.beta_d * ing.trace_rd_sq;
    const double t2 = std::pow(g.beta_d, 1.5) * std::sqrt(cascade) * nd * pi *
                      (ing.beam_cross - md * a);
    const double t3 = g.beta_d * cascade * a * a *
                      (4.0 * second - nd * nd * pi * pi / 4.0);
    const double t4 = md * a * std::sqrt(g.beta_d) * std::pow(cascade, 1.5) *
                      (2.0 * std::sqrt(pi) * ing.y3 - nd * second * pi);
    const double t5 = (md * cascade) * (md * cascade) *
                      (ing.y4 - second * second);

    SnrStatistics out;
    out.mean = mean_snr(g, ing, m, n);
    out.variance = (t1 + t2 + t3 + t4 + t5) * g.tau_bar * g.tau_bar;
    out.variance_exact = ing.y_moments_exact;
    return out;
}

inline SnrStatistics var_snr(const LinkGains& g, const ComplexMatrix& r_d,
                             const ComplexMatrix& r_ru, const ComplexVector& a_b) {
    return var_snr(g, compute_ingredients(r_d, r_ru, a_b),
                   static_cast<int>(a_b.size()), static_cast<int>(r_ru.rows()));
}

/// Mean SNR for fully uncorrelated Rayleigh channels (A = sqrt(M), F = F_u).
inline double mean_snr_uncorrelated(const LinkGains& g, int m, int n) {
    validate(g);
    const double md = static_cast<double>(m);
    const double nd = static_cast<double>(n);
    const double cascade = g.beta_br * g.beta_ru;
    return (g.beta_d * md +
            0.5 * std::sqrt(md) * nd * pi * std::sqrt(g.beta_d * cascade) +
            cascade * md * (nd + pair_moment_sum_uncorrelated(n))) *
           g.tau_bar;
}

/// Exact SNR variance for fully uncorrelated Rayleigh channels. The cross
/// term is N pi sqrt(M)/2 times beta_d^{3/2} sqrt(beta_br beta_ru), the
/// identity-correlation reduction of the general five-term expression.
inline double var_snr_uncorrelated(const LinkGains& g, int m, int n) {
    validate(g);
    const double md = static_cast<double>(m);
    const double nd = static_cast<double>(n);
    const double cascade = g.beta_br * g.beta_ru;
    const double fu = pair_moment_sum_uncorrelated(n);
    const double second = nd + fu;
    const double y3 = y3_uncorrelated(n);
    const double y4 = y4_uncorrelated(n);

    const double t1 = g.beta_d * g.beta_d * md;
    const double t2 = std::pow(g.beta_d, 1.5) * std::sqrt(cascade) * nd * pi *
                      (0.5 * std::sqrt(md));
    const double t3 =
        g.beta_d * cascade * md * (4.0 * second - nd * nd * pi * pi / 4.0);
    const double t4 = std::pow(md, 1.5) * std::sqrt(g.beta_d) *
                      std::pow(cascade, 1.5) *
                      (2.0 * std::sqrt(pi) * y3 - nd * second * pi);
    const double t5 = (md * cascade) * (md * cascade) * (y4 - second * second);
    return (t1 + t2 + t3 + t4 + t5) * g.tau_bar * g.tau_bar;
}

/// Mean-SNR envelope over the RIS correlation level: the lower bound takes
/// the uncorrelated pair sum, the upper bound its rho -> 1 limit N(N-1).
inline MeanSnrBounds snr_bounds_rho_ru(const LinkGains& g, int m, int n,
                                       double beam_norm) {
    validate(g);
    detail::require(beam_norm >= 0.0, "snr_bounds_rho_ru: beam_norm must be >= 0");
    const double md = static_cast<double>(m);
    const double nd = static_cast<double>(n);
    const double cascade = g.beta_br * g.beta_ru;
    const double shared = g.beta_d * md +
                          0.5 * nd * beam_norm * pi * std::sqrt(g.beta_d * cascade);
    MeanSnrBounds b;
    b.lower = (shared + cascade * md * (nd + pair_moment_sum_uncorrelated(n))) *
              g.tau_bar;
    b.upper = (shared + cascade * md * nd * nd) * g.tau_bar;
    return b;
}

/// Mean SNR in the favorable scenario (fully correlated RIS channel,
/// uncorrelated direct channel): the upper bound with A = sqrt(M).
inline double mean_snr_favorable(const LinkGains& g, int m, int n) {
    return snr_bounds_rho_ru(g, m, n, std::sqrt(static_cast<double>(m))).upper;
}

/// Relative mean-SNR gain of full RIS correlation over none,
/// (UB - LB)/LB, in closed form.
inline double gain_corr(const LinkGains& g, int m, int n, double beam_norm) {
    validate(g);
    const double cascade = g.beta_br * g.beta_ru;
    detail::require_domain(cascade > 0.0, "gain_corr: beta_br*beta_ru must be > 0");
    const double md = static_cast<double>(m);
    const double nd = static_cast<double>(n);
    const double numerator = (4.0 - pi) * nd * nd + (pi - 4.0) * nd;
    const double denominator =
        pi * nd * nd + (4.0 - pi) * nd + 4.0 * g.beta_d / cascade +
        2.0 * nd * beam_norm * pi * std::sqrt(g.beta_d) / (md * std::sqrt(cascade));
    detail::require_domain(denominator > 0.0, "gain_corr: denominator must be > 0");
    return numerator / denominator;
}

/// Large-N limit of gain_corr: (4 - pi)/pi, about 27.32%.
inline double gain_max() { return (4.0 - pi) / pi; }

} // namespace rissnr
