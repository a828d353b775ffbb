// SPDX-License-Identifier: Apache-2.0
//
// Gamma moment matching, CDF evaluation and empirical-distribution
// comparison for SNR samples.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "rissnr/common.hpp"
#include "rissnr/special_functions.hpp"

namespace rissnr {

struct GammaParams {
    double shape = 1.0;
    double scale = 1.0;
};

/// Method-of-moments gamma fit: shape = mean^2/var, scale = var/mean.
inline GammaParams fit_gamma(double mean, double variance) {
    detail::require_domain(mean > 0.0, "fit_gamma: mean must be > 0");
    detail::require_domain(variance > 0.0, "fit_gamma: variance must be > 0");
    return {mean * mean / variance, variance / mean};
}

inline double gamma_cdf(const GammaParams& p, double x) {
    detail::require_domain(x >= 0.0, "gamma_cdf: x must be >= 0");
    return reg_lower_incomplete_gamma(p.shape, x / p.scale);
}

/// Inverse gamma CDF by bisection on the monotone CDF.
inline double gamma_quantile(const GammaParams& p, double prob) {
    detail::require_domain(prob > 0.0 && prob < 1.0,
                           "gamma_quantile: prob must lie in (0,1)");
    double hi = p.scale * (p.shape + 10.0 * std::sqrt(p.shape) + 10.0);
    while (gamma_cdf(p, hi) < prob)
        hi *= 2.0;
    double lo = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (gamma_cdf(p, mid) < prob ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Sorted nonnegative sample set with right-continuous step CDF.
class EmpiricalDistribution {
public:
    explicit EmpiricalDistribution(std::vector<double> samples)
        : samples_(std::move(samples)) {
        detail::require(!samples_.empty(), "EmpiricalDistribution: needs >= 1 sample");
        std::sort(samples_.begin(), samples_.end());
        detail::require(samples_.front() >= 0.0,
                        "EmpiricalDistribution: samples must be >= 0");
    }

    const std::vector<double>& samples() const { return samples_; }
    std::size_t count() const { return samples_.size(); }

    /// Fraction of samples <= x.
    double cdf(double x) const {
        const auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
        return static_cast<double>(it - samples_.begin()) /
               static_cast<double>(samples_.size());
    }

    /// Order-statistic quantile: smallest sample with cdf >= prob.
    double quantile(double prob) const {
        detail::require_domain(prob >= 0.0 && prob <= 1.0,
                               "quantile: prob must lie in [0,1]");
        if (prob <= 0.0)
            return samples_.front();
        const auto rank = static_cast<std::size_t>(
            std::ceil(prob * static_cast<double>(samples_.size())));
        return samples_[std::min(rank, samples_.size()) - 1];
    }

private:
    std::vector<double> samples_;
};

/// Kolmogorov-Smirnov distance between the empirical CDF and a fitted
/// gamma CDF, taking both step limits at every sample point.
inline double ks_distance(const EmpiricalDistribution& dist, const GammaParams& p) {
    const auto& xs = dist.samples();
    const double n = static_cast<double>(xs.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double model = gamma_cdf(p, std::max(xs[i], 0.0));
        const double above = static_cast<double>(i + 1) / n - model;
        const double below = model - static_cast<double>(i) / n;
        sup = std::max({sup, above, below});
    }
    return sup;
}

} // namespace rissnr
