// SPDX-License-Identifier: Apache-2.0
//
// rissnr - closed-form SNR analysis and Monte Carlo validation for
// RIS-assisted SIMO uplinks over correlated Rayleigh fading.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rissnr {

inline constexpr double pi = std::numbers::pi;

constexpr double deg_to_rad(double deg) { return deg * pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / pi; }

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double v) { return 10.0 * std::log10(v); }

/// Compensated (Kahan) accumulator. Summation result depends only on the
/// order of add() calls, which callers keep fixed for reproducibility.
class KahanSum {
public:
    void add(double v) {
        const double y = v - comp_;
        const double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

namespace detail {

inline void require(bool ok, const std::string& msg) {
    if (!ok)
        throw std::invalid_argument(msg);
}

inline void require_domain(bool ok, const std::string& msg) {
    if (!ok)
        throw std::domain_error(msg);
}

} // namespace detail
} // namespace rissnr
