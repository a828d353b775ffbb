// SPDX-License-Identifier: Apache-2.0
//
// Per-realization optimal RIS phase configuration and instantaneous SNR.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <atomic>
#include <cmath>
#include <iostream>

#include "rissnr/channel.hpp"

namespace rissnr {

/// Diagonal of the RIS reflection matrix; entries are unit modulus.
using PhaseVector = ComplexVector;

/// Scalar summary of one optimally phased draw: the SNR itself, the RIS
/// magnitude sum Y = sum_n |h_ru_tilde_n|, and the alignment phase psi.
struct SnrSample {
    double snr = 0.0;
    double y_sum = 0.0;
    Complex psi{1.0, 0.0};
};

namespace detail {

inline void warn_degenerate_direct_channel() {
    static std::atomic<bool> warned{false};
    if (!warned.exchange(true))
        std::cerr << "rissnr: |a_b^H h_d| underflowed; alignment phase set to 1\n";
}

} // namespace detail

/// Unit phasor psi = a_b^H h_d / |a_b^H h_d| aligning the reflected path
/// with the direct one. The projection vanishing is a probability-zero
/// event; psi = 1 is then as good as any other unit scalar.
inline Complex alignment_phase(const ComplexVector& a_b, const ComplexVector& h_d) {
    const Complex proj = a_b.dot(h_d);
    const double mag = std::abs(proj);
    if (mag < 1e-300) {
        detail::warn_degenerate_direct_channel();
        return Complex(1.0, 0.0);
    }
    return proj / mag;
}

/// SNR-maximizing RIS phases: entry r is psi * e^{j angle(a_r_r)} *
/// e^{-j angle(h_ru_r)}, which co-phases every reflected element with the
/// direct channel.
inline PhaseVector optimal_phases(const ChannelRealization& real) {
    const Complex psi = alignment_phase(real.a_b, real.h_d);
    PhaseVector phases(real.h_ru_tilde.size());
    for (Eigen::Index r = 0; r < phases.size(); ++r)
        phases(r) =
            psi * std::polar(1.0, std::arg(real.a_r(r)) - std::arg(real.h_ru_tilde(r)));
    return phases;
}

/// Global uplink channel h = h_d + H_br Phi h_ru with the rank-1 LOS
/// segment H_br = sqrt(beta_br) a_b a_r^H.
inline ComplexVector global_channel(const ChannelRealization& real,
                                    const PhaseVector& phases, const LinkGains& gains) {
    detail::require(phases.size() == real.h_ru_tilde.size() &&
                        real.a_r.size() == real.h_ru_tilde.size(),
                    "global_channel: dimension mismatch");
    Complex cascade(0.0, 0.0);
    for (Eigen::Index r = 0; r < phases.size(); ++r)
        cascade += std::conj(real.a_r(r)) * phases(r) * real.h_ru_tilde(r);
    return real.h_d +
           std::sqrt(gains.beta_br * gains.beta_ru) * cascade * real.a_b;
}

/// Matched-filter SNR ||h||^2 * tau_bar.
inline double instantaneous_snr(const ComplexVector& h, double tau_bar) {
    detail::require_domain(tau_bar > 0.0, "instantaneous_snr: tau_bar must be > 0");
    return h.squaredNorm() * tau_bar;
}

/// Optimal-phase SNR without materializing the phase vector, using the
/// aligned form ||h_d||^2 + 2 sqrt(beta_br beta_ru) Y |a_b^H h_d| +
/// beta_br beta_ru M Y^2, all times tau_bar.
inline SnrSample optimal_snr_sample(const ChannelRealization& real,
                                    const LinkGains& gains) {
    SnrSample out;
    out.y_sum = real.h_ru_tilde.cwiseAbs().sum();
    const Complex proj = real.a_b.dot(real.h_d);
    const double proj_mag = std::abs(proj);
    out.psi = proj_mag < 1e-300 ? Complex(1.0, 0.0) : proj / proj_mag;
    const double direct_power = real.h_d.squaredNorm();
    const double cascade_gain = gains.beta_br * gains.beta_ru;
    const double m = static_cast<double>(real.h_d.size());
    out.snr = (direct_power + 2.0 * std::sqrt(cascade_gain) * out.y_sum * proj_mag +
               cascade_gain * m * out.y_sum * out.y_sum) *
              gains.tau_bar;
    return out;
}

} // namespace rissnr
