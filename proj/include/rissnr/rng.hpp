// SPDX-License-Identifier: Apache-2.0
//
// Counter-based random number streams for reproducible parallel Monte Carlo.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <utility>

#include "rissnr/common.hpp"

namespace rissnr {

/// Philox2x64-10 stream. A stream is a pure function of (seed, stream_id):
/// the key is the seed, the counter high word is the stream id and the low
/// word advances as blocks are consumed. Distinct (seed, stream_id) pairs
/// can never collide, so per-sample streams are independent of scheduling.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream_id)
        : key_(seed), ctr_hi_(stream_id) {}

    std::uint64_t next_u64() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const auto [r0, r1] = block(ctr_lo_++, ctr_hi_, key_);
        spare_ = r1;
        have_spare_ = true;
        return r0;
    }

    /// Uniform on (0, 1]; never returns 0 so log() stays finite.
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53;
    }

    /// CN(0,1) draw: real and imaginary parts each N(0, 1/2), so E|z|^2 = 1.
    /// Polar construction: |z|^2 ~ Exp(1), phase uniform.
    std::complex<double> next_cgauss() {
        const double u1 = next_uniform();
        const double u2 = next_uniform();
        return std::polar(std::sqrt(-std::log(u1)), 2.0 * pi * u2);
    }

private:
    static constexpr std::uint64_t mul_const = 0xD2B74407B1CE6E93ull;
    static constexpr std::uint64_t key_weyl = 0x9E3779B97F4A7C15ull;

    static std::pair<std::uint64_t, std::uint64_t> block(std::uint64_t c0,
                                                         std::uint64_t c1,
                                                         std::uint64_t key) {
        std::uint64_t x0 = c0;
        std::uint64_t x1 = c1;
        for (int round = 0; round < 10; ++round) {
            const unsigned __int128 prod =
                static_cast<unsigned __int128>(mul_const) * x0;
            const auto hi = static_cast<std::uint64_t>(prod >> 64);
            const auto lo = static_cast<std::uint64_t>(prod);
            x0 = hi ^ key ^ x1;
            x1 = lo;
            key += key_weyl;
        }
        return {x0, x1};
    }

    std::uint64_t key_;
    std::uint64_t ctr_hi_;
    std::uint64_t ctr_lo_ = 0;
    std::uint64_t spare_ = 0;
    bool have_spare_ = false;
};

/// Deterministic, collision-free per-sample stream.
inline CounterRng derive_stream(std::uint64_t seed, std::uint64_t sample_index) {
    return CounterRng(seed, sample_index);
}

} // namespace rissnr
