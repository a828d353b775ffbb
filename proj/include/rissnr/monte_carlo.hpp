// SPDX-License-Identifier: Apache-2.0
//
// Seeded, reproducible Monte Carlo engine for the optimal-phase SNR.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "rissnr/channel.hpp"
#include "rissnr/distfit.hpp"
#include "rissnr/snr.hpp"

namespace rissnr {

struct McConfig {
    std::uint64_t n_samples = 100000;
    std::uint64_t seed = 1;
    /// 0 = one worker per hardware thread. The result is bit-identical for
    /// any worker count.
    unsigned workers = 0;
    /// Retained-sample cap for the empirical distribution; beyond it a
    /// deterministic stride subsample is kept.
    std::uint64_t sample_cap = 1000000;
};

struct McResult {
    double mean = 0.0;
    double variance = 0.0; ///< unbiased, n-1 divisor
    double std_error_mean = 0.0;
    std::uint64_t n_samples = 0;
    EmpiricalDistribution distribution;
};

namespace detail {

// Sample draws are batched so the correlation-root products run as one
// matrix product per block. The block size is a fixed constant: partial
// results are indexed by block and reduced in block order, which makes the
// outcome independent of how blocks are scheduled across workers.
inline constexpr std::uint64_t mc_block_size = 128;

struct BlockPartial {
    double sum = 0.0;
    double sum_sq = 0.0;
};

} // namespace detail

/// Draw cfg.n_samples optimal-phase SNR values. Sample i consumes the
/// counter stream derive_stream(seed, i) -- direct-channel Gaussians first,
/// then RIS-channel ones -- so the draw is a pure function of (seed, i) and
/// the result is bit-identical for any degree of parallelism.
inline McResult run(const ChannelWorkspace& ws, const McConfig& cfg) {
    detail::require(cfg.n_samples >= 1, "run: n_samples must be >= 1");
    const int m = ws.geometry.bs_count();
    const int n = ws.geometry.ris_count();
    const double beta_d = ws.gains.beta_d;
    const double cascade = ws.gains.beta_br * ws.gains.beta_ru;
    const double sqrt_beta_d = std::sqrt(beta_d);
    const double sqrt_cascade = std::sqrt(cascade);
    const double tau = ws.gains.tau_bar;

    const std::uint64_t block = detail::mc_block_size;
    const std::uint64_t n_blocks = (cfg.n_samples + block - 1) / block;
    std::vector<detail::BlockPartial> partials(n_blocks);
    std::vector<double> samples(cfg.n_samples);

    std::atomic<std::uint64_t> next_block{0};
    auto worker = [&]() {
        RealMatrix u_d(m, 2 * block), u_ru(n, 2 * block);
        RealMatrix w_d(m, 2 * block), w_ru(n, 2 * block);
        for (;;) {
            const std::uint64_t b = next_block.fetch_add(1);
            if (b >= n_blocks)
                return;
            const std::uint64_t first = b * block;
            const auto count =
                static_cast<Eigen::Index>(std::min(block, cfg.n_samples - first));

            for (Eigen::Index j = 0; j < count; ++j) {
                CounterRng rng = derive_stream(cfg.seed, first + j);
                for (int i = 0; i < m; ++i) {
                    const Complex z = rng.next_cgauss();
                    u_d(i, 2 * j) = z.real();
                    u_d(i, 2 * j + 1) = z.imag();
                }
                for (int i = 0; i < n; ++i) {
                    const Complex z = rng.next_cgauss();
                    u_ru(i, 2 * j) = z.real();
                    u_ru(i, 2 * j + 1) = z.imag();
                }
            }
            w_d.leftCols(2 * count).noalias() =
                ws.r_d_sqrt * u_d.leftCols(2 * count);
            w_ru.leftCols(2 * count).noalias() =
                ws.r_ru_sqrt * u_ru.leftCols(2 * count);

            KahanSum sum, sum_sq;
            for (Eigen::Index j = 0; j < count; ++j) {
                double direct_power = 0.0;
                Complex proj(0.0, 0.0);
                for (int i = 0; i < m; ++i) {
                    const Complex h(w_d(i, 2 * j), w_d(i, 2 * j + 1));
                    direct_power += std::norm(h);
                    proj += std::conj(ws.a_b(i)) * h;
                }
                direct_power *= beta_d;
                const double proj_mag = sqrt_beta_d * std::abs(proj);

                double y_sum = 0.0;
                for (int i = 0; i < n; ++i) {
                    const double re = w_ru(i, 2 * j);
                    const double im = w_ru(i, 2 * j + 1);
                    y_sum += std::sqrt(re * re + im * im);
                }

                const double snr =
                    (direct_power + 2.0 * sqrt_cascade * y_sum * proj_mag +
                     cascade * static_cast<double>(m) * y_sum * y_sum) *
                    tau;
                samples[first + j] = snr;
                sum.add(snr);
                sum_sq.add(snr * snr);
            }
            partials[b] = {sum.value(), sum_sq.value()};
        }
    };

    unsigned n_workers = cfg.workers != 0
                             ? cfg.workers
                             : std::max(1u, std::thread::hardware_concurrency());
    n_workers = static_cast<unsigned>(
        std::min<std::uint64_t>(n_workers, n_blocks));
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (unsigned t = 0; t < n_workers; ++t)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }

    KahanSum total, total_sq;
    for (const auto& p : partials) {
        total.add(p.sum);
        total_sq.add(p.sum_sq);
    }
    const double nd = static_cast<double>(cfg.n_samples);
    const double mean = total.value() / nd;
    double variance = 0.0;
    if (cfg.n_samples > 1)
        variance = std::max(0.0, (total_sq.value() - total.value() * mean) /
                                     (nd - 1.0));

    if (cfg.n_samples > cfg.sample_cap) {
        const std::uint64_t stride =
            (cfg.n_samples + cfg.sample_cap - 1) / cfg.sample_cap;
        std::vector<double> kept;
        kept.reserve(static_cast<std::size_t>(cfg.n_samples / stride) + 1);
        for (std::uint64_t i = 0; i < cfg.n_samples; i += stride)
            kept.push_back(samples[i]);
        samples = std::move(kept);
    }

    return McResult{mean, variance, std::sqrt(variance / nd), cfg.n_samples,
                    EmpiricalDistribution(std::move(samples))};
}

} // namespace rissnr
