// SPDX-License-Identifier: Apache-2.0
//
// Scenario orchestration: analytic reports, CSV emission for the CDF /
// dimension-sweep / correlation-gain studies, and tau_bar calibration.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "rissnr/analytic.hpp"
#include "rissnr/distfit.hpp"
#include "rissnr/monte_carlo.hpp"
#include "rissnr/scenario.hpp"

namespace rissnr {

namespace detail {

inline std::string format_sig(double v, int digits) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

// Figure CSVs carry 12 significant digits; the analytic audit report uses
// 17 so re-parsing reproduces the in-memory doubles exactly.
inline std::string csv_num(double v) { return format_sig(v, 12); }
inline std::string audit_num(double v) { return format_sig(v, 17); }

} // namespace detail

struct AnalyticReport {
    ScenarioConfig config;
    MomentIngredients ingredients;
    SnrStatistics stats;
    GammaParams gamma;
};

/// Closed-form moments, gamma fit and moment ingredients for one scenario.
inline AnalyticReport analytic_report(const ScenarioConfig& cfg) {
    validate(cfg);
    AnalyticReport rep;
    rep.config = cfg;
    const auto [a_b, a_r] = steering_vectors(cfg.geometry);
    const ComplexMatrix r_d =
        correlation_matrix(cfg.correlation, cfg.geometry, ArraySide::bs);
    const ComplexMatrix r_ru =
        correlation_matrix(cfg.correlation, cfg.geometry, ArraySide::ris);
    rep.ingredients = compute_ingredients(r_d, r_ru, a_b);
    rep.stats = var_snr(cfg.gains, rep.ingredients, cfg.geometry.bs_count(),
                        cfg.geometry.ris_count());
    rep.gamma = fit_gamma(rep.stats.mean, rep.stats.variance);
    return rep;
}

/// key,value audit listing of the analytic report.
inline void write_analytic_csv(const AnalyticReport& rep, std::ostream& out) {
    using detail::audit_num;
    out << "key,value\n";
    out << "label," << rep.config.label << "\n";
    out << "m," << rep.config.geometry.bs_count() << "\n";
    out << "n," << rep.config.geometry.ris_count() << "\n";
    out << "rho_d," << audit_num(rep.config.correlation.rho_d) << "\n";
    out << "rho_ru," << audit_num(rep.config.correlation.rho_ru) << "\n";
    out << "tau_bar," << audit_num(rep.config.gains.tau_bar) << "\n";
    out << "mean," << audit_num(rep.stats.mean) << "\n";
    out << "variance," << audit_num(rep.stats.variance) << "\n";
    out << "exactness,"
        << (rep.stats.variance_exact ? "exact" : "variance-approximated") << "\n";
    out << "k_gamma," << audit_num(rep.gamma.shape) << "\n";
    out << "theta_gamma," << audit_num(rep.gamma.scale) << "\n";
    out << "a," << audit_num(rep.ingredients.beam_norm) << "\n";
    out << "b," << audit_num(rep.ingredients.beam_cross) << "\n";
    out << "f," << audit_num(rep.ingredients.pair_sum) << "\n";
    out << "c1," << audit_num(rep.ingredients.y3) << "\n";
    out << "c2," << audit_num(rep.ingredients.y4) << "\n";
    out << "y_shape," << audit_num(rep.ingredients.y_shape) << "\n";
    out << "y_scale," << audit_num(rep.ingredients.y_scale) << "\n";
    out << "trace_rd_sq," << audit_num(rep.ingredients.trace_rd_sq) << "\n";
}

/// Simulated vs gamma-fit CDF table: snr_db, empirical_cdf, gamma_cdf rows
/// on an evenly spaced dB grid, then a ks_distance summary row. Returns the
/// KS distance.
inline double write_cdf_csv(const ScenarioConfig& cfg, std::uint64_t n_samples,
                            std::uint64_t seed, int grid_points, std::ostream& out,
                            unsigned workers = 0) {
    detail::require(grid_points >= 2, "write_cdf_csv: grid needs >= 2 points");
    const AnalyticReport rep = analytic_report(cfg);
    const McResult mc =
        run(make_workspace(cfg), McConfig{n_samples, seed, workers});
    const double ks = ks_distance(mc.distribution, rep.gamma);

    const double lo = std::max(mc.distribution.quantile(0.001), 1e-30);
    const double hi = mc.distribution.quantile(0.999);
    const double lo_db = linear_to_db(lo);
    const double hi_db = linear_to_db(hi);

    out << "snr_db,empirical_cdf,gamma_cdf\n";
    for (int i = 0; i < grid_points; ++i) {
        const double db =
            lo_db + (hi_db - lo_db) * static_cast<double>(i) /
                        static_cast<double>(grid_points - 1);
        const double x = db_to_linear(db);
        out << detail::csv_num(db) << "," << detail::csv_num(mc.distribution.cdf(x))
            << "," << detail::csv_num(gamma_cdf(rep.gamma, x)) << "\n";
    }
    out << "ks_distance," << detail::csv_num(ks) << "\n";
    return ks;
}

/// Squarest factor pair (a, b) with a*b = n and a >= b. Prime n (beyond 1)
/// has no usable grid and is rejected; pick explicit dims instead.
inline std::pair<int, int> squarest_grid(int n) {
    detail::require(n >= 1, "squarest_grid: n must be >= 1");
    for (int b = static_cast<int>(std::sqrt(static_cast<double>(n))); b >= 1; --b) {
        if (n % b == 0) {
            if (b == 1 && n > 1)
                throw std::invalid_argument(
                    "N = " + std::to_string(n) +
                    " is prime; set n_y and n_z explicitly");
            return {n / b, b};
        }
    }
    return {1, 1};
}

namespace detail {

struct SweepScenario {
    const char* name;
    double rho_d;
    double rho_ru;
};

inline constexpr SweepScenario sweep_scenarios[] = {
    {"uncorrelated", 0.0, 0.0},
    {"full_corr", 1.0, 1.0},
    {"favorable", 0.0, 1.0},
};

} // namespace detail

/// Mean/variance vs RIS size for the three reference correlation scenarios,
/// simulated and analytic side by side.
inline void write_sweep_csv(const ScenarioConfig& base, const std::vector<int>& n_list,
                            std::uint64_t n_samples, std::uint64_t seed,
                            std::ostream& out, unsigned workers = 0) {
    out << "n,scenario,mc_mean,analytic_mean,mc_var,analytic_var\n";
    for (const int n : n_list) {
        const auto [ny, nz] = squarest_grid(n);
        for (const auto& scen : detail::sweep_scenarios) {
            ScenarioConfig cfg = base;
            cfg.geometry.n_y = ny;
            cfg.geometry.n_z = nz;
            cfg.correlation.rho_d = scen.rho_d;
            cfg.correlation.rho_ru = scen.rho_ru;
            const AnalyticReport rep = analytic_report(cfg);
            const McResult mc =
                run(make_workspace(cfg), McConfig{n_samples, seed, workers});
            out << n << "," << scen.name << "," << detail::csv_num(mc.mean) << ","
                << detail::csv_num(rep.stats.mean) << ","
                << detail::csv_num(mc.variance) << ","
                << detail::csv_num(rep.stats.variance) << "\n";
        }
    }
}

/// Relative mean-SNR gain of full RIS correlation, closed form vs Monte
/// Carlo estimate ((mean at rho_ru = 1) / (mean at rho_ru = 0) - 1), for a
/// grid of RIS sizes and direct-channel correlation levels. Ends with the
/// large-N asymptote row.
inline void write_gain_csv(const ScenarioConfig& base, const std::vector<int>& n_list,
                           const std::vector<double>& rho_d_list,
                           std::uint64_t n_samples, std::uint64_t seed,
                           std::ostream& out, unsigned workers = 0) {
    out << "n,rho_d,gain_analytic,gain_mc\n";
    const int m = base.geometry.bs_count();
    const auto [a_b, a_r] = steering_vectors(base.geometry);
    for (const int n : n_list) {
        const auto [ny, nz] = squarest_grid(n);
        for (const double rho_d : rho_d_list) {
            ScenarioConfig cfg = base;
            cfg.geometry.n_y = ny;
            cfg.geometry.n_z = nz;
            cfg.correlation.rho_d = rho_d;

            const ComplexMatrix r_d =
                correlation_matrix(cfg.correlation, cfg.geometry, ArraySide::bs);
            const double beam_norm =
                std::sqrt(std::real(quadratic_form(a_b, r_d)));
            const double analytic = gain_corr(cfg.gains, m, n, beam_norm);

            cfg.correlation.rho_ru = 0.0;
            const McResult low =
                run(make_workspace(cfg), McConfig{n_samples, seed, workers});
            cfg.correlation.rho_ru = 1.0;
            const McResult high =
                run(make_workspace(cfg), McConfig{n_samples, seed, workers});
            const double mc_gain = (high.mean - low.mean) / low.mean;

            out << n << "," << detail::csv_num(rho_d) << ","
                << detail::csv_num(analytic) << "," << detail::csv_num(mc_gain)
                << "\n";
        }
    }
    out << "asymptote,," << detail::csv_num(gain_max()) << ",\n";
}

/// Find tau_bar placing the given percentile of the gamma-fit SNR
/// distribution at target_db, by bisection on log10(tau_bar). The moment
/// ingredients are tau-invariant, so only the moments are re-evaluated.
inline double calibrate_tau_bar(const ScenarioConfig& cfg, double target_db = 25.0,
                                double percentile = 0.95) {
    validate(cfg);
    const auto [a_b, a_r] = steering_vectors(cfg.geometry);
    const ComplexMatrix r_d =
        correlation_matrix(cfg.correlation, cfg.geometry, ArraySide::bs);
    const ComplexMatrix r_ru =
        correlation_matrix(cfg.correlation, cfg.geometry, ArraySide::ris);
    const MomentIngredients ing = compute_ingredients(r_d, r_ru, a_b);
    const int m = cfg.geometry.bs_count();
    const int n = cfg.geometry.ris_count();

    auto percentile_db = [&](double log_tau) {
        LinkGains g = cfg.gains;
        g.tau_bar = std::pow(10.0, log_tau);
        const SnrStatistics st = var_snr(g, ing, m, n);
        const GammaParams fit = fit_gamma(st.mean, st.variance);
        return linear_to_db(gamma_quantile(fit, percentile));
    };

    double lo = -9.0, hi = 9.0;
    detail::require_domain(percentile_db(lo) <= target_db &&
                               percentile_db(hi) >= target_db,
                           "calibrate_tau_bar: target outside search range");
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        (percentile_db(mid) < target_db ? lo : hi) = mid;
    }
    return std::pow(10.0, 0.5 * (lo + hi));
}

} // namespace rissnr
