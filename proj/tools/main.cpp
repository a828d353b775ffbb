// SPDX-License-Identifier: Apache-2.0
//
// rissnr workbench CLI: closed-form SNR statistics for a RIS-assisted SIMO
// uplink and seeded Monte Carlo validation, emitted as CSV.

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "rissnr/rissnr.hpp"

namespace {

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 1;
    std::uint64_t samples = 100000;
    unsigned workers = 0;
    std::optional<double> rho_d, rho_ru;
    std::optional<double> beta_d, beta_br, beta_ru, tau_db;
    std::optional<int> m_y, m_z, n_y, n_z;
};

void add_common_options(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--config", opt.config_path,
                    "Scenario config file (flat key = value lines)");
    cmd->add_option("--out", opt.out_path, "Output path (default: stdout)");
    cmd->add_option("--seed", opt.seed, "Monte Carlo seed");
    cmd->add_option("--samples", opt.samples, "Monte Carlo sample count");
    cmd->add_option("--workers", opt.workers,
                    "Worker threads (0 = hardware concurrency)");
    cmd->add_option("--rho-d", opt.rho_d, "UE-BS nearest-neighbour correlation");
    cmd->add_option("--rho-ru", opt.rho_ru, "UE-RIS nearest-neighbour correlation");
    cmd->add_option("--beta-d", opt.beta_d, "UE-BS link gain (linear)");
    cmd->add_option("--beta-br", opt.beta_br, "RIS-BS link gain (linear)");
    cmd->add_option("--beta-ru", opt.beta_ru, "UE-RIS link gain (linear)");
    cmd->add_option("--tau-db", opt.tau_db, "Transmit SNR Es/sigma^2 in dB");
    cmd->add_option("--m-y", opt.m_y, "BS grid size along y");
    cmd->add_option("--m-z", opt.m_z, "BS grid size along z");
    cmd->add_option("--n-y", opt.n_y, "RIS grid size along y");
    cmd->add_option("--n-z", opt.n_z, "RIS grid size along z");
}

rissnr::ScenarioConfig resolve_scenario(const CommonOptions& opt,
                                        bool unit_gains_default = false) {
    rissnr::ScenarioConfig cfg;
    if (!opt.config_path.empty())
        cfg = rissnr::load_scenario_file(opt.config_path);
    if (unit_gains_default)
        cfg.gains = rissnr::LinkGains{1.0, 1.0, 1.0, cfg.gains.tau_bar};
    if (opt.rho_d)
        cfg.correlation.rho_d = *opt.rho_d;
    if (opt.rho_ru)
        cfg.correlation.rho_ru = *opt.rho_ru;
    if (opt.beta_d)
        cfg.gains.beta_d = *opt.beta_d;
    if (opt.beta_br)
        cfg.gains.beta_br = *opt.beta_br;
    if (opt.beta_ru)
        cfg.gains.beta_ru = *opt.beta_ru;
    if (opt.tau_db)
        cfg.gains.tau_bar = rissnr::db_to_linear(*opt.tau_db);
    if (opt.m_y)
        cfg.geometry.m_y = *opt.m_y;
    if (opt.m_z)
        cfg.geometry.m_z = *opt.m_z;
    if (opt.n_y)
        cfg.geometry.n_y = *opt.n_y;
    if (opt.n_z)
        cfg.geometry.n_z = *opt.n_z;
    rissnr::validate(cfg);
    return cfg;
}

int with_output(const CommonOptions& opt,
                const std::function<void(std::ostream&)>& emit) {
    if (opt.out_path.empty()) {
        emit(std::cout);
        return 0;
    }
    std::ofstream file(opt.out_path);
    if (!file.good())
        throw std::invalid_argument("cannot open output file: " + opt.out_path);
    emit(file);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"RIS-assisted SIMO uplink SNR workbench"};
    app.require_subcommand(1);

    CommonOptions analytic_opt, cdf_opt, sweep_opt, gain_opt;
    int grid_points = 200;
    std::vector<int> sweep_n{4, 16, 64, 256};
    std::vector<int> gain_n{16, 64, 256};
    std::vector<double> gain_rho_d{0.0, 0.4, 0.7, 0.95};

    CLI::App* analytic =
        app.add_subcommand("analytic", "Closed-form moments, gamma fit and "
                                       "moment ingredients for one scenario");
    add_common_options(analytic, analytic_opt);

    CLI::App* cdf = app.add_subcommand(
        "cdf", "Simulated vs gamma-fit SNR CDF on a dB grid, plus KS distance");
    add_common_options(cdf, cdf_opt);
    cdf->add_option("--grid", grid_points, "Number of CDF grid points");

    CLI::App* sweep = app.add_subcommand(
        "sweep-n", "Mean/variance vs RIS size for the three reference "
                   "correlation scenarios");
    add_common_options(sweep, sweep_opt);
    sweep->add_option("--n-list", sweep_n, "RIS sizes to sweep");

    CLI::App* gain = app.add_subcommand(
        "gain", "Relative mean-SNR gain of full RIS correlation (unit link "
                "gains unless overridden)");
    add_common_options(gain, gain_opt);
    gain->add_option("--n-list", gain_n, "RIS sizes");
    gain->add_option("--rho-d-list", gain_rho_d, "Direct-channel correlations");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analytic->parsed()) {
            const auto cfg = resolve_scenario(analytic_opt);
            const auto report = rissnr::analytic_report(cfg);
            return with_output(analytic_opt, [&](std::ostream& out) {
                rissnr::write_analytic_csv(report, out);
            });
        }
        if (cdf->parsed()) {
            const auto cfg = resolve_scenario(cdf_opt);
            return with_output(cdf_opt, [&](std::ostream& out) {
                rissnr::write_cdf_csv(cfg, cdf_opt.samples, cdf_opt.seed,
                                      grid_points, out, cdf_opt.workers);
            });
        }
        if (sweep->parsed()) {
            const auto cfg = resolve_scenario(sweep_opt);
            return with_output(sweep_opt, [&](std::ostream& out) {
                rissnr::write_sweep_csv(cfg, sweep_n, sweep_opt.samples,
                                        sweep_opt.seed, out, sweep_opt.workers);
            });
        }
        if (gain->parsed()) {
            const auto cfg = resolve_scenario(gain_opt, /*unit_gains_default=*/true);
            return with_output(gain_opt, [&](std::ostream& out) {
                rissnr::write_gain_csv(cfg, gain_n, gain_rho_d, gain_opt.samples,
                                       gain_opt.seed, out, gain_opt.workers);
            });
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
