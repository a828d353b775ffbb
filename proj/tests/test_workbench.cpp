// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch.hpp>
#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "rissnr/workbench.hpp"

using namespace rissnr;

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ','))
        out.push_back(field);
    return out;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        rows.push_back(split(line));
    return rows;
}

std::map<std::string, std::string> parse_report(const std::string& text) {
    std::map<std::string, std::string> kv;
    for (const auto& row : parse_csv(text))
        if (row.size() == 2)
            kv[row[0]] = row[1];
    return kv;
}

} // namespace

TEST_CASE("analytic_report - audit CSV round-trips the in-memory values") {
    ScenarioConfig cfg; // baseline, rho = 0.7
    const AnalyticReport rep = analytic_report(cfg);
    std::ostringstream out;
    write_analytic_csv(rep, out);
    const auto kv = parse_report(out.str());

    REQUIRE(std::stod(kv.at("mean")) == rep.stats.mean);
    REQUIRE(std::stod(kv.at("variance")) == rep.stats.variance);
    REQUIRE(std::stod(kv.at("k_gamma")) == rep.gamma.shape);
    REQUIRE(std::stod(kv.at("theta_gamma")) == rep.gamma.scale);
    REQUIRE(std::stod(kv.at("a")) == rep.ingredients.beam_norm);
    REQUIRE(std::stod(kv.at("b")) == rep.ingredients.beam_cross);
    REQUIRE(std::stod(kv.at("f")) == rep.ingredients.pair_sum);
    REQUIRE(std::stod(kv.at("c1")) == rep.ingredients.y3);
    REQUIRE(std::stod(kv.at("c2")) == rep.ingredients.y4);
    REQUIRE(kv.at("exactness") == "variance-approximated");
    REQUIRE(kv.at("m") == "32");
    REQUIRE(kv.at("n") == "64");

    cfg.correlation.rho_ru = 0.0;
    std::ostringstream out2;
    write_analytic_csv(analytic_report(cfg), out2);
    REQUIRE(parse_report(out2.str()).at("exactness") == "exact");
}

TEST_CASE("analytic_report - gamma fit matches the stats") {
    const AnalyticReport rep = analytic_report(ScenarioConfig{});
    REQUIRE(rep.gamma.shape * rep.gamma.scale ==
            Approx(rep.stats.mean).epsilon(1e-12));
    REQUIRE(rep.gamma.shape * rep.gamma.scale * rep.gamma.scale ==
            Approx(rep.stats.variance).epsilon(1e-12));
}

TEST_CASE("write_cdf_csv - monotone columns, summary row, deterministic") {
    ScenarioConfig cfg;
    std::ostringstream out;
    const double ks = write_cdf_csv(cfg, 20000, 11, 60, out);

    const auto rows = parse_csv(out.str());
    REQUIRE(rows.front() ==
            std::vector<std::string>{"snr_db", "empirical_cdf", "gamma_cdf"});
    REQUIRE(rows.back().at(0) == "ks_distance");
    REQUIRE(std::stod(rows.back().at(1)) == Approx(ks).epsilon(1e-9));

    double prev_emp = -1.0, prev_fit = -1.0, prev_db = -1e9;
    for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
        const double db = std::stod(rows[i].at(0));
        const double emp = std::stod(rows[i].at(1));
        const double fit = std::stod(rows[i].at(2));
        REQUIRE(db > prev_db);
        REQUIRE(emp >= prev_emp);
        REQUIRE(fit >= prev_fit);
        prev_db = db;
        prev_emp = emp;
        prev_fit = fit;
    }

    std::ostringstream out2;
    write_cdf_csv(cfg, 20000, 11, 60, out2);
    REQUIRE(out2.str() == out.str());
}

TEST_CASE("write_sweep_csv - scenario ordering and quadratic growth") {
    ScenarioConfig cfg;
    cfg.gains = LinkGains{1.0, 1.0, 1.0, 1.0};
    const std::vector<int> n_list{16, 64, 256};
    std::ostringstream out;
    write_sweep_csv(cfg, n_list, 30000, 17, out);

    const auto rows = parse_csv(out.str());
    REQUIRE(rows.front() == std::vector<std::string>{"n", "scenario", "mc_mean",
                                                     "analytic_mean", "mc_var",
                                                     "analytic_var"});
    REQUIRE(rows.size() == 1 + 3 * n_list.size());

    std::map<int, std::map<std::string, std::vector<double>>> table;
    for (std::size_t i = 1; i < rows.size(); ++i)
        table[std::stoi(rows[i].at(0))][rows[i].at(1)] = {
            std::stod(rows[i].at(2)), std::stod(rows[i].at(3)),
            std::stod(rows[i].at(4)), std::stod(rows[i].at(5))};

    for (const int n : n_list) {
        const auto& fav = table.at(n).at("favorable");
        const auto& unc = table.at(n).at("uncorrelated");
        const auto& full = table.at(n).at("full_corr");
        // analytic means: favorable on top, uncorrelated at the bottom
        REQUIRE(fav[1] >= full[1]);
        REQUIRE(fav[1] >= unc[1]);
        REQUIRE(full[1] >= unc[1]);
        // simulated means follow with sampling slack
        REQUIRE(fav[0] >= full[0] * 0.97);
        REQUIRE(fav[0] >= unc[0]);
        // simulated mean tracks the analytic one
        REQUIRE(std::fabs(fav[0] / fav[1] - 1.0) < 0.05);
    }

    // log-log slope of the favorable analytic mean across N
    const double slope =
        std::log(table.at(256).at("favorable")[1] /
                 table.at(16).at("favorable")[1]) /
        std::log(256.0 / 16.0);
    REQUIRE(slope >= 1.9);
    REQUIRE(slope <= 2.1);
}

TEST_CASE("write_gain_csv - correlation gain structure") {
    ScenarioConfig cfg;
    cfg.gains = LinkGains{1.0, 1.0, 1.0, 1.0};
    const std::vector<int> n_list{16, 64};
    const std::vector<double> rho_d_list{0.0, 0.95};
    std::ostringstream out;
    write_gain_csv(cfg, n_list, rho_d_list, 30000, 19, out);

    const auto rows = parse_csv(out.str());
    REQUIRE(rows.front() ==
            std::vector<std::string>{"n", "rho_d", "gain_analytic", "gain_mc"});
    REQUIRE(rows.back().at(0) == "asymptote");
    REQUIRE(std::stod(rows.back().at(2)) == Approx(gain_max()).epsilon(1e-9));

    std::map<std::pair<int, double>, std::pair<double, double>> table;
    for (std::size_t i = 1; i + 1 < rows.size(); ++i)
        table[{std::stoi(rows[i].at(0)), std::stod(rows[i].at(1))}] = {
            std::stod(rows[i].at(2)), std::stod(rows[i].at(3))};

    SystemGeometry g; // for the closed-form cross-check below
    const auto [a_b, a_r] = steering_vectors(g);
    for (const int n : n_list) {
        // simulation tracks the closed form at both correlation levels
        for (const double rho_d : rho_d_list)
            REQUIRE(std::fabs(table.at({n, rho_d}).second -
                              table.at({n, rho_d}).first) < 0.05);
        // analytic column is exactly gain_corr at the scenario's beam norm
        CorrelationSpec corr;
        corr.rho_d = 0.95;
        const ComplexMatrix r_d = correlation_matrix(corr, g, ArraySide::bs);
        const double beam_norm = std::sqrt(std::real(quadratic_form(a_b, r_d)));
        REQUIRE(table.at({n, 0.95}).first ==
                Approx(gain_corr(cfg.gains, 32, n, beam_norm)).epsilon(1e-9));
    }
    // the direct-channel correlation effect on the gain fades as N grows
    const double gap16 =
        std::fabs(table.at({16, 0.0}).first - table.at({16, 0.95}).first);
    const double gap64 =
        std::fabs(table.at({64, 0.0}).first - table.at({64, 0.95}).first);
    REQUIRE(gap64 < gap16);
}

TEST_CASE("calibrate_tau_bar - gamma percentile lands on target") {
    ScenarioConfig cfg; // rho = 0.7 baseline
    const double tau = calibrate_tau_bar(cfg, 25.0, 0.95);
    cfg.gains.tau_bar = tau;
    const AnalyticReport rep = analytic_report(cfg);
    const double q95_db = linear_to_db(gamma_quantile(rep.gamma, 0.95));
    REQUIRE(q95_db == Approx(25.0).margin(1e-6));
}

TEST_CASE("squarest_grid") {
    REQUIRE(squarest_grid(64) == std::pair<int, int>{8, 8});
    REQUIRE(squarest_grid(32) == std::pair<int, int>{8, 4});
    REQUIRE(squarest_grid(12) == std::pair<int, int>{4, 3});
    REQUIRE(squarest_grid(1) == std::pair<int, int>{1, 1});
    REQUIRE_THROWS_AS(squarest_grid(7), std::invalid_argument);
    REQUIRE_THROWS_AS(squarest_grid(2), std::invalid_argument);
}
