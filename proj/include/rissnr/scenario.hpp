// SPDX-License-Identifier: Apache-2.0
//
// Scenario configuration: the single input record for analytics and
// simulation, plus flat key-value config file parsing.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "rissnr/channel.hpp"

namespace rissnr {

/// Defaults reproduce the baseline scenario: M = 32 (8x4), N = 64 (8x8),
/// beta_d = beta_ru = 0.59, beta_br = 1/400, d_b = 0.5, d_r = 0.2, the fixed
/// angle sample, moderate correlation rho_d = rho_ru = 0.7 and tau_bar = 1.
struct ScenarioConfig {
    SystemGeometry geometry;
    LinkGains gains;
    CorrelationSpec correlation;
    std::string label = "baseline";
};

inline void validate(const ScenarioConfig& cfg) {
    validate(cfg.geometry);
    validate(cfg.correlation);
    validate(cfg.gains);
}

inline ChannelWorkspace make_workspace(const ScenarioConfig& cfg) {
    return make_workspace(cfg.geometry, cfg.correlation, cfg.gains);
}

namespace detail {

inline double parse_number(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double parsed = 0.0;
    try {
        parsed = std::stod(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    require(used == value.size(), "value for '" + key + "' is not a number: " + value);
    return parsed;
}

inline int parse_int(const std::string& key, const std::string& value) {
    const double v = parse_number(key, value);
    require(v == static_cast<double>(static_cast<int>(v)),
            "value for '" + key + "' is not an integer: " + value);
    return static_cast<int>(v);
}

} // namespace detail

/// Apply one configuration entry. Angles are accepted in degrees and the
/// transmit SNR in dB; everything else is linear/dimensionless. Unknown
/// keys are rejected by name.
inline void apply_scenario_key(ScenarioConfig& cfg, const std::string& key,
                               const std::string& value) {
    if (key == "m_y")
        cfg.geometry.m_y = detail::parse_int(key, value);
    else if (key == "m_z")
        cfg.geometry.m_z = detail::parse_int(key, value);
    else if (key == "n_y")
        cfg.geometry.n_y = detail::parse_int(key, value);
    else if (key == "n_z")
        cfg.geometry.n_z = detail::parse_int(key, value);
    else if (key == "d_b")
        cfg.geometry.d_b = detail::parse_number(key, value);
    else if (key == "d_r")
        cfg.geometry.d_r = detail::parse_number(key, value);
    else if (key == "theta_a_deg")
        cfg.geometry.theta_a = deg_to_rad(detail::parse_number(key, value));
    else if (key == "omega_a_deg")
        cfg.geometry.omega_a = deg_to_rad(detail::parse_number(key, value));
    else if (key == "theta_d_deg")
        cfg.geometry.theta_d = deg_to_rad(detail::parse_number(key, value));
    else if (key == "omega_d_deg")
        cfg.geometry.omega_d = deg_to_rad(detail::parse_number(key, value));
    else if (key == "rho_d")
        cfg.correlation.rho_d = detail::parse_number(key, value);
    else if (key == "rho_ru")
        cfg.correlation.rho_ru = detail::parse_number(key, value);
    else if (key == "beta_d")
        cfg.gains.beta_d = detail::parse_number(key, value);
    else if (key == "beta_br")
        cfg.gains.beta_br = detail::parse_number(key, value);
    else if (key == "beta_ru")
        cfg.gains.beta_ru = detail::parse_number(key, value);
    else if (key == "tau_db")
        cfg.gains.tau_bar = db_to_linear(detail::parse_number(key, value));
    else if (key == "label")
        cfg.label = value;
    else
        throw std::invalid_argument("unknown configuration key '" + key + "'");
}

namespace detail {

inline std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

} // namespace detail

/// Parse a flat key = value configuration stream ('#' and ';' start
/// comments). Unspecified fields keep the baseline defaults; the result is
/// validated before returning.
inline ScenarioConfig parse_scenario(std::istream& in) {
    ScenarioConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos)
            line.erase(comment);
        line = detail::trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        detail::require(eq != std::string::npos,
                        "config line " + std::to_string(line_no) +
                            " is not of the form key = value: " + line);
        apply_scenario_key(cfg, detail::trim(line.substr(0, eq)),
                           detail::trim(line.substr(eq + 1)));
    }
    validate(cfg);
    return cfg;
}

inline ScenarioConfig load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    detail::require(in.good(), "cannot open config file: " + path);
    return parse_scenario(in);
}

} // namespace rissnr
