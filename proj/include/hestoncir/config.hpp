#pragma once

#include <fstream>
#include <set>
#include <string>
#include <utility>

#include <json.hpp>

#include "hestoncir/errors.hpp"
#include "hestoncir/model.hpp"

namespace hestoncir {

// Flat JSON parameter file. All model keys are required; there are no defaults.
//   { "kappa_star": ..., "theta_star": ..., "sigma": ..., "alpha_star": ...,
//     "beta_star": ..., "eta": ..., "rho12": ..., "rho13": ..., "rho23": ...,
//     "v0": ..., "r0": ..., "s0": ..., "maturity": ..., "n_obs": ... }
inline std::pair<ModelParams, SwapContract> load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw validation_error(errc::bad_config, "cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(errc::bad_config, "config parse error: " + std::string(e.what()));
    }
    if (!j.is_object())
        throw validation_error(errc::bad_config, "config must be a JSON object");

    static const std::set<std::string> known = {
        "kappa_star", "theta_star", "sigma", "alpha_star", "beta_star", "eta",
        "rho12",      "rho13",      "rho23", "v0",         "r0",        "s0",
        "maturity",   "n_obs",
    };
    for (const auto& [key, value] : j.items()) {
        if (!known.count(key))
            throw validation_error(errc::bad_config, "unknown config key: " + key);
        if (!value.is_number())
            throw validation_error(errc::bad_config, "config key is not a number: " + key);
    }
    auto need = [&](const char* key) -> double {
        if (!j.contains(key))
            throw validation_error(errc::bad_config, "missing config key: " + std::string(key));
        return j.at(key).get<double>();
    };

    ModelParams p;
    p.kappa_star = need("kappa_star");
    p.theta_star = need("theta_star");
    p.sigma = need("sigma");
    p.alpha_star = need("alpha_star");
    p.beta_star = need("beta_star");
    p.eta = need("eta");
    p.rho12 = need("rho12");
    p.rho13 = need("rho13");
    p.rho23 = need("rho23");
    p.v0 = need("v0");
    p.r0 = need("r0");
    p.s0 = need("s0");

    SwapContract c;
    c.maturity = need("maturity");
    const double n_obs = need("n_obs");
    if (n_obs != static_cast<double>(static_cast<int>(n_obs)))
        throw validation_error(errc::bad_config, "n_obs must be an integer");
    c.n_obs = static_cast<int>(n_obs);
    return {p, c};
}

inline nlohmann::json params_to_json(const ModelParams& p, const SwapContract& c) {
    return nlohmann::json{
        {"kappa_star", p.kappa_star}, {"theta_star", p.theta_star}, {"sigma", p.sigma},
        {"alpha_star", p.alpha_star}, {"beta_star", p.beta_star},   {"eta", p.eta},
        {"rho12", p.rho12},           {"rho13", p.rho13},           {"rho23", p.rho23},
        {"v0", p.v0},                 {"r0", p.r0},                 {"s0", p.s0},
        {"maturity", c.maturity},     {"n_obs", c.n_obs},
    };
}

}  // namespace hestoncir
