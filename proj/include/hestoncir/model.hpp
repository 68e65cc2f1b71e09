#pragma once

#include <array>
#include <cmath>
#include <string>

#include "hestoncir/errors.hpp"

namespace hestoncir {

// Risk-neutral parameters of the hybrid equity / short-rate model together with
// the full 3x3 correlation structure of the driving Brownian motions
// (1 = asset, 2 = variance, 3 = rate).
struct ModelParams {
    double kappa_star = 0.0;  // variance mean-reversion speed (1/year)
    double theta_star = 0.0;  // long-run variance level
    double sigma = 0.0;       // vol-of-vol
    double alpha_star = 0.0;  // rate mean-reversion speed (1/year)
    double beta_star = 0.0;   // long-run rate level (1/year)
    double eta = 0.0;         // rate volatility
    double rho12 = 0.0;       // asset-variance correlation
    double rho13 = 0.0;       // asset-rate correlation
    double rho23 = 0.0;       // variance-rate correlation
    double v0 = 0.0;          // initial instantaneous variance
    double r0 = 0.0;          // initial short rate
    double s0 = 0.0;          // initial asset price

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

// Discretely-sampled swap terms. Sampling is equally spaced, so the
// annualization factor is pinned to n_obs / maturity.
struct SwapContract {
    double maturity = 0.0;  // T, years
    int n_obs = 0;          // number of sampling intervals N
    double notional = 1.0;  // display-only scaling, never enters the strike

    double dt() const { return maturity / n_obs; }
    double af() const { return n_obs / maturity; }

    friend bool operator==(const SwapContract&, const SwapContract&) = default;
};

// Lower-triangular factor L with L*L^T equal to the correlation matrix.
struct CorrelationFactor {
    std::array<std::array<double, 3>, 3> l{};
};

namespace detail {

// PSD test for a 3x3 correlation matrix with |rho_ij| <= 1: the only extra
// condition is a non-negative determinant.
inline double correlation_det(double r12, double r13, double r23) {
    return 1.0 + 2.0 * r12 * r13 * r23 - r12 * r12 - r13 * r13 - r23 * r23;
}

}  // namespace detail

inline ModelParams validate_params(const ModelParams& p) {
    const std::pair<const char*, double> positives[] = {
        {"kappa_star", p.kappa_star}, {"theta_star", p.theta_star}, {"sigma", p.sigma},
        {"alpha_star", p.alpha_star}, {"beta_star", p.beta_star},   {"eta", p.eta},
        {"v0", p.v0},                 {"r0", p.r0},                 {"s0", p.s0},
    };
    for (const auto& [name, value] : positives) {
        if (!(value > 0.0) || !std::isfinite(value))
            throw validation_error(errc::negative_parameter,
                                   std::string(name) + " must be strictly positive");
    }
    if (2.0 * p.kappa_star * p.theta_star < p.sigma * p.sigma)
        throw validation_error(errc::feller_violation_variance,
                               "2*kappa_star*theta_star < sigma^2");
    if (2.0 * p.alpha_star * p.beta_star < p.eta * p.eta)
        throw validation_error(errc::feller_violation_rate, "2*alpha_star*beta_star < eta^2");
    for (double rho : {p.rho12, p.rho13, p.rho23}) {
        if (!(rho >= -1.0 && rho <= 1.0))
            throw validation_error(errc::correlation_out_of_range,
                                   "correlation outside [-1, 1]");
    }
    if (detail::correlation_det(p.rho12, p.rho13, p.rho23) < 0.0)
        throw validation_error(errc::correlation_not_psd,
                               "correlation matrix is not positive semi-definite");
    return p;
}

inline SwapContract validate_contract(const SwapContract& c) {
    if (!(c.maturity > 0.0) || !std::isfinite(c.maturity))
        throw validation_error(errc::bad_contract, "maturity must be positive");
    if (c.n_obs < 1)
        throw validation_error(errc::bad_contract, "n_obs must be at least 1");
    if (!(c.notional > 0.0))
        throw validation_error(errc::bad_contract, "notional must be positive");
    return c;
}

// Closed-form Cholesky factor of the 3x3 correlation matrix. Requires strict
// positive definiteness: the (2,2) and (3,3) entries divide by the radicands.
inline CorrelationFactor cholesky_factor(double rho12, double rho13, double rho23) {
    const double s12 = 1.0 - rho12 * rho12;
    if (s12 <= 0.0)
        throw validation_error(errc::cholesky_degenerate, "1 - rho12^2 must be positive");
    const double l32 = (rho23 - rho13 * rho12) / std::sqrt(s12);
    const double rad = 1.0 - rho13 * rho13 - l32 * l32;
    if (rad <= 0.0)
        throw validation_error(errc::cholesky_degenerate,
                               "correlation matrix is not strictly positive definite");
    CorrelationFactor f;
    f.l = {{{1.0, 0.0, 0.0},
            {rho12, std::sqrt(s12), 0.0},
            {rho13, l32, std::sqrt(rad)}}};
    return f;
}

}  // namespace hestoncir
