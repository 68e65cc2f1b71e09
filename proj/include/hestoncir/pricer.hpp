#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "hestoncir/charfn.hpp"
#include "hestoncir/errors.hpp"
#include "hestoncir/model.hpp"
#include "hestoncir/moments.hpp"

namespace hestoncir {

struct PricingConfig {
    int ode_steps = 256;  // RK4 steps per sampling interval
    MomentConvention convention = MomentConvention::simplified;
};

// End-of-interval coefficient values feeding the two exponentials of the
// expected squared relative return: omega = -2i gives (C~, D~, E~), omega = -i
// gives (C^, E^) with D(-i, tau) identically zero.
struct CoefficientSnapshot {
    double c_tilde = 0.0;
    double d_tilde = 0.0;
    double e_tilde = 0.0;
    double c_hat = 0.0;
    double e_hat = 0.0;
};

struct IntervalQuote {
    int j = 0;
    double g_value = 0.0;  // expected squared relative return over the interval
    CoefficientSnapshot coeffs;
    bool negative_g = false;  // lognormal approximation broke down; value kept as-is
};

struct StrikeQuote {
    double strike_variance_points = 0.0;
    std::vector<IntervalQuote> intervals;
    int ode_steps = 0;
    MomentConvention convention = MomentConvention::simplified;
};

namespace detail {

inline double real_checked(cplx z, const char* name) {
    if (std::abs(z.imag()) > 1e-8)
        throw numeric_error(errc::integration_failure,
                            std::string(name) + " has non-negligible imaginary part");
    return z.real();
}

inline double exp_checked(double x, const char* name) {
    if (!(x < 700.0))
        throw numeric_error(errc::overflow,
                            std::string(name) + " exponent overflows: " + std::to_string(x));
    return std::exp(x);
}

}  // namespace detail

// Expected squared relative return over one interval given the state at its
// start: exp(C~ + D~ nu + E~ r) - 2 exp(C^ + E^ r) + 1.
inline double inner_g(double nu, double r, const CoefficientSnapshot& s) {
    const double first = detail::exp_checked(s.c_tilde + s.d_tilde * nu + s.e_tilde * r, "inner_g");
    const double second = detail::exp_checked(s.c_hat + s.e_hat * r, "inner_g");
    return first - 2.0 * second + 1.0;
}

// Same quantity with the interval-start state integrated out: nu and r are
// treated as (correlated) normals, so each exponential becomes lognormal,
// exp(E[Y] + Var[Y]/2).
inline double outer_g(const CoefficientSnapshot& s, const MomentCurves& moments,
                      double t_prev, double rho23) {
    const auto [mean_v, var_v] = moments.normal_moments(Process::variance, t_prev);
    const auto [mean_r, var_r] = moments.normal_moments(Process::rate, t_prev);
    const double mean_y = s.d_tilde * mean_v + s.e_tilde * mean_r;
    const double var_y = s.d_tilde * s.d_tilde * var_v + s.e_tilde * s.e_tilde * var_r +
                         2.0 * s.d_tilde * s.e_tilde * rho23 * std::sqrt(var_v * var_r);
    const double first = detail::exp_checked(s.c_tilde + mean_y + 0.5 * var_y, "outer_g");
    const double second = detail::exp_checked(
        s.c_hat + s.e_hat * mean_r + 0.5 * s.e_hat * s.e_hat * var_r, "outer_g");
    return first - 2.0 * second + 1.0;
}

inline CoefficientSnapshot solve_snapshot(double dt, double interval_expiry, double swap_maturity,
                                          const ModelParams& params, const MomentCurves& moments,
                                          int steps) {
    const cplx minus_2i(0.0, -2.0), minus_i(0.0, -1.0);
    const AffineCoefficients tilde =
        solve_coefficients(minus_2i, dt, interval_expiry, swap_maturity, params, moments, steps);
    const AffineCoefficients hat =
        solve_coefficients(minus_i, dt, interval_expiry, swap_maturity, params, moments, steps);
    CoefficientSnapshot s;
    s.c_tilde = detail::real_checked(tilde.c_end(), "C~");
    s.d_tilde = detail::real_checked(tilde.d_end(), "D~");
    s.e_tilde = detail::real_checked(tilde.e_end(), "E~");
    s.c_hat = detail::real_checked(hat.c_end(), "C^");
    s.e_hat = detail::real_checked(hat.e_end(), "E^");
    return s;
}

// Fair delivery price in variance points: 100^2/T times the sum of expected
// squared relative returns. The first interval starts from the known state
// (v0, r0); later intervals go through the lognormal outer expectation.
inline StrikeQuote fair_strike(const ModelParams& raw_params, const SwapContract& raw_contract,
                               const PricingConfig& cfg = {}) {
    const ModelParams params = validate_params(raw_params);
    const SwapContract contract = validate_contract(raw_contract);
    const MomentCurves moments(params, cfg.convention);

    const double dt = contract.dt();
    const double maturity = contract.maturity;
    StrikeQuote quote;
    quote.ode_steps = cfg.ode_steps;
    quote.convention = cfg.convention;
    quote.intervals.reserve(static_cast<size_t>(contract.n_obs));

    double total = 0.0;
    for (int j = 1; j <= contract.n_obs; ++j) {
        const double t_j = (j == contract.n_obs) ? maturity : j * dt;
        IntervalQuote iq;
        iq.j = j;
        iq.coeffs = solve_snapshot(dt, t_j, maturity, params, moments, cfg.ode_steps);
        if (j == 1) {
            iq.g_value = inner_g(params.v0, params.r0, iq.coeffs);
        } else {
            iq.g_value = outer_g(iq.coeffs, moments, (j - 1) * dt, params.rho23);
        }
        iq.negative_g = iq.g_value < 0.0;
        total += iq.g_value;
        quote.intervals.push_back(iq);
    }
    quote.strike_variance_points = 100.0 * 100.0 / maturity * total;
    return quote;
}

}  // namespace hestoncir
