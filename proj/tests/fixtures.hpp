#pragma once

#include "hestoncir/model.hpp"

namespace fixtures {

// Baseline parameter set used throughout the suite.
inline hestoncir::ModelParams baseline() {
    hestoncir::ModelParams p;
    p.kappa_star = 2.0;
    p.theta_star = 0.05;
    p.sigma = 0.1;
    p.alpha_star = 1.2;
    p.beta_star = 0.05;
    p.eta = 0.01;
    p.rho12 = -0.4;
    p.rho13 = 0.5;
    p.rho23 = 0.5;
    p.v0 = 0.05;
    p.r0 = 0.05;
    p.s0 = 1.0;
    return p;
}

inline hestoncir::SwapContract contract(int n_obs, double maturity = 1.0) {
    hestoncir::SwapContract c;
    c.maturity = maturity;
    c.n_obs = n_obs;
    return c;
}

// Same vol/rate dynamics collapsed to constants: sigma and eta shrunk to a
// numerically negligible level with v0 = theta*, r0 = beta*, so the price must
// coincide with the frozen-lognormal benchmark.
inline hestoncir::ModelParams near_lognormal() {
    hestoncir::ModelParams p = baseline();
    p.sigma = 1e-10;
    p.eta = 1e-10;
    p.v0 = p.theta_star;
    p.r0 = p.beta_star;
    return p;
}

}  // namespace fixtures
