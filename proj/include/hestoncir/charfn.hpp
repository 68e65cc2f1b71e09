#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "hestoncir/errors.hpp"
#include "hestoncir/model.hpp"
#include "hestoncir/moments.hpp"
#include "hestoncir/ratecurve.hpp"

namespace hestoncir {

using cplx = std::complex<double>;

// Coefficient triple of the exponential ansatz exp(C + D nu + E r), solved on a
// tau grid over one sampling interval. tau runs backwards from the interval
// expiry `anchor` (calendar time t = anchor - tau); the bond coefficient inside
// the drift terms is always taken against the swap maturity.
struct AffineCoefficients {
    cplx omega;
    std::vector<double> tau_grid;
    std::vector<cplx> c_values;
    std::vector<cplx> d_values;
    std::vector<cplx> e_values;
    double anchor = 0.0;         // interval expiry t_j, years
    double swap_maturity = 0.0;  // T, years

    cplx c_end() const { return c_values.back(); }
    cplx d_end() const { return d_values.back(); }
    cplx e_end() const { return e_values.back(); }
};

// Closed-form D. Written without the g ratio so the zero-forcing case
// (omega = -i, where omega^2 + omega i = 0) degenerates smoothly to D = 0:
//
//   D = -(omega^2 + omega i)(1 - e^{b tau}) / (a(1 - e^{b tau}) - b(1 + e^{b tau}))
//
// with a = kappa* - rho12 sigma omega i, b = sqrt(a^2 + sigma^2(omega^2 + omega i)),
// principal branch. Algebraically identical to ((a+b)/sigma^2)(1-e^{b tau})/(1-g e^{b tau}).
inline cplx d_closed_form(cplx omega, double tau, const ModelParams& p) {
    if (tau < 0.0)
        throw validation_error(errc::bad_time_argument, "d_closed_form requires tau >= 0");
    const cplx i(0.0, 1.0);
    const cplx forcing = omega * omega + omega * i;
    if (std::abs(forcing) < 1e-14) return {0.0, 0.0};
    const cplx a = p.kappa_star - p.rho12 * p.sigma * omega * i;
    const cplx b = std::sqrt(a * a + p.sigma * p.sigma * forcing);
    const cplx ebt = std::exp(b * tau);
    const cplx denom = a * (1.0 - ebt) - b * (1.0 + ebt);
    if (std::abs(denom) < 1e-12 * (std::abs(a) + std::abs(b)) * std::abs(ebt))
        throw numeric_error(errc::integration_failure,
                            "closed-form D singular at tau = " + std::to_string(tau));
    return -forcing * (1.0 - ebt) / denom;
}

namespace detail {

struct CoefficientRhs {
    cplx omega;
    double interval_expiry;
    double swap_maturity;
    const ModelParams* params;
    const MomentCurves* moments;  // null when only E is integrated

    // dE/dtau at backward time tau; calendar time t = t_j - tau.
    cplx e_rhs(double tau, cplx e) const {
        const ModelParams& p = *params;
        const double t = std::max(interval_expiry - tau, 0.0);
        const double b = cir_bond_b(t, swap_maturity, p);
        const cplx i(0.0, 1.0);
        return 0.5 * p.eta * p.eta * e * e - (p.alpha_star + b * p.eta * p.eta) * e + omega * i;
    }

    // dC/dtau; the non-affine sqrt(nu) sqrt(r) factor is replaced by its
    // deterministic expectation curve.
    cplx c_rhs(double tau, cplx e) const {
        const ModelParams& p = *params;
        const double t = std::max(interval_expiry - tau, 0.0);
        const double b = cir_bond_b(t, swap_maturity, p);
        const double f = moments->product_moment(t);
        const cplx i(0.0, 1.0);
        const cplx d = d_closed_form(omega, tau, p);
        return p.kappa_star * p.theta_star * d + p.alpha_star * p.beta_star * e +
               p.rho13 * p.eta * f * omega * i * (e - b) +
               p.rho23 * p.sigma * p.eta * f * d * (e - b);
    }
};

inline void check_finite(cplx z, double tau, const char* name) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw numeric_error(errc::integration_failure,
                            std::string(name) + " became non-finite at tau = " + std::to_string(tau));
}

inline void check_interval(double dt, double interval_expiry, double swap_maturity, int steps) {
    if (!(dt > 0.0) || dt > interval_expiry + 1e-12 || interval_expiry > swap_maturity + 1e-12)
        throw validation_error(errc::bad_time_argument,
                               "need 0 < dt <= interval_expiry <= swap_maturity");
    if (steps < 2)
        throw validation_error(errc::bad_time_argument, "need at least 2 integration steps");
}

}  // namespace detail

// E alone by classical fixed-step RK4 on [0, dt], initial condition E(0) = 0.
inline std::vector<cplx> solve_e(cplx omega, double dt, double interval_expiry,
                                 double swap_maturity, const ModelParams& params, int steps) {
    detail::check_interval(dt, interval_expiry, swap_maturity, steps);
    detail::CoefficientRhs rhs{omega, interval_expiry, swap_maturity, &params, nullptr};
    std::vector<cplx> e_values(static_cast<size_t>(steps) + 1);
    const double h = dt / steps;
    cplx e{0.0, 0.0};
    e_values[0] = e;
    for (int k = 0; k < steps; ++k) {
        const double tau = k * h;
        const cplx k1 = rhs.e_rhs(tau, e);
        const cplx k2 = rhs.e_rhs(tau + 0.5 * h, e + 0.5 * h * k1);
        const cplx k3 = rhs.e_rhs(tau + 0.5 * h, e + 0.5 * h * k2);
        const cplx k4 = rhs.e_rhs(tau + h, e + h * k3);
        e += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        detail::check_finite(e, tau + h, "E");
        e_values[k + 1] = e;
    }
    return e_values;
}

// Full triple on [0, dt]: D from the closed form, (C, E) by joint RK4 so the
// quadrature for C stays aligned with the E stages.
inline AffineCoefficients solve_coefficients(cplx omega, double dt, double interval_expiry,
                                             double swap_maturity, const ModelParams& params,
                                             const MomentCurves& moments, int steps) {
    detail::check_interval(dt, interval_expiry, swap_maturity, steps);
    detail::CoefficientRhs rhs{omega, interval_expiry, swap_maturity, &params, &moments};

    AffineCoefficients out;
    out.omega = omega;
    out.anchor = interval_expiry;
    out.swap_maturity = swap_maturity;
    const size_t n = static_cast<size_t>(steps) + 1;
    out.tau_grid.resize(n);
    out.c_values.resize(n);
    out.d_values.resize(n);
    out.e_values.resize(n);

    const double h = dt / steps;
    cplx c{0.0, 0.0}, e{0.0, 0.0};
    out.tau_grid[0] = 0.0;
    out.c_values[0] = c;
    out.d_values[0] = {0.0, 0.0};
    out.e_values[0] = e;
    for (int k = 0; k < steps; ++k) {
        const double tau = k * h;
        const cplx e1 = rhs.e_rhs(tau, e);
        const cplx c1 = rhs.c_rhs(tau, e);
        const cplx e2 = rhs.e_rhs(tau + 0.5 * h, e + 0.5 * h * e1);
        const cplx c2 = rhs.c_rhs(tau + 0.5 * h, e + 0.5 * h * e1);
        const cplx e3 = rhs.e_rhs(tau + 0.5 * h, e + 0.5 * h * e2);
        const cplx c3 = rhs.c_rhs(tau + 0.5 * h, e + 0.5 * h * e2);
        const cplx e4 = rhs.e_rhs(tau + h, e + h * e3);
        const cplx c4 = rhs.c_rhs(tau + h, e + h * e3);
        e += h / 6.0 * (e1 + 2.0 * e2 + 2.0 * e3 + e4);
        c += h / 6.0 * (c1 + 2.0 * c2 + 2.0 * c3 + c4);
        detail::check_finite(e, tau + h, "E");
        detail::check_finite(c, tau + h, "C");
        const double tau_next = (k + 1 == steps) ? dt : (k + 1) * h;
        out.tau_grid[k + 1] = tau_next;
        out.c_values[k + 1] = c;
        out.d_values[k + 1] = d_closed_form(omega, tau_next, params);
        out.e_values[k + 1] = e;
    }
    return out;
}

}  // namespace hestoncir
