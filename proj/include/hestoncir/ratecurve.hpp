#pragma once

#include <cmath>
#include <string>

#include "hestoncir/errors.hpp"
#include "hestoncir/model.hpp"

namespace hestoncir {

// Rate-exposure coefficient B(t,T) of the square-root short-rate zero-coupon
// bond P(t,T) = A(t,T) exp(-B(t,T) r(t)). Enters every forward-measure drift.
//
//   B(t,T) = 2 (e^{(T-t)h} - 1) / (2h + (alpha + h)(e^{(T-t)h} - 1)),
//   h = sqrt(alpha^2 + 2 eta^2).
inline double cir_bond_b(double t, double maturity, double alpha_star, double eta) {
    if (t < 0.0 || t > maturity)
        throw validation_error(errc::bad_time_argument,
                               "cir_bond_b requires 0 <= t <= maturity");
    const double h = std::sqrt(alpha_star * alpha_star + 2.0 * eta * eta);
    const double e = std::expm1((maturity - t) * h);
    return 2.0 * e / (2.0 * h + (alpha_star + h) * e);
}

inline double cir_bond_b(double t, double maturity, const ModelParams& p) {
    return cir_bond_b(t, maturity, p.alpha_star, p.eta);
}

}  // namespace hestoncir
