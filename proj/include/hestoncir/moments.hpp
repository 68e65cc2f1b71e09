#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "hestoncir/errors.hpp"
#include "hestoncir/model.hpp"

namespace hestoncir {

enum class Process { variance, rate };

// Whether cross terms consume the simplified exponential fit of E[sqrt(X(t))]
// or the full three-term expression.
enum class MomentConvention { simplified, full };

// Moment machinery of one square-root process dX = k(xbar - X)dt + vol sqrt(X) dW:
//
//   q(t)   = vol^2 (1 - e^{-kt}) / (4k)
//   l      = 4 k xbar / vol^2
//   phi(t) = 4 k x0 e^{-kt} / (vol^2 (1 - e^{-kt}))
//
// E[sqrt(X(t))] ~ sqrt(q(phi-1) + ql + ql/(2(l+phi))), further fitted by
// m + p e^{-Qt} with anchors at t = 0 and t = 1.
class SqrtProcessMoments {
public:
    SqrtProcessMoments(double k, double xbar, double vol, double x0, const char* label)
        : k_(k), xbar_(xbar), vol_(vol), x0_(x0) {
        const double m2 = xbar_ - vol_ * vol_ / (8.0 * k_);
        if (m2 <= 0.0)
            throw validation_error(errc::moment_fit_undefined,
                                   std::string(label) + ": xbar <= vol^2/(8k), fit mean imaginary");
        m_ = std::sqrt(m2);
        p_ = std::sqrt(x0_) - m_;
        if (std::abs(p_) < 1e-14) {
            p_ = 0.0;      // flat fit, decay rate irrelevant
            decay_ = 1.0;
        } else {
            const double ratio = (expected_sqrt(1.0) - m_) / p_;
            if (ratio <= 0.0)
                throw validation_error(errc::moment_fit_undefined,
                                       std::string(label) + ": exponential-fit log argument non-positive");
            decay_ = -std::log(ratio);
        }
    }

    double q(double t) const { return vol_ * vol_ * (-std::expm1(-k_ * t)) / (4.0 * k_); }
    double l() const { return 4.0 * k_ * xbar_ / (vol_ * vol_); }
    double phi(double t) const {
        return 4.0 * k_ * x0_ * std::exp(-k_ * t) / (vol_ * vol_ * (-std::expm1(-k_ * t)));
    }

    double m() const { return m_; }
    double p() const { return p_; }
    double decay_rate() const { return decay_; }

    // Three-term approximation of E[sqrt(X(t))]; singular at t = 0.
    double expected_sqrt(double t) const {
        require_positive_time(t);
        const double qt = q(t), lt = l(), ph = phi(t);
        return std::sqrt(qt * (ph - 1.0) + qt * lt + qt * lt / (2.0 * (lt + ph)));
    }

    // Exponential fit m + p e^{-Qt}; valid down to t = 0 where it anchors sqrt(x0).
    double expected_sqrt_fit(double t) const {
        if (t < 0.0)
            throw validation_error(errc::bad_time_argument, "fit requires t >= 0");
        return m_ + p_ * std::exp(-decay_ * t);
    }

    // Var[sqrt(X(t))] ~ Var[X(t)] / (4 E[X(t)]) = q - ql/(2(l+phi)).
    double sqrt_variance(double t) const {
        require_positive_time(t);
        const double qt = q(t), lt = l(), ph = phi(t);
        return qt - qt * lt / (2.0 * (lt + ph));
    }

    // Normal approximation of X(t): mean q(l+phi), variance q^2(2l+4phi).
    std::pair<double, double> normal_moments(double t) const {
        require_positive_time(t);
        const double qt = q(t), lt = l(), ph = phi(t);
        return {qt * (lt + ph), qt * qt * (2.0 * lt + 4.0 * ph)};
    }

private:
    static void require_positive_time(double t) {
        if (!(t > 0.0))
            throw validation_error(errc::bad_time_argument,
                                   "moment is singular at t <= 0 (phi diverges)");
    }

    double k_, xbar_, vol_, x0_;
    double m_, p_, decay_;
};

// Both processes of the hybrid model plus the cross moment E[sqrt(nu) sqrt(r)].
// The instantaneous correlation of the two square-root drivers is taken to be
// rho23, the correlation of the Brownian motions driving nu and r.
class MomentCurves {
public:
    explicit MomentCurves(const ModelParams& p,
                          MomentConvention convention = MomentConvention::simplified)
        : variance_(p.kappa_star, p.theta_star, p.sigma, p.v0, "variance process"),
          rate_(p.alpha_star, p.beta_star, p.eta, p.r0, "rate process"),
          rho_prod_(p.rho23),
          convention_(convention) {}

    const SqrtProcessMoments& process(Process which) const {
        return which == Process::variance ? variance_ : rate_;
    }

    double lambda1(double t) const { return variance_.expected_sqrt(t); }
    double lambda1_tilde(double t) const { return variance_.expected_sqrt_fit(t); }
    double lambda2(double t) const { return rate_.expected_sqrt(t); }
    double lambda2_tilde(double t) const { return rate_.expected_sqrt_fit(t); }

    double sqrt_variance(Process which, double t) const {
        return process(which).sqrt_variance(t);
    }

    std::pair<double, double> normal_moments(Process which, double t) const {
        return process(which).normal_moments(t);
    }

    // E[sqrt(nu(t)) sqrt(r(t))] = Cov + E[sqrt(nu)] E[sqrt(r)]. Defined by
    // continuity at t = 0 where both variances vanish and the fit anchors hold.
    double product_moment(double t) const {
        if (t < 0.0)
            throw validation_error(errc::bad_time_argument, "product_moment requires t >= 0");
        const double mean_v = mean_sqrt(variance_, t);
        const double mean_r = mean_sqrt(rate_, t);
        if (t == 0.0) return mean_v * mean_r;
        const double cov =
            rho_prod_ * std::sqrt(variance_.sqrt_variance(t) * rate_.sqrt_variance(t));
        return cov + mean_v * mean_r;
    }

    double rho_prod() const { return rho_prod_; }
    MomentConvention convention() const { return convention_; }

private:
    double mean_sqrt(const SqrtProcessMoments& proc, double t) const {
        if (convention_ == MomentConvention::simplified || t == 0.0)
            return proc.expected_sqrt_fit(t);
        return proc.expected_sqrt(t);
    }

    SqrtProcessMoments variance_;
    SqrtProcessMoments rate_;
    double rho_prod_;
    MomentConvention convention_;
};

}  // namespace hestoncir
