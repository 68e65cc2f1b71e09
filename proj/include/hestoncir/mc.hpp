#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "hestoncir/errors.hpp"
#include "hestoncir/model.hpp"
#include "hestoncir/ratecurve.hpp"

namespace hestoncir {

struct McConfig {
    std::int64_t n_paths = 200000;
    int steps_per_interval = 20;
    std::uint64_t seed = 0;
    int workers = 0;  // 0 = hardware concurrency; result is identical either way
};

struct McEstimate {
    double strike_estimate = 0.0;  // variance points
    double std_error = 0.0;        // variance points
    std::int64_t n_paths = 0;
    int steps_per_interval = 0;
    std::uint64_t seed = 0;
    double elapsed_seconds = 0.0;
};

// Annualized realized variance of one observed path, in variance points:
// (AF/N) sum ((S_j - S_{j-1})/S_{j-1})^2 * 100^2 with AF = N/T.
inline double realized_variance(std::span<const double> observations, const SwapContract& c) {
    if (observations.size() != static_cast<size_t>(c.n_obs) + 1)
        throw validation_error(errc::bad_contract, "need n_obs + 1 observations");
    double sum = 0.0;
    for (size_t j = 1; j < observations.size(); ++j) {
        if (!(observations[j - 1] > 0.0) || !(observations[j] > 0.0))
            throw validation_error(errc::bad_contract, "observations must be strictly positive");
        const double ret = (observations[j] - observations[j - 1]) / observations[j - 1];
        sum += ret * ret;
    }
    return sum / c.maturity * 100.0 * 100.0;
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Everything that is constant along a path: the Cholesky rows and the bond
// coefficient tabulated on the step grid.
struct McPlan {
    ModelParams params;
    SwapContract contract;
    int steps_per_interval;
    double dt_step;
    double sqrt_dt;
    std::array<std::array<double, 3>, 3> chol;
    std::vector<double> bond_b;  // B(t_k, T) at every sub-step start

    McPlan(const ModelParams& p, const SwapContract& c, int spi)
        : params(p), contract(c), steps_per_interval(spi) {
        dt_step = c.dt() / spi;
        sqrt_dt = std::sqrt(dt_step);
        chol = cholesky_factor(p.rho12, p.rho13, p.rho23).l;
        const std::int64_t total_steps = static_cast<std::int64_t>(c.n_obs) * spi;
        bond_b.resize(static_cast<size_t>(total_steps));
        for (std::int64_t k = 0; k < total_steps; ++k)
            bond_b[static_cast<size_t>(k)] =
                cir_bond_b(std::min(k * dt_step, c.maturity), c.maturity, p);
    }
};

// One path of (ln S, nu, r) under the forward-measure drifts with full
// truncation: the positive part of the state feeds every sqrt and drift, the
// state itself may go negative. Returns the realized variance in variance points.
inline double simulate_path(const McPlan& plan, std::uint64_t path_seed) {
    const ModelParams& p = plan.params;
    std::mt19937_64 rng(path_seed);
    std::normal_distribution<double> normal;

    double x = 0.0;  // ln(S/S0); only ratios enter the payoff
    double v = p.v0;
    double r = p.r0;
    double rv_sum = 0.0;
    double prev = 1.0;
    std::size_t step = 0;
    for (int j = 0; j < plan.contract.n_obs; ++j) {
        for (int k = 0; k < plan.steps_per_interval; ++k, ++step) {
            const double z1 = normal(rng);
            const double z2 = normal(rng);
            const double z3 = normal(rng);
            const auto& l = plan.chol;
            const double w1 = l[0][0] * z1;
            const double w2 = l[1][0] * z1 + l[1][1] * z2;
            const double w3 = l[2][0] * z1 + l[2][1] * z2 + l[2][2] * z3;

            const double vp = v > 0.0 ? v : 0.0;
            const double rp = r > 0.0 ? r : 0.0;
            const double sv = std::sqrt(vp);
            const double sr = std::sqrt(rp);
            const double b = plan.bond_b[step];

            x += (rp - p.rho13 * b * p.eta * sr * sv - 0.5 * vp) * plan.dt_step +
                 sv * plan.sqrt_dt * w1;
            v += (p.kappa_star * (p.theta_star - vp) - p.rho23 * p.sigma * b * p.eta * sr * sv) *
                     plan.dt_step +
                 p.sigma * sv * plan.sqrt_dt * w2;
            r += (p.alpha_star * p.beta_star - (p.alpha_star + b * p.eta * p.eta) * rp) *
                     plan.dt_step +
                 p.eta * sr * plan.sqrt_dt * w3;
        }
        const double s = std::exp(x);
        const double ret = (s - prev) / prev;
        rv_sum += ret * ret;
        prev = s;
    }
    if (!std::isfinite(rv_sum))
        throw numeric_error(errc::integration_failure, "non-finite path state");
    return rv_sum / plan.contract.maturity * 100.0 * 100.0;
}

}  // namespace detail

// Monte Carlo estimate of the fair strike: average realized variance over
// independent paths simulated directly under the T-forward measure. Per-path
// RNG streams depend only on (seed, path index), and the mean/variance
// reduction runs in path order, so the estimate is bit-identical for any
// worker count.
inline McEstimate simulate_strike(const ModelParams& raw_params, const SwapContract& raw_contract,
                                  const McConfig& cfg) {
    const ModelParams params = validate_params(raw_params);
    const SwapContract contract = validate_contract(raw_contract);
    if (cfg.n_paths < 1)
        throw validation_error(errc::bad_config, "n_paths must be at least 1");
    if (cfg.steps_per_interval < 1)
        throw validation_error(errc::bad_config, "steps_per_interval must be at least 1");
    if (contract.dt() / cfg.steps_per_interval > contract.dt() + 1e-15)
        throw validation_error(errc::bad_config, "per-step size exceeds the sampling interval");

    const auto t0 = std::chrono::steady_clock::now();
    const detail::McPlan plan(params, contract, cfg.steps_per_interval);

    std::vector<double> rv(static_cast<size_t>(cfg.n_paths));
    // Path seeds come from the splitmix64 stream anchored at cfg.seed, so the
    // streams of two different seeds are unrelated (a plain seed ^ index would
    // reuse the same stream set in permuted order).
    auto run_range = [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i)
            rv[static_cast<size_t>(i)] = detail::simulate_path(
                plan, detail::splitmix64(cfg.seed +
                                         0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(i)));
    };

    int workers = cfg.workers > 0 ? cfg.workers
                                  : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    if (workers == 1 || cfg.n_paths < 2 * workers) {
        run_range(0, cfg.n_paths);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        const std::int64_t chunk = (cfg.n_paths + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const std::int64_t lo = w * chunk;
            const std::int64_t hi = std::min(cfg.n_paths, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(run_range, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    double mean = 0.0;
    for (double value : rv) mean += value;
    mean /= static_cast<double>(cfg.n_paths);
    double ssq = 0.0;
    for (double value : rv) {
        const double d = value - mean;
        ssq += d * d;
    }
    const double stderr_ =
        cfg.n_paths > 1
            ? std::sqrt(ssq / (static_cast<double>(cfg.n_paths) - 1.0) /
                        static_cast<double>(cfg.n_paths))
            : 0.0;

    McEstimate est;
    est.strike_estimate = mean;
    est.std_error = stderr_;
    est.n_paths = cfg.n_paths;
    est.steps_per_interval = cfg.steps_per_interval;
    est.seed = cfg.seed;
    est.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return est;
}

}  // namespace hestoncir
