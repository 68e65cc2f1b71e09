#include <cmath>
#include <vector>

#include <doctest.h>

#include "fixtures.hpp"
#include "hestoncir/mc.hpp"
#include "oracles.hpp"

using namespace hestoncir;

TEST_CASE("realized variance of hand-computable paths") {
    SUBCASE("flat path has zero realized variance") {
        const std::vector<double> obs{1.0, 1.0, 1.0, 1.0, 1.0};
        CHECK(realized_variance(obs, fixtures::contract(4)) == 0.0);
    }
    SUBCASE("+10% then -10% over one year, N = 2") {
        const std::vector<double> obs{1.0, 1.1, 0.99};
        // (0.1^2 + 0.1^2) / 1 * 100^2 = 200 variance points
        CHECK(realized_variance(obs, fixtures::contract(2)) == doctest::Approx(200.0));
    }
    SUBCASE("single 5% move, N = 1") {
        const std::vector<double> obs{1.0, 1.05};
        CHECK(realized_variance(obs, fixtures::contract(1)) == doctest::Approx(25.0));
    }
    SUBCASE("annualization divides by maturity") {
        const std::vector<double> obs{1.0, 1.1};
        CHECK(realized_variance(obs, fixtures::contract(1, 0.5)) == doctest::Approx(200.0));
    }
}

TEST_CASE("realized variance input validation") {
    const std::vector<double> obs{1.0, 1.1, 0.99};
    CHECK_THROWS_AS(realized_variance(obs, fixtures::contract(4)), validation_error);
    const std::vector<double> nonpos{1.0, -0.5, 0.9};
    CHECK_THROWS_AS(realized_variance(nonpos, fixtures::contract(2)), validation_error);
}

TEST_CASE("MC configuration validation") {
    const ModelParams p = fixtures::baseline();
    const auto c = fixtures::contract(4);
    CHECK_THROWS_AS(simulate_strike(p, c, {.n_paths = 0}), validation_error);
    CHECK_THROWS_AS(simulate_strike(p, c, {.n_paths = 100, .steps_per_interval = 0}),
                    validation_error);
    ModelParams bad = p;
    bad.v0 = -0.05;
    CHECK_THROWS_AS(simulate_strike(bad, c, {.n_paths = 100}), validation_error);
}

TEST_CASE("estimate is bit-identical across worker counts and repeated runs") {
    const ModelParams p = fixtures::baseline();
    const auto c = fixtures::contract(4);
    const McConfig base{.n_paths = 2000, .steps_per_interval = 5, .seed = 42, .workers = 1};
    const auto ref = simulate_strike(p, c, base);
    for (int workers : {1, 2, 3, 5}) {
        McConfig cfg = base;
        cfg.workers = workers;
        const auto est = simulate_strike(p, c, cfg);
        CHECK(est.strike_estimate == ref.strike_estimate);
        CHECK(est.std_error == ref.std_error);
    }
    CHECK(ref.n_paths == 2000);
    CHECK(ref.seed == 42);
    CHECK(ref.steps_per_interval == 5);
}

TEST_CASE("different seeds decorrelate the estimate") {
    const ModelParams p = fixtures::baseline();
    const auto c = fixtures::contract(4);
    const auto a = simulate_strike(p, c, {.n_paths = 2000, .steps_per_interval = 5, .seed = 1});
    const auto b = simulate_strike(p, c, {.n_paths = 2000, .steps_per_interval = 5, .seed = 2});
    CHECK(a.strike_estimate != b.strike_estimate);
    // but both are estimates of the same quantity
    CHECK(std::abs(a.strike_estimate - b.strike_estimate) <
          4.0 * std::hypot(a.std_error, b.std_error));
}

TEST_CASE("near-deterministic dynamics hit the frozen-lognormal strike within 3 sigma") {
    const ModelParams p = fixtures::near_lognormal();
    const auto c = fixtures::contract(4);
    const auto est =
        simulate_strike(p, c, {.n_paths = 20000, .steps_per_interval = 10, .seed = 7});
    const double expected = oracles::lognormal_strike(p.theta_star, p.beta_star, 1.0, 4);
    CHECK(std::abs(est.strike_estimate - expected) < 3.0 * est.std_error);
    CHECK(est.std_error > 0.0);
    CHECK(est.elapsed_seconds >= 0.0);
}

TEST_CASE("MC agrees with the formula strike at moderate accuracy") {
    const ModelParams p = fixtures::baseline();
    const auto c = fixtures::contract(4);
    const auto est =
        simulate_strike(p, c, {.n_paths = 40000, .steps_per_interval = 20, .seed = 11});
    // Frozen regression value for N = 4 (see test_pricer).
    CHECK(std::abs(est.strike_estimate - 518.476920) < 4.0 * est.std_error + 0.5);
}
