// Batch front-end for the variance-swap pricing engine: formula pricing,
// Monte Carlo validation, correlation sweeps, and formula-vs-MC comparisons,
// with CSV / JSON output for downstream plotting.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hestoncir/config.hpp"
#include "hestoncir/mc.hpp"
#include "hestoncir/pricer.hpp"
#include "hestoncir/report.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitNumerical = 4;

struct CommonOpts {
    std::string config_path;
    std::vector<int> n_obs;
    int ode_steps = 256;
    std::string out_csv;
    std::string out_json;
};

struct McOpts {
    std::int64_t paths = 200000;
    int steps = 20;
    std::uint64_t seed = 0;
    int workers = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool need_n = true) {
    cmd->add_option("--config", o.config_path, "JSON parameter file")->required();
    auto* n = cmd->add_option("--n", o.n_obs, "observation counts (comma list)")->delimiter(',');
    if (need_n) n->required();
    cmd->add_option("--ode-steps", o.ode_steps, "RK4 steps per sampling interval")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", o.out_csv, "CSV output path");
    cmd->add_option("--json", o.out_json, "JSON report output path");
}

void add_mc(CLI::App* cmd, McOpts& o) {
    cmd->add_option("--paths", o.paths, "Monte Carlo paths");
    cmd->add_option("--steps", o.steps, "Euler steps per sampling interval")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "RNG seed");
    cmd->add_option("--workers", o.workers, "worker threads (0 = auto)");
}

void emit(const hestoncir::RunReport& report, const CommonOpts& o) {
    const std::string csv = hestoncir::to_csv(report);
    std::cout << csv;
    if (!o.out_csv.empty()) hestoncir::write_file(o.out_csv, csv);
    if (!o.out_json.empty()) {
        nlohmann::json j = report;
        hestoncir::write_file(o.out_json, j.dump(2) + "\n");
    }
}

hestoncir::RunReport make_report(const std::string& command, const hestoncir::ModelParams& p,
                                 const hestoncir::SwapContract& c) {
    hestoncir::RunReport report;
    report.command = command;
    report.resolved_params = hestoncir::params_to_json(p, c);
    return report;
}

int run_price(const CommonOpts& o) {
    auto [params, contract] = hestoncir::load_config(o.config_path);
    hestoncir::validate_params(params);
    auto report = make_report("price", params, contract);
    const auto t0 = std::chrono::steady_clock::now();
    for (int n : o.n_obs) {
        hestoncir::SwapContract c = contract;
        c.n_obs = n;
        const auto quote = hestoncir::fair_strike(params, c, {.ode_steps = o.ode_steps});
        hestoncir::ResultRow row;
        row.n_obs = n;
        row.strike_formula = quote.strike_variance_points;
        report.rows.push_back(row);
    }
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit(report, o);
    return 0;
}

int run_mc(const CommonOpts& o, const McOpts& m) {
    auto [params, contract] = hestoncir::load_config(o.config_path);
    hestoncir::validate_params(params);
    auto report = make_report("mc", params, contract);
    const auto t0 = std::chrono::steady_clock::now();
    for (int n : o.n_obs) {
        hestoncir::SwapContract c = contract;
        c.n_obs = n;
        const auto est = hestoncir::simulate_strike(
            params, c,
            {.n_paths = m.paths, .steps_per_interval = m.steps, .seed = m.seed,
             .workers = m.workers});
        hestoncir::ResultRow row;
        row.n_obs = n;
        row.strike_mc = est.strike_estimate;
        row.std_error = est.std_error;
        row.paths = est.n_paths;
        row.seed = est.seed;
        report.rows.push_back(row);
    }
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit(report, o);
    return 0;
}

int run_sweep(const CommonOpts& o, const std::string& param, const std::vector<double>& values) {
    if (values.empty())
        throw CLI::ValidationError("--values", "sweep needs at least one value");
    auto [params, contract] = hestoncir::load_config(o.config_path);
    auto report = make_report("sweep", params, contract);
    const auto t0 = std::chrono::steady_clock::now();
    for (double value : values) {
        hestoncir::ModelParams p = params;
        if (param == "rho13") p.rho13 = value;
        else p.rho23 = value;
        for (int n : o.n_obs) {
            hestoncir::SwapContract c = contract;
            c.n_obs = n;
            hestoncir::ResultRow row;
            row.n_obs = n;
            row.sweep_param = param;
            row.sweep_value = value;
            try {
                const auto quote = hestoncir::fair_strike(p, c, {.ode_steps = o.ode_steps});
                row.strike_formula = quote.strike_variance_points;
            } catch (const hestoncir::validation_error& e) {
                row.error = e.what();  // non-PSD cell etc.; keep sweeping
            }
            report.rows.push_back(row);
        }
    }
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit(report, o);
    return 0;
}

int run_compare(const CommonOpts& o, const McOpts& m, bool skip_mc) {
    auto [params, contract] = hestoncir::load_config(o.config_path);
    hestoncir::validate_params(params);
    auto report = make_report("compare", params, contract);
    const auto t0 = std::chrono::steady_clock::now();
    for (int n : o.n_obs) {
        hestoncir::SwapContract c = contract;
        c.n_obs = n;
        hestoncir::ResultRow row;
        row.n_obs = n;
        const auto quote = hestoncir::fair_strike(params, c, {.ode_steps = o.ode_steps});
        row.strike_formula = quote.strike_variance_points;
        if (!skip_mc) {
            const auto est = hestoncir::simulate_strike(
                params, c,
                {.n_paths = m.paths, .steps_per_interval = m.steps, .seed = m.seed,
                 .workers = m.workers});
            row.strike_mc = est.strike_estimate;
            row.std_error = est.std_error;
            row.paths = est.n_paths;
            row.seed = est.seed;
            row.rel_error_pct = 100.0 *
                                std::abs(est.strike_estimate - quote.strike_variance_points) /
                                quote.strike_variance_points;
        }
        report.rows.push_back(row);
    }
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit(report, o);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discretely-sampled variance swap pricing under a hybrid "
                 "stochastic-volatility / stochastic-rate model"};
    app.require_subcommand(1);
    app.set_version_flag("--version", hestoncir::kToolVersion);

    CommonOpts price_opts, mc_opts_c, sweep_opts, compare_opts;
    McOpts mc_flags, compare_mc_flags;
    std::string sweep_param;
    std::vector<double> sweep_values;
    bool skip_mc = false;

    auto* price = app.add_subcommand("price", "semi-closed-form strike per observation count");
    add_common(price, price_opts);

    auto* mc = app.add_subcommand("mc", "Monte Carlo strike estimate");
    add_common(mc, mc_opts_c);
    add_mc(mc, mc_flags);

    auto* sweep = app.add_subcommand("sweep", "strike grid over one correlation parameter");
    add_common(sweep, sweep_opts);
    sweep->add_option("--param", sweep_param, "parameter to sweep")
        ->required()
        ->check(CLI::IsMember({"rho13", "rho23"}));
    sweep->add_option("--values", sweep_values, "swept values (comma list)")
        ->required()
        ->delimiter(',');

    auto* compare = app.add_subcommand("compare", "formula vs Monte Carlo, joined table");
    add_common(compare, compare_opts);
    add_mc(compare, compare_mc_flags);
    compare->add_flag("--skip-mc", skip_mc, "formula-only fallback, MC columns left empty");

    try {
        app.parse(argc, argv);
        if (price->parsed()) return run_price(price_opts);
        if (mc->parsed()) return run_mc(mc_opts_c, mc_flags);
        if (sweep->parsed()) return run_sweep(sweep_opts, sweep_param, sweep_values);
        if (compare->parsed()) return run_compare(compare_opts, compare_mc_flags, skip_mc);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the message / help text
        return e.get_exit_code() == 0 ? 0 : kExitUsage;
    } catch (const hestoncir::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const hestoncir::numeric_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
