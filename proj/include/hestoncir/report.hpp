#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hestoncir/errors.hpp"

namespace hestoncir {

inline constexpr const char* kToolVersion = "0.1.0";

// One output row; which fields are populated depends on the command.
struct ResultRow {
    int n_obs = 0;
    std::string sweep_param;  // "rho13" / "rho23" for sweep rows
    std::optional<double> sweep_value;
    std::optional<double> strike_formula;
    std::optional<double> strike_mc;
    std::optional<double> std_error;
    std::optional<std::int64_t> paths;
    std::optional<std::uint64_t> seed;
    std::optional<double> rel_error_pct;
    std::string error;  // nonempty when this cell failed (sweep keeps going)
};

struct RunReport {
    std::string command;
    nlohmann::json resolved_params;
    std::vector<ResultRow> rows;
    double elapsed_seconds = 0.0;
    std::string version = kToolVersion;
};

namespace detail {

template <class T>
nlohmann::json opt_json(const std::optional<T>& v) {
    if (v) return *v;
    return nullptr;
}

template <class T>
void opt_from(const nlohmann::json& j, const char* key, std::optional<T>& out) {
    if (j.contains(key) && !j.at(key).is_null()) out = j.at(key).get<T>();
    else out.reset();
}

}  // namespace detail

inline void to_json(nlohmann::json& j, const ResultRow& r) {
    j = nlohmann::json{{"n_obs", r.n_obs},
                       {"sweep_param", r.sweep_param},
                       {"sweep_value", detail::opt_json(r.sweep_value)},
                       {"strike_formula", detail::opt_json(r.strike_formula)},
                       {"strike_mc", detail::opt_json(r.strike_mc)},
                       {"std_error", detail::opt_json(r.std_error)},
                       {"paths", detail::opt_json(r.paths)},
                       {"seed", detail::opt_json(r.seed)},
                       {"rel_error_pct", detail::opt_json(r.rel_error_pct)},
                       {"error", r.error}};
}

inline void from_json(const nlohmann::json& j, ResultRow& r) {
    j.at("n_obs").get_to(r.n_obs);
    j.at("sweep_param").get_to(r.sweep_param);
    detail::opt_from(j, "sweep_value", r.sweep_value);
    detail::opt_from(j, "strike_formula", r.strike_formula);
    detail::opt_from(j, "strike_mc", r.strike_mc);
    detail::opt_from(j, "std_error", r.std_error);
    detail::opt_from(j, "paths", r.paths);
    detail::opt_from(j, "seed", r.seed);
    detail::opt_from(j, "rel_error_pct", r.rel_error_pct);
    j.at("error").get_to(r.error);
}

inline void to_json(nlohmann::json& j, const RunReport& r) {
    j = nlohmann::json{{"command", r.command},
                       {"resolved_params", r.resolved_params},
                       {"rows", r.rows},
                       {"elapsed_seconds", r.elapsed_seconds},
                       {"version", r.version}};
}

inline void from_json(const nlohmann::json& j, RunReport& r) {
    j.at("command").get_to(r.command);
    r.resolved_params = j.at("resolved_params");
    j.at("rows").get_to(r.rows);
    j.at("elapsed_seconds").get_to(r.elapsed_seconds);
    j.at("version").get_to(r.version);
}

// Fixed CSV conventions: 6 significant digits for strikes, scientific notation
// for errors, LF line endings, stable column order per command.
namespace csvfmt {

inline std::string strike(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

inline std::string error(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6e", v);
    return buf;
}

}  // namespace csvfmt

inline std::string to_csv(const RunReport& report) {
    std::string out;
    auto opt_strike = [](const std::optional<double>& v) {
        return v ? csvfmt::strike(*v) : std::string();
    };
    auto opt_error = [](const std::optional<double>& v) {
        return v ? csvfmt::error(*v) : std::string();
    };
    if (report.command == "price") {
        out += "n_obs,strike_formula\n";
        for (const auto& r : report.rows)
            out += std::to_string(r.n_obs) + "," + opt_strike(r.strike_formula) + "\n";
    } else if (report.command == "mc") {
        out += "n_obs,strike_mc,std_error,paths,seed\n";
        for (const auto& r : report.rows)
            out += std::to_string(r.n_obs) + "," + opt_strike(r.strike_mc) + "," +
                   opt_error(r.std_error) + "," +
                   (r.paths ? std::to_string(*r.paths) : std::string()) + "," +
                   (r.seed ? std::to_string(*r.seed) : std::string()) + "\n";
    } else if (report.command == "sweep") {
        out += "param,value,n_obs,strike\n";
        for (const auto& r : report.rows)
            out += r.sweep_param + "," + opt_strike(r.sweep_value) + "," +
                   std::to_string(r.n_obs) + "," + opt_strike(r.strike_formula) + "\n";
    } else if (report.command == "compare") {
        out += "n_obs,strike_formula,strike_mc,std_error,rel_error_pct\n";
        for (const auto& r : report.rows)
            out += std::to_string(r.n_obs) + "," + opt_strike(r.strike_formula) + "," +
                   opt_strike(r.strike_mc) + "," + opt_error(r.std_error) + "," +
                   opt_error(r.rel_error_pct) + "\n";
    } else {
        throw validation_error(errc::bad_config, "unknown report command: " + report.command);
    }
    return out;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!out)
        throw validation_error(errc::bad_config, "cannot write file: " + path);
    out << content;
}

}  // namespace hestoncir
