#pragma once

#include <stdexcept>
#include <string>

namespace hestoncir {

enum class errc {
    negative_parameter,
    feller_violation_variance,
    feller_violation_rate,
    correlation_out_of_range,
    correlation_not_psd,
    cholesky_degenerate,
    bad_contract,
    bad_time_argument,
    moment_fit_undefined,
    integration_failure,
    overflow,
    bad_config,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::negative_parameter:         return "negative_parameter";
        case errc::feller_violation_variance:  return "feller_violation_variance";
        case errc::feller_violation_rate:      return "feller_violation_rate";
        case errc::correlation_out_of_range:   return "correlation_out_of_range";
        case errc::correlation_not_psd:        return "correlation_not_psd";
        case errc::cholesky_degenerate:        return "cholesky_degenerate";
        case errc::bad_contract:               return "bad_contract";
        case errc::bad_time_argument:          return "bad_time_argument";
        case errc::moment_fit_undefined:       return "moment_fit_undefined";
        case errc::integration_failure:        return "integration_failure";
        case errc::overflow:                   return "overflow";
        case errc::bad_config:                 return "bad_config";
    }
    return "unknown";
}

// Input rejected before any computation ran (bad parameters, contract, config).
class validation_error : public std::invalid_argument {
public:
    validation_error(errc code, const std::string& what)
        : std::invalid_argument(std::string(errc_name(code)) + ": " + what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

// Computation started but could not finish (singularity, overflow, diverging ODE state).
class numeric_error : public std::runtime_error {
public:
    numeric_error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

}  // namespace hestoncir
