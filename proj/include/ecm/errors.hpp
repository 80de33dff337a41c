#pragma once

#include <stdexcept>
#include <string>

namespace ecm {

/// Failure categories shared by every module. The CLI maps them onto exit codes.
enum class ErrorKind {
    non_positive_value,
    series_too_short,
    break_out_of_range,
    rank_deficient,
    dimension_mismatch,
    invalid_model_combination,
    trim_too_large,
    sample_too_small,
    missing_critical_values,
    not_tabulated,
    infeasible_spec,
    io_failure,
    schema_mismatch,
    schema_error,
    gap_in_years,
    config_error,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

/// Config problems exit with 2, data problems with 3, numerical failures with 4.
int exit_code_for(ErrorKind kind) noexcept;

}  // namespace ecm
