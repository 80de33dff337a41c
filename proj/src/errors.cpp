#include "ecm/errors.hpp"

namespace ecm {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::non_positive_value: return "NonPositiveValue";
        case ErrorKind::series_too_short: return "SeriesTooShort";
        case ErrorKind::break_out_of_range: return "BreakOutOfRange";
        case ErrorKind::rank_deficient: return "RankDeficient";
        case ErrorKind::dimension_mismatch: return "DimensionMismatch";
        case ErrorKind::invalid_model_combination: return "InvalidModelCombination";
        case ErrorKind::trim_too_large: return "TrimTooLarge";
        case ErrorKind::sample_too_small: return "SampleTooSmall";
        case ErrorKind::missing_critical_values: return "MissingCriticalValues";
        case ErrorKind::not_tabulated: return "NotTabulated";
        case ErrorKind::infeasible_spec: return "InfeasibleSpec";
        case ErrorKind::io_failure: return "IoFailure";
        case ErrorKind::schema_mismatch: return "SchemaMismatch";
        case ErrorKind::schema_error: return "SchemaError";
        case ErrorKind::gap_in_years: return "GapInYears";
        case ErrorKind::config_error: return "ConfigError";
    }
    return "Unknown";
}

int exit_code_for(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::config_error:
        case ErrorKind::invalid_model_combination:
        case ErrorKind::trim_too_large:
        case ErrorKind::infeasible_spec:
            return 2;
        case ErrorKind::non_positive_value:
        case ErrorKind::series_too_short:
        case ErrorKind::break_out_of_range:
        case ErrorKind::io_failure:
        case ErrorKind::schema_mismatch:
        case ErrorKind::schema_error:
        case ErrorKind::gap_in_years:
        case ErrorKind::sample_too_small:
        case ErrorKind::dimension_mismatch:
            return 3;
        case ErrorKind::rank_deficient:
        case ErrorKind::missing_critical_values:
        case ErrorKind::not_tabulated:
            return 4;
    }
    return 4;
}

}  // namespace ecm
