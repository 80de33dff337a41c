#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ecm/cointegration.hpp"
#include "ecm/critical_values.hpp"
#include "ecm/dols.hpp"
#include "ecm/series.hpp"
#include "ecm/unit_root.hpp"

namespace ecm {

inline constexpr int kReportSchemaVersion = 1;
const char* artifact_version() noexcept;

// ---------------------------------------------------------------- ingestion

struct IngestResult {
    std::vector<Series> series;  ///< one per requested column, file order when none requested
    int first_year = 0;
    int last_year = 0;
    std::string checksum;  ///< FNV-1a 64 of the file bytes, hex
};

/// Reads `year,<name>...` CSV. `columns` restricts which columns are parsed
/// (and validated); empty means all.
IngestResult ingest_csv(const std::filesystem::path& path, const std::vector<std::string>& columns = {});

std::string file_checksum(const std::filesystem::path& path);

// ------------------------------------------------------------------- config

struct VariableConfig {
    std::string column;
    std::string name;
    bool log = true;
    bool response = false;
    std::string label;  ///< elasticity label, defaults to name
};

struct UnitRootTestConfig {
    std::string test;  ///< adf, pp, zivot_andrews, perron, lumsdaine_papell, clemente
    std::string series;
    Deterministic deterministic = Deterministic::constant;
    LagSelection lags;
    std::optional<int> bandwidth;
    std::optional<BreakKind> break_kind;
    BreakStyle style = BreakStyle::innovational_outlier;
    ClementeVariant variant = ClementeVariant::innovational;
    double trim = 0.15;
    std::optional<int> year;  ///< perron: known break, otherwise searched
    bool only_if_unresolved = true;  ///< two-break tests
};

struct JohansenConfig {
    std::string label;
    std::vector<int> breaks;
    bool trend_interaction = true;
    bool include_trend = false;
    std::optional<int> lags;  ///< fixed order instead of the criterion's choice
};

struct DolsModelConfig {
    std::string name;
    std::vector<int> breaks;
    bool constant = true;
    bool trend = true;
    bool trend_interaction = true;
    int leads = 0;
    int lags = 1;
    bool product_form = false;
};

struct AnalysisConfig {
    std::filesystem::path data_path;      ///< resolved
    std::string data_path_text;           ///< as written in the config
    std::vector<VariableConfig> variables;
    std::uint64_t seed = 0;

    std::filesystem::path cv_cache_dir;   ///< resolved; empty disables
    bool monte_carlo_fallback = true;
    std::size_t cv_replications = 2000;

    Confidence unit_root_level = Confidence::c95;
    std::vector<UnitRootTestConfig> unit_root_tests;

    Confidence cointegration_level = Confidence::c90;
    int var_max_lag = 3;
    std::string lag_criterion = "sic";
    std::vector<JohansenConfig> johansen;

    double dols_level = 0.95;
    std::vector<DolsModelConfig> dols_models;

    std::vector<std::string> formats{"text", "json"};
    std::filesystem::path output_dir;  ///< resolved

    bool run_unit_root = true;
    bool run_cointegration = true;
    bool run_dols = true;
};

/// Parses a JSON config; relative paths resolve against `base_dir`.
AnalysisConfig config_from_json_text(const std::string& text, const std::filesystem::path& base_dir);
AnalysisConfig load_config(const std::filesystem::path& path);

// ------------------------------------------------------------------- report

struct SeriesSummary {
    std::string name;
    std::string column;
    bool log = false;
    int first_year = 0;
    int last_year = 0;
    std::size_t nobs = 0;

    bool operator==(const SeriesSummary&) const = default;
};

struct StageError {
    std::string stage;
    std::string item;
    std::string kind;
    std::string message;

    bool operator==(const StageError&) const = default;
};

struct UnitRootRow {
    UnitRootOutcome outcome;
    std::vector<std::string> warnings;

    bool operator==(const UnitRootRow&) const = default;
};

struct BreakSummaryRow {
    std::string series;
    std::string test;
    std::vector<int> years;
    std::string decision;

    bool operator==(const BreakSummaryRow&) const = default;
};

struct JohansenReport {
    std::string label;
    std::vector<int> break_years;
    std::string lag_criterion;
    VarLagSelection lag_selection;
    JohansenOutcome outcome;
    std::vector<std::string> warnings;

    bool operator==(const JohansenReport&) const = default;
};

struct DolsReport {
    std::string name;
    std::vector<int> break_years;
    int leads = 0;
    int lags = 0;
    double level = 0.95;
    DolsFit fit;
    std::vector<Elasticity> elasticities;

    bool operator==(const DolsReport&) const = default;
};

struct ReportProvenance {
    std::string data_path;
    std::string data_checksum;
    std::uint64_t seed = 0;
    std::string version;

    bool operator==(const ReportProvenance&) const = default;
};

struct AnalysisReport {
    int schema_version = kReportSchemaVersion;
    ReportProvenance provenance;
    std::vector<SeriesSummary> series;
    std::vector<UnitRootRow> unit_root;
    std::vector<BreakSummaryRow> breaks;
    std::vector<JohansenReport> johansen;
    std::vector<DolsReport> dols;
    std::vector<StageError> errors;
    std::vector<std::string> notes;

    bool operator==(const AnalysisReport&) const = default;
};

/// Ingest, unit-root battery, VAR lag selection + Johansen, DOLS. Failures
/// inside a stage are recorded per item; config problems throw ConfigError.
AnalysisReport run_analysis(const AnalysisConfig& config);

}  // namespace ecm
