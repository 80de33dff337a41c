#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ecm/series.hpp"
#include "ecm/unit_root.hpp"

namespace ecm {

/// Endogenous block for a VAR in levels with unrestricted deterministic and
/// exogenous regressors. All series must cover the same years.
struct VarSpec {
    std::vector<Series> endogenous;
    int lag_order = 1;  ///< p: the VECM carries p - 1 lagged differences
    Deterministic deterministic = Deterministic::constant;
    std::vector<RegressorColumn> exogenous;  ///< full-sample columns
};

struct VarLagRow {
    int lag = 0;
    double log_det = 0.0;
    double aic = 0.0;
    double sic = 0.0;
    double hq = 0.0;

    bool operator==(const VarLagRow&) const = default;
};

struct VarLagSelection {
    std::vector<VarLagRow> rows;
    int aic = 0;
    int sic = 0;
    int hq = 0;
    std::size_t nobs = 0;  ///< common estimation sample

    bool operator==(const VarLagSelection&) const = default;
};

/// Fits VAR(1..max_lag) equation by equation on the sample implied by max_lag.
VarLagSelection var_lag_select(const VarSpec& spec_without_lag, int max_lag);

enum class JohansenStatistic { trace, max_eigen };

struct JohansenOutcome {
    std::vector<double> eigenvalues;  ///< descending, in [0, 1)
    std::vector<double> trace;        ///< trace[r] tests rank <= r
    std::vector<double> max_eigen;    ///< max_eigen[r] tests rank r vs r + 1
    std::vector<CriticalValues> trace_cv;
    std::vector<CriticalValues> max_cv;
    Confidence level = Confidence::c90;
    std::optional<int> decided_rank;
    std::vector<std::string> trace_labels;  ///< Rejection / Acceptance / -----
    std::size_t nobs = 0;
    int lag_order = 1;
    std::vector<std::string> variables;
    std::vector<std::string> exogenous;

    bool operator==(const JohansenOutcome&) const = default;
};

JohansenOutcome johansen_test(const VarSpec& spec);

/// Sequential rank choice: the first r whose null is not rejected, or n when
/// every hypothesis is rejected. Throws MissingCriticalValues if a needed
/// critical value is absent.
int decide_rank(const JohansenOutcome& outcome, Confidence level,
                JohansenStatistic statistic = JohansenStatistic::trace);

/// Attaches critical values and fills decided_rank / labels from the trace
/// statistic when its critical values cover the level.
void attach_critical_values(JohansenOutcome& outcome, std::vector<CriticalValues> trace_cv,
                            std::vector<CriticalValues> max_cv, Confidence level);

/// B_i (shift) and optionally T(B_i) columns for each break; T(B) is the ramp
/// (t - T_b) 1[t > T_b] unless `product_form` asks for t 1[t > T_b].
std::vector<RegressorColumn> break_exogenous(std::size_t length, int start_year, const std::vector<BreakDate>& breaks,
                                             bool trend_interaction, bool include_trend, bool product_form = false);

}  // namespace ecm
