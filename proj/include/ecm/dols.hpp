#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ecm/regression.hpp"
#include "ecm/series.hpp"

namespace ecm {

struct DolsBreak {
    BreakDate date;
    bool intercept = true;          ///< B_i
    bool trend_interaction = true;  ///< T(B_i)
};

struct DolsSpec {
    Series response;
    std::vector<Series> regressors;
    bool constant = true;
    bool trend = true;
    std::vector<DolsBreak> breaks;
    int leads = 0;  ///< p: Delta x_{t+1..t+p}
    int lags = 1;   ///< q: Delta x_{t..t-q}
    bool product_form = false;  ///< T(B) = t 1[t > T_b] instead of the ramp
    std::optional<int> bandwidth;  ///< default: fixed Newey-West rule
    bool force_iid = false;        ///< omega = sigma^2, i.e. classical SEs
};

enum class CoefficientRole { long_run, deterministic, nuisance };
const char* to_string(CoefficientRole r) noexcept;

struct DolsCoefficient {
    std::string name;
    CoefficientRole role = CoefficientRole::long_run;
    double estimate = 0.0;
    double classical_se = 0.0;
    double hac_se = 0.0;
    double t_stat = 0.0;   ///< estimate / hac_se
    double p_value = 1.0;  ///< two-sided, Student t with nobs - k df

    bool operator==(const DolsCoefficient&) const = default;
};

struct DolsFit {
    std::vector<DolsCoefficient> coefficients;  ///< design order
    double r2 = 0.0;
    double r2_adjusted = 0.0;
    double regression_se = 0.0;
    double residual_variance = 0.0;  ///< sigma^2 = RSS / nobs
    LongRunVariance long_run_variance;
    JarqueBera jarque_bera;
    std::size_t nobs = 0;
    std::size_t k = 0;
    int first_year = 0;
    int last_year = 0;

    const DolsCoefficient& at(const std::string& name) const;
    std::vector<DolsCoefficient> long_run() const;

    bool operator==(const DolsFit&) const = default;
};

/// Levels of the regressors, deterministic terms and break regressors, plus
/// Delta x at offsets -leads..lags, fitted by OLS on rows lags+1 .. T-1-leads
/// (0-based). Standard errors are the classical ones scaled by sqrt(omega / sigma^2).
DolsFit dols_fit(const DolsSpec& spec);

struct Elasticity {
    std::string regressor;
    std::string label;
    double value = 0.0;
    double std_error = 0.0;
    bool significant = false;
    std::string classification;  ///< elastic / inelastic / unitary / none
    std::string direction;       ///< direct / inverse

    bool operator==(const Elasticity&) const = default;
};

/// `labels` maps regressor names to display names (e.g. lnY -> income).
std::vector<Elasticity> elasticity_report(const DolsFit& fit, double level = 0.95,
                                          const std::map<std::string, std::string>& labels = {});

}  // namespace ecm
