#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ecm/parallel.hpp"
#include "ecm/series.hpp"

namespace ecm {

/// Confidence level at which a critical value applies (0.90 / 0.95 / 0.99).
enum class Confidence { c90, c95, c99 };

double confidence_value(Confidence c) noexcept;
Confidence parse_confidence(double level);

/// Quantiles of a statistic's null distribution keyed by confidence level.
/// For the left-tail unit-root tests the 0.95 entry is the 5% quantile; for
/// the right-tail Johansen statistics it is the 95% quantile.
struct CriticalValues {
    std::optional<double> c90;
    std::optional<double> c95;
    std::optional<double> c99;
    std::string provenance;

    std::optional<double> at(Confidence c) const noexcept;
    void set(Confidence c, double v) noexcept;
    bool empty() const noexcept { return !c90 && !c95 && !c99; }

    bool operator==(const CriticalValues&) const = default;
};

enum class Decision { reject_unit_root, accept_unit_root, inconclusive };
const char* to_string(Decision d) noexcept;

/// Left-tail rule: reject iff statistic < cv(level); inconclusive without a cv.
Decision decide_left_tail(double statistic, const CriticalValues& cv, Confidence level);

struct DecisionRule {
    CriticalValues critical_values;
    Confidence level = Confidence::c95;
};

enum class LagMethod { fixed, aic, sic, hq, general_to_specific };
const char* to_string(LagMethod m) noexcept;
LagMethod parse_lag_method(const std::string& text);

struct LagSelection {
    LagMethod method = LagMethod::aic;
    int max_lag = 4;            ///< for `fixed`, the lag order itself
    double gts_level = 0.10;    ///< two-sided level for general-to-specific

    static LagSelection fixed(int k) { return {LagMethod::fixed, k, 0.10}; }
};

enum class BreakStyle { none, additive_outlier, innovational_outlier };
const char* to_string(BreakStyle s) noexcept;

struct UnitRootModelSpec {
    Deterministic deterministic = Deterministic::constant;
    BreakStyle style = BreakStyle::none;
    std::optional<BreakKind> break_kind;
    LagSelection lags;
};

/// Rejects combinations outside AO models 1-4 / IO models 1-3.
void validate_break_model(const UnitRootModelSpec& spec);

struct DummyEstimate {
    std::string name;
    double coefficient = 0.0;
    double std_error = 0.0;
    double t_stat = 0.0;
    bool significant = false;  ///< two-sided 5% Student-t test

    bool operator==(const DummyEstimate&) const = default;
};

struct UnitRootOutcome {
    std::string test;
    std::string series;
    std::string spec_key;
    double statistic = 0.0;        ///< t-ratio on the unit-root coefficient
    double alpha_minus_one = 0.0;  ///< estimated alpha - 1 (rho - 1)
    int lags = 0;
    std::size_t nobs = 0;
    std::vector<BreakDate> breaks;
    std::optional<int> bandwidth;
    CriticalValues critical_values;
    Confidence level = Confidence::c95;
    Decision decision = Decision::inconclusive;
    std::vector<DummyEstimate> dummies;

    bool operator==(const UnitRootOutcome&) const = default;
};

/// Re-applies the decision rule (used after critical values are attached).
void apply_decision(UnitRootOutcome& outcome, const DecisionRule& rule);

std::string adf_spec_key(Deterministic det);
std::string perron_spec_key(const UnitRootModelSpec& spec);
std::string zivot_andrews_spec_key(const UnitRootModelSpec& spec);
std::string lumsdaine_papell_spec_key();
enum class ClementeVariant { innovational, additive };
std::string clemente_spec_key(ClementeVariant v);

UnitRootOutcome adf(const Series& s, Deterministic det, LagSelection lags, const DecisionRule& rule = {});

/// Phillips-Perron Z_t. Without a bandwidth the Newey-West automatic
/// (data-dependent) Bartlett bandwidth is used.
UnitRootOutcome phillips_perron(const Series& s, Deterministic det, std::optional<int> bandwidth = std::nullopt,
                                const DecisionRule& rule = {});

UnitRootOutcome perron_known_break(const Series& s, const UnitRootModelSpec& spec, const BreakDate& brk,
                                   const DecisionRule& rule = {});

/// Admissible 1-based break indices [ceil(trim T), floor((1 - trim) T)],
/// clipped to [2, T - 2].
struct BreakRange {
    std::size_t first = 0;
    std::size_t last = 0;
};
BreakRange break_candidates(std::size_t length, double trim);

UnitRootOutcome zivot_andrews(const Series& s, const UnitRootModelSpec& spec, double trim,
                              const DecisionRule& rule = {}, Execution exec = Execution::parallel);
/// Statistic of the Zivot-Andrews regression at one break (1-based T_b);
/// nullopt when the candidate is degenerate.
std::optional<UnitRootOutcome> zivot_andrews_at(const Series& s, const UnitRootModelSpec& spec, std::size_t tb);

/// Perron AO/IO regression at every admissible break; the minimum t-ratio wins.
UnitRootOutcome perron_endogenous(const Series& s, const UnitRootModelSpec& spec, double trim,
                                  const DecisionRule& rule = {}, Execution exec = Execution::parallel);
std::optional<UnitRootOutcome> perron_at(const Series& s, const UnitRootModelSpec& spec, std::size_t tb);

UnitRootOutcome lumsdaine_papell(const Series& s, double trim, LagSelection lags, const DecisionRule& rule = {},
                                 Execution exec = Execution::parallel);
std::optional<UnitRootOutcome> lumsdaine_papell_at(const Series& s, std::size_t tb1, std::size_t tb2,
                                                   LagSelection lags);

UnitRootOutcome clemente(const Series& s, ClementeVariant variant, double trim, LagSelection lags,
                         const DecisionRule& rule = {}, Execution exec = Execution::parallel);
std::optional<UnitRootOutcome> clemente_at(const Series& s, ClementeVariant variant, std::size_t tb1,
                                           std::size_t tb2, LagSelection lags);

}  // namespace ecm
