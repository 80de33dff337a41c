#include "ecm/unit_root.hpp"

#include <Eigen/Dense>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <functional>
#include <memory>
#include <span>

#include "ecm/errors.hpp"
#include "ecm/regression.hpp"

namespace ecm {

double confidence_value(Confidence c) noexcept {
    switch (c) {
        case Confidence::c90: return 0.90;
        case Confidence::c95: return 0.95;
        case Confidence::c99: return 0.99;
    }
    return 0.95;
}

Confidence parse_confidence(double level) {
    if (std::abs(level - 0.90) < 1e-9) return Confidence::c90;
    if (std::abs(level - 0.95) < 1e-9) return Confidence::c95;
    if (std::abs(level - 0.99) < 1e-9) return Confidence::c99;
    fail(ErrorKind::config_error, "confidence level must be 0.90, 0.95 or 0.99");
}

std::optional<double> CriticalValues::at(Confidence c) const noexcept {
    switch (c) {
        case Confidence::c90: return c90;
        case Confidence::c95: return c95;
        case Confidence::c99: return c99;
    }
    return std::nullopt;
}

void CriticalValues::set(Confidence c, double v) noexcept {
    switch (c) {
        case Confidence::c90: c90 = v; break;
        case Confidence::c95: c95 = v; break;
        case Confidence::c99: c99 = v; break;
    }
}

const char* to_string(Decision d) noexcept {
    switch (d) {
        case Decision::reject_unit_root: return "reject_unit_root";
        case Decision::accept_unit_root: return "accept_unit_root";
        case Decision::inconclusive: return "inconclusive";
    }
    return "?";
}

Decision decide_left_tail(double statistic, const CriticalValues& cv, Confidence level) {
    const auto value = cv.at(level);
    if (!value) return Decision::inconclusive;
    return statistic < *value ? Decision::reject_unit_root : Decision::accept_unit_root;
}

void apply_decision(UnitRootOutcome& outcome, const DecisionRule& rule) {
    outcome.critical_values = rule.critical_values;
    outcome.level = rule.level;
    outcome.decision = decide_left_tail(outcome.statistic, rule.critical_values, rule.level);
}

const char* to_string(LagMethod m) noexcept {
    switch (m) {
        case LagMethod::fixed: return "fixed";
        case LagMethod::aic: return "aic";
        case LagMethod::sic: return "sic";
        case LagMethod::hq: return "hq";
        case LagMethod::general_to_specific: return "general_to_specific";
    }
    return "?";
}

LagMethod parse_lag_method(const std::string& text) {
    if (text == "fixed") return LagMethod::fixed;
    if (text == "aic") return LagMethod::aic;
    if (text == "sic") return LagMethod::sic;
    if (text == "hq") return LagMethod::hq;
    if (text == "general_to_specific" || text == "gts") return LagMethod::general_to_specific;
    fail(ErrorKind::config_error, "unknown lag selection '" + text + "'");
}

const char* to_string(BreakStyle s) noexcept {
    switch (s) {
        case BreakStyle::none: return "none";
        case BreakStyle::additive_outlier: return "ao";
        case BreakStyle::innovational_outlier: return "io";
    }
    return "?";
}

void validate_break_model(const UnitRootModelSpec& spec) {
    if (spec.style == BreakStyle::none) {
        if (spec.break_kind) fail(ErrorKind::invalid_model_combination, "break form given without a break style");
        return;
    }
    if (!spec.break_kind) fail(ErrorKind::invalid_model_combination, "break style given without a break form");
    const BreakKind kind = *spec.break_kind;
    const Deterministic det = spec.deterministic;
    if (det == Deterministic::none) {
        fail(ErrorKind::invalid_model_combination, "break models need at least a constant");
    }
    if (det == Deterministic::constant && kind != BreakKind::intercept) {
        fail(ErrorKind::invalid_model_combination, "a non-trending model can only break in the intercept");
    }
    if (spec.style == BreakStyle::innovational_outlier && kind == BreakKind::trend) {
        fail(ErrorKind::invalid_model_combination,
             "innovational-outlier models have no trend-only break; use additive outlier or break in both");
    }
}

namespace {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

/// Deterministic/dummy columns on the full time axis, possibly dependent on the lag order.
struct Extras {
    std::vector<std::string> names;
    std::function<Mat(int)> columns;  // returns T x names.size()
    bool lag_dependent = false;
};

struct Augmented {
    Vec response;
    Mat x;
    Eigen::Index unit_root_col = 0;
};

/// Delta y_t on [extras_t, y_{t-1}, Delta y_{t-1..t-k}] for 0-based t in [start, T).
Augmented build_augmented(std::span<const double> y, const Mat& extras, int k, std::size_t start) {
    const std::size_t length = y.size();
    const auto n = static_cast<Eigen::Index>(length - start);
    const Eigen::Index m = extras.cols();
    Augmented a;
    a.response.resize(n);
    a.x.resize(n, m + 1 + k);
    a.unit_root_col = m;
    for (Eigen::Index r = 0; r < n; ++r) {
        const std::size_t t = start + static_cast<std::size_t>(r);
        a.response[r] = y[t] - y[t - 1];
        for (Eigen::Index j = 0; j < m; ++j) a.x(r, j) = extras(static_cast<Eigen::Index>(t), j);
        a.x(r, m) = y[t - 1];
        for (int i = 1; i <= k; ++i) a.x(r, m + i) = y[t - i] - y[t - i - 1];
    }
    return a;
}

std::vector<std::string> augmented_names(const std::vector<std::string>& extras, int k) {
    std::vector<std::string> names = extras;
    names.push_back("y(-1)");
    for (int i = 1; i <= k; ++i) names.push_back("D(y(-" + std::to_string(i) + "))");
    return names;
}

double gts_critical(double level) {
    boost::math::normal z;
    return boost::math::quantile(boost::math::complement(z, level / 2.0));
}

int select_lags(std::span<const double> y, const Extras& extras, const LagSelection& sel) {
    if (sel.max_lag < 0) fail(ErrorKind::config_error, "max_lag must be non-negative");
    if (sel.method == LagMethod::fixed) return sel.max_lag;
    const int kmax = sel.max_lag;
    const auto start = static_cast<std::size_t>(kmax + 1);
    if (sel.method == LagMethod::general_to_specific) {
        const double crit = gts_critical(sel.gts_level);
        for (int k = kmax; k >= 1; --k) {
            const Augmented a = build_augmented(y, extras.columns(k), k, start);
            const CoefficientTest ct = test_coefficient(a.response, a.x, a.x.cols() - 1);
            if (std::abs(ct.t_stat) >= crit) return k;
        }
        return 0;
    }
    int best_k = 0;
    double best = 0.0;
    for (int k = 0; k <= kmax; ++k) {
        const Augmented a = build_augmented(y, extras.columns(k), k, start);
        const CoefficientTest ct = test_coefficient(a.response, a.x, a.unit_root_col);
        const InformationCriteria ic = info_criteria(ct.rss, ct.nobs, ct.k);
        const double value = sel.method == LagMethod::aic ? ic.aic : sel.method == LagMethod::sic ? ic.sic : ic.hq;
        if (k == 0 || value < best) {
            best = value;
            best_k = k;
        }
    }
    return best_k;
}

struct Evaluation {
    double statistic = 0.0;
    double coefficient = 0.0;
    int lags = 0;
    std::size_t nobs = 0;
};

/// Lag selection on the common sample, then the final fit on the maximal sample for the chosen k.
Evaluation evaluate(std::span<const double> y, const Extras& extras, const LagSelection& sel) {
    const int k = select_lags(y, extras, sel);
    const Augmented a = build_augmented(y, extras.columns(k), k, static_cast<std::size_t>(k + 1));
    const CoefficientTest ct = test_coefficient(a.response, a.x, a.unit_root_col);
    return {ct.t_stat, ct.coefficient, k, ct.nobs};
}

std::optional<Evaluation> try_evaluate(std::span<const double> y, const Extras& extras, const LagSelection& sel) {
    try {
        return evaluate(y, extras, sel);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::rank_deficient || e.kind() == ErrorKind::sample_too_small) return std::nullopt;
        throw;
    }
}

OlsFit final_fit(std::span<const double> y, const Extras& extras, int k) {
    const Augmented a = build_augmented(y, extras.columns(k), k, static_cast<std::size_t>(k + 1));
    return ols(a.response, a.x, augmented_names(extras.names, k));
}

std::vector<DummyEstimate> report_dummies(const OlsFit& fit, const std::vector<std::pair<std::string, std::string>>& wanted) {
    std::vector<DummyEstimate> out;
    const double dof = static_cast<double>(fit.nobs - fit.k);
    boost::math::students_t dist(dof);
    const double crit = boost::math::quantile(boost::math::complement(dist, 0.025));
    for (const auto& [column, label] : wanted) {
        const std::size_t j = fit.index_of(column);
        DummyEstimate d;
        d.name = label;
        d.coefficient = fit.coefficients[static_cast<Eigen::Index>(j)];
        d.std_error = fit.standard_errors[static_cast<Eigen::Index>(j)];
        d.t_stat = fit.t_stats[static_cast<Eigen::Index>(j)];
        d.significant = std::abs(d.t_stat) > crit;
        out.push_back(d);
    }
    return out;
}

Mat columns_to_matrix(const std::vector<std::vector<double>>& cols, std::size_t length) {
    Mat m(static_cast<Eigen::Index>(length), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        for (std::size_t i = 0; i < length; ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = cols[j][i];
    }
    return m;
}

void deterministic_columns(Deterministic det, std::size_t length, std::vector<std::vector<double>>& cols,
                           std::vector<std::string>& names) {
    if (det == Deterministic::none) return;
    cols.emplace_back(length, 1.0);
    names.emplace_back("C");
    if (det == Deterministic::constant_trend) {
        cols.push_back(trend_column(length));
        names.emplace_back("TREND");
    }
}

Extras fixed_extras(std::vector<std::vector<double>> cols, std::vector<std::string> names, std::size_t length) {
    Extras e;
    e.names = std::move(names);
    auto matrix = std::make_shared<Mat>(columns_to_matrix(cols, length));
    e.columns = [matrix](int) { return *matrix; };
    return e;
}

void check_length(const Series& s, std::size_t needed, const std::string& test) {
    if (s.size() < needed) {
        fail(ErrorKind::series_too_short, test + " on " + s.name() + " needs at least " + std::to_string(needed) +
                                              " observations, got " + std::to_string(s.size()));
    }
}

int effective_max_lag(const LagSelection& sel) { return sel.max_lag; }

UnitRootOutcome make_outcome(const std::string& test, const Series& s, const std::string& key, const Evaluation& ev) {
    UnitRootOutcome o;
    o.test = test;
    o.series = s.name();
    o.spec_key = key;
    o.statistic = ev.statistic;
    o.alpha_minus_one = ev.coefficient;
    o.lags = ev.lags;
    o.nobs = ev.nobs;
    return o;
}

// Single-break IO regressors: deterministics, DU/DT per the break kind, optional pulse.
Extras io_extras(const Series& s, Deterministic det, BreakKind kind, std::size_t tb, bool pulse) {
    const std::size_t length = s.size();
    std::vector<std::vector<double>> cols;
    std::vector<std::string> names;
    deterministic_columns(det, length, cols, names);
    if (kind != BreakKind::trend) {
        cols.push_back(shift_dummy(length, tb));
        names.emplace_back("DU");
    }
    if (kind != BreakKind::intercept) {
        cols.push_back(trend_dummy(length, tb));
        names.emplace_back("DT");
    }
    if (pulse) {
        cols.push_back(pulse_dummy(length, tb));
        names.emplace_back("DTB");
    }
    return fixed_extras(std::move(cols), std::move(names), length);
}

std::vector<std::pair<std::string, std::string>> single_break_report(BreakKind kind) {
    std::vector<std::pair<std::string, std::string>> w;
    if (kind != BreakKind::trend) w.emplace_back("DU", "DU");
    if (kind != BreakKind::intercept) w.emplace_back("DT", "DT");
    return w;
}

/// Pulse dummies DTB_{t-j}, j = 0..k, for each break: the AO second stage.
Extras ao_pulse_extras(std::size_t length, std::vector<std::size_t> tbs) {
    Extras e;
    for (std::size_t b = 0; b < tbs.size(); ++b) e.names.push_back("DTB" + std::to_string(b + 1));
    e.lag_dependent = true;
    e.columns = [length, tbs](int k) {
        Mat m = Mat::Zero(static_cast<Eigen::Index>(length), static_cast<Eigen::Index>(tbs.size()) * (k + 1));
        Eigen::Index c = 0;
        for (std::size_t tb : tbs) {
            for (int j = 0; j <= k; ++j, ++c) {
                const std::size_t row = tb + static_cast<std::size_t>(j);
                if (row < length) m(static_cast<Eigen::Index>(row), c) = 1.0;
            }
        }
        return m;
    };
    return e;
}

}  // namespace

std::string adf_spec_key(Deterministic det) { return to_string(det); }

std::string perron_spec_key(const UnitRootModelSpec& spec) {
    return std::string(to_string(spec.style)) + ":" + to_string(spec.deterministic) + ":" +
           (spec.break_kind ? to_string(*spec.break_kind) : "none");
}

std::string zivot_andrews_spec_key(const UnitRootModelSpec& spec) {
    return std::string("za:") + to_string(spec.deterministic) + ":" +
           (spec.break_kind ? to_string(*spec.break_kind) : "none");
}

std::string lumsdaine_papell_spec_key() { return "lp:constant_trend:both"; }

std::string clemente_spec_key(ClementeVariant v) {
    return v == ClementeVariant::innovational ? "io:mean_shift" : "ao:mean_shift";
}

UnitRootOutcome adf(const Series& s, Deterministic det, LagSelection lags, const DecisionRule& rule) {
    check_length(s, static_cast<std::size_t>(effective_max_lag(lags)) + 10, "ADF");
    std::vector<std::vector<double>> cols;
    std::vector<std::string> names;
    deterministic_columns(det, s.size(), cols, names);
    const Extras extras = fixed_extras(std::move(cols), std::move(names), s.size());
    const Evaluation ev = evaluate(s.values(), extras, lags);
    UnitRootOutcome o = make_outcome("adf", s, adf_spec_key(det), ev);
    apply_decision(o, rule);
    return o;
}

UnitRootOutcome phillips_perron(const Series& s, Deterministic det, std::optional<int> bandwidth,
                                const DecisionRule& rule) {
    check_length(s, 10, "Phillips-Perron");
    std::vector<std::vector<double>> cols;
    std::vector<std::string> names;
    deterministic_columns(det, s.size(), cols, names);
    const Extras extras = fixed_extras(std::move(cols), names, s.size());
    const OlsFit fit = final_fit(s.values(), extras, 0);
    const auto col = static_cast<Eigen::Index>(names.size());

    const std::span<const double> e = as_span(fit.residuals);
    const int m = bandwidth ? *bandwidth : newey_west_auto_bandwidth(e);
    const double gamma0 = newey_west_lrv(e, 0).value;
    const double f0 = newey_west_lrv(e, m).value;
    const double t_alpha = fit.t_stats[col];
    const double se_alpha = fit.standard_errors[col];
    const double n = static_cast<double>(fit.nobs);
    const double z_t = t_alpha * std::sqrt(gamma0 / f0) -
                       n * (f0 - gamma0) * se_alpha / (2.0 * std::sqrt(f0) * std::sqrt(fit.sigma2));

    UnitRootOutcome o;
    o.test = "pp";
    o.series = s.name();
    o.spec_key = adf_spec_key(det);
    o.statistic = z_t;
    o.alpha_minus_one = fit.coefficients[col];
    o.lags = 0;
    o.nobs = fit.nobs;
    o.bandwidth = m;
    apply_decision(o, rule);
    return o;
}

UnitRootOutcome perron_known_break(const Series& s, const UnitRootModelSpec& spec, const BreakDate& brk,
                                   const DecisionRule& rule) {
    validate_break_model(spec);
    if (spec.style == BreakStyle::none) fail(ErrorKind::invalid_model_combination, "known-break test needs AO or IO");
    const BreakDate checked = make_break(s, brk.year);
    const std::size_t tb = break_index(checked, s.start_year());
    const std::size_t length = s.size();
    check_length(s, static_cast<std::size_t>(effective_max_lag(spec.lags)) + 10, "Perron test");
    const BreakKind kind = *spec.break_kind;

    UnitRootOutcome o;
    if (spec.style == BreakStyle::innovational_outlier) {
        const Extras extras = io_extras(s, spec.deterministic, kind, tb, true);
        const Evaluation ev = evaluate(s.values(), extras, spec.lags);
        o = make_outcome("perron_io", s, perron_spec_key(spec), ev);
        o.dummies = report_dummies(final_fit(s.values(), extras, ev.lags), single_break_report(kind));
    } else {
        std::vector<std::vector<double>> cols;
        std::vector<std::string> names;
        deterministic_columns(spec.deterministic, length, cols, names);
        if (kind != BreakKind::trend) {
            cols.push_back(shift_dummy(length, tb));
            names.emplace_back("DU");
        }
        if (kind != BreakKind::intercept) {
            cols.push_back(trend_dummy(length, tb));
            names.emplace_back("DT");
        }
        const Vec y = Eigen::Map<const Vec>(s.values().data(), static_cast<Eigen::Index>(length));
        const OlsFit stage1 = ols(y, columns_to_matrix(cols, length), names);
        const std::vector<double> detrended(stage1.residuals.data(), stage1.residuals.data() + length);

        Extras extras;
        if (kind != BreakKind::trend) {
            extras = ao_pulse_extras(length, {tb});
        } else {
            extras.columns = [length](int) { return Mat(static_cast<Eigen::Index>(length), 0); };
        }
        const Evaluation ev = evaluate(detrended, extras, spec.lags);
        o = make_outcome("perron_ao", s, perron_spec_key(spec), ev);
        o.dummies = report_dummies(stage1, single_break_report(kind));
    }
    o.breaks = {checked};
    apply_decision(o, rule);
    return o;
}

BreakRange break_candidates(std::size_t length, double trim) {
    if (!(trim > 0.0) || trim >= 0.5) fail(ErrorKind::trim_too_large, "trim must lie in (0, 0.5)");
    const double n = static_cast<double>(length);
    if (trim * n < 2.0 - 1e-9) {
        fail(ErrorKind::series_too_short, "trim x T must be at least 2 (T = " + std::to_string(length) + ")");
    }
    BreakRange r;
    r.first = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(trim * n - 1e-9)));
    r.last = std::min<std::size_t>(length - 2, static_cast<std::size_t>(std::floor((1.0 - trim) * n + 1e-9)));
    if (r.first > r.last) fail(ErrorKind::series_too_short, "no admissible break dates after trimming");
    return r;
}

namespace {

void check_za_spec(const UnitRootModelSpec& spec) {
    if (!spec.break_kind) fail(ErrorKind::invalid_model_combination, "Zivot-Andrews needs a break form");
    if (spec.deterministic == Deterministic::none) {
        fail(ErrorKind::invalid_model_combination, "Zivot-Andrews needs at least a constant");
    }
    if (spec.deterministic == Deterministic::constant && *spec.break_kind != BreakKind::intercept) {
        fail(ErrorKind::invalid_model_combination, "a trend break requires a trending specification");
    }
}

Extras za_extras(const Series& s, const UnitRootModelSpec& spec, std::size_t tb) {
    return io_extras(s, spec.deterministic, *spec.break_kind, tb, false);
}

struct Candidate {
    double statistic = 0.0;
};

}  // namespace

std::optional<UnitRootOutcome> zivot_andrews_at(const Series& s, const UnitRootModelSpec& spec, std::size_t tb) {
    check_za_spec(spec);
    const Extras extras = za_extras(s, spec, tb);
    const auto ev = try_evaluate(s.values(), extras, spec.lags);
    if (!ev) return std::nullopt;
    UnitRootOutcome o = make_outcome("zivot_andrews", s, zivot_andrews_spec_key(spec), *ev);
    o.breaks = {make_break(s, s.start_year() + static_cast<int>(tb) - 1)};
    return o;
}

UnitRootOutcome zivot_andrews(const Series& s, const UnitRootModelSpec& spec, double trim, const DecisionRule& rule,
                              Execution exec) {
    check_za_spec(spec);
    const BreakRange range = break_candidates(s.size(), trim);
    check_length(s, static_cast<std::size_t>(effective_max_lag(spec.lags)) + 10, "Zivot-Andrews");
    const std::size_t n = range.last - range.first + 1;
    auto best = grid_argmin<Candidate>(exec, n, [&](std::size_t i) -> std::optional<Candidate> {
        const auto ev = try_evaluate(s.values(), za_extras(s, spec, range.first + i), spec.lags);
        if (!ev) return std::nullopt;
        return Candidate{ev->statistic};
    });
    if (!best) fail(ErrorKind::rank_deficient, "every Zivot-Andrews break candidate was degenerate");
    const std::size_t tb = range.first + best->index;
    UnitRootOutcome o = *zivot_andrews_at(s, spec, tb);
    const Evaluation ev{o.statistic, o.alpha_minus_one, o.lags, o.nobs};
    o.dummies = report_dummies(final_fit(s.values(), za_extras(s, spec, tb), ev.lags), single_break_report(*spec.break_kind));
    apply_decision(o, rule);
    return o;
}

std::optional<UnitRootOutcome> perron_at(const Series& s, const UnitRootModelSpec& spec, std::size_t tb) {
    try {
        return perron_known_break(s, spec, make_break(s, s.start_year() + static_cast<int>(tb) - 1));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::rank_deficient || e.kind() == ErrorKind::sample_too_small) return std::nullopt;
        throw;
    }
}

UnitRootOutcome perron_endogenous(const Series& s, const UnitRootModelSpec& spec, double trim,
                                  const DecisionRule& rule, Execution exec) {
    validate_break_model(spec);
    if (spec.style == BreakStyle::none) fail(ErrorKind::invalid_model_combination, "break search needs AO or IO");
    const BreakRange range = break_candidates(s.size(), trim);
    auto best = grid_argmin<Candidate>(exec, range.last - range.first + 1, [&](std::size_t i) -> std::optional<Candidate> {
        const auto o = perron_at(s, spec, range.first + i);
        if (!o) return std::nullopt;
        return Candidate{o->statistic};
    });
    if (!best) fail(ErrorKind::rank_deficient, "every break candidate was degenerate");
    UnitRootOutcome o = *perron_at(s, spec, range.first + best->index);
    apply_decision(o, rule);
    return o;
}

namespace {

Extras lp_extras(std::size_t length, std::size_t tb1, std::size_t tb2) {
    std::vector<std::vector<double>> cols;
    std::vector<std::string> names;
    deterministic_columns(Deterministic::constant_trend, length, cols, names);
    cols.push_back(shift_dummy(length, tb1));
    names.emplace_back("DU1");
    cols.push_back(trend_dummy(length, tb1));
    names.emplace_back("DT1");
    cols.push_back(shift_dummy(length, tb2));
    names.emplace_back("DU2");
    cols.push_back(trend_dummy(length, tb2));
    names.emplace_back("DT2");
    return fixed_extras(std::move(cols), std::move(names), length);
}

Extras clemente_io_extras(std::size_t length, std::size_t tb1, std::size_t tb2) {
    std::vector<std::vector<double>> cols;
    std::vector<std::string> names;
    deterministic_columns(Deterministic::constant, length, cols, names);
    cols.push_back(pulse_dummy(length, tb1));
    names.emplace_back("DTB1");
    cols.push_back(pulse_dummy(length, tb2));
    names.emplace_back("DTB2");
    cols.push_back(shift_dummy(length, tb1));
    names.emplace_back("DU1");
    cols.push_back(shift_dummy(length, tb2));
    names.emplace_back("DU2");
    return fixed_extras(std::move(cols), std::move(names), length);
}

std::vector<std::pair<std::size_t, std::size_t>> break_pairs(const BreakRange& r) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = r.first; a <= r.last; ++a) {
        for (std::size_t b = a + 2; b <= r.last; ++b) pairs.emplace_back(a, b);
    }
    return pairs;
}

void check_pair(const Series& s, std::size_t tb1, std::size_t tb2) {
    if (tb2 < tb1 + 2) fail(ErrorKind::break_out_of_range, "second break must follow the first by at least 2 observations");
    if (tb1 < 2 || tb2 + 1 > s.size()) fail(ErrorKind::break_out_of_range, "break pair not interior");
}

BreakDate date_at(const Series& s, std::size_t tb) { return make_break(s, s.start_year() + static_cast<int>(tb) - 1); }

struct ClementeAo {
    std::vector<double> detrended;
    OlsFit stage1;
};

ClementeAo clemente_ao_stage1(const Series& s, std::size_t tb1, std::size_t tb2) {
    const std::size_t length = s.size();
    std::vector<std::vector<double>> cols{std::vector<double>(length, 1.0), shift_dummy(length, tb1),
                                          shift_dummy(length, tb2)};
    const Vec y = Eigen::Map<const Vec>(s.values().data(), static_cast<Eigen::Index>(length));
    ClementeAo out{{}, ols(y, columns_to_matrix(cols, length), {"C", "DU1", "DU2"})};
    out.detrended.assign(out.stage1.residuals.data(), out.stage1.residuals.data() + length);
    return out;
}

}  // namespace

std::optional<UnitRootOutcome> lumsdaine_papell_at(const Series& s, std::size_t tb1, std::size_t tb2,
                                                   LagSelection lags) {
    check_pair(s, tb1, tb2);
    const Extras extras = lp_extras(s.size(), tb1, tb2);
    const auto ev = try_evaluate(s.values(), extras, lags);
    if (!ev) return std::nullopt;
    UnitRootOutcome o = make_outcome("lumsdaine_papell", s, lumsdaine_papell_spec_key(), *ev);
    o.breaks = {date_at(s, tb1), date_at(s, tb2)};
    return o;
}

UnitRootOutcome lumsdaine_papell(const Series& s, double trim, LagSelection lags, const DecisionRule& rule,
                                 Execution exec) {
    const BreakRange range = break_candidates(s.size(), trim);
    check_length(s, static_cast<std::size_t>(effective_max_lag(lags)) + 10, "Lumsdaine-Papell");
    const auto pairs = break_pairs(range);
    if (pairs.empty()) fail(ErrorKind::series_too_short, "no admissible break pairs");
    auto best = grid_argmin<Candidate>(exec, pairs.size(), [&](std::size_t i) -> std::optional<Candidate> {
        const auto ev = try_evaluate(s.values(), lp_extras(s.size(), pairs[i].first, pairs[i].second), lags);
        if (!ev) return std::nullopt;
        return Candidate{ev->statistic};
    });
    if (!best) fail(ErrorKind::rank_deficient, "every Lumsdaine-Papell break pair was degenerate");
    const auto [tb1, tb2] = pairs[best->index];
    UnitRootOutcome o = *lumsdaine_papell_at(s, tb1, tb2, lags);
    o.dummies = report_dummies(final_fit(s.values(), lp_extras(s.size(), tb1, tb2), o.lags),
                               {{"DU1", "DU1"}, {"DT1", "DT1"}, {"DU2", "DU2"}, {"DT2", "DT2"}});
    apply_decision(o, rule);
    return o;
}

std::optional<UnitRootOutcome> clemente_at(const Series& s, ClementeVariant variant, std::size_t tb1,
                                           std::size_t tb2, LagSelection lags) {
    check_pair(s, tb1, tb2);
    std::optional<Evaluation> ev;
    if (variant == ClementeVariant::innovational) {
        ev = try_evaluate(s.values(), clemente_io_extras(s.size(), tb1, tb2), lags);
    } else {
        try {
            const ClementeAo ao = clemente_ao_stage1(s, tb1, tb2);
            ev = try_evaluate(ao.detrended, ao_pulse_extras(s.size(), {tb1, tb2}), lags);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::rank_deficient) throw;
        }
    }
    if (!ev) return std::nullopt;
    UnitRootOutcome o = make_outcome(variant == ClementeVariant::innovational ? "clemente_io" : "clemente_ao", s,
                                     clemente_spec_key(variant), *ev);
    o.breaks = {date_at(s, tb1), date_at(s, tb2)};
    return o;
}

UnitRootOutcome clemente(const Series& s, ClementeVariant variant, double trim, LagSelection lags,
                         const DecisionRule& rule, Execution exec) {
    const BreakRange range = break_candidates(s.size(), trim);
    check_length(s, static_cast<std::size_t>(effective_max_lag(lags)) + 10, "Clemente-Montanes-Reyes");
    const auto pairs = break_pairs(range);
    if (pairs.empty()) fail(ErrorKind::series_too_short, "no admissible break pairs");
    auto best = grid_argmin<Candidate>(exec, pairs.size(), [&](std::size_t i) -> std::optional<Candidate> {
        const auto o = clemente_at(s, variant, pairs[i].first, pairs[i].second, lags);
        if (!o) return std::nullopt;
        return Candidate{o->statistic};
    });
    if (!best) fail(ErrorKind::rank_deficient, "every Clemente break pair was degenerate");
    const auto [tb1, tb2] = pairs[best->index];
    UnitRootOutcome o = *clemente_at(s, variant, tb1, tb2, lags);
    if (variant == ClementeVariant::innovational) {
        o.dummies = report_dummies(final_fit(s.values(), clemente_io_extras(s.size(), tb1, tb2), o.lags),
                                   {{"DU1", "DU1"}, {"DU2", "DU2"}});
    } else {
        o.dummies = report_dummies(clemente_ao_stage1(s, tb1, tb2).stage1, {{"DU1", "DU1"}, {"DU2", "DU2"}});
    }
    apply_decision(o, rule);
    return o;
}

}  // namespace ecm
