#include "ecm/cointegration.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "ecm/errors.hpp"
#include "ecm/regression.hpp"

namespace ecm {

namespace {

using Mat = Eigen::MatrixXd;

struct Layout {
    std::size_t length = 0;
    std::size_t n = 0;
    Mat levels;  // T x n
    std::vector<std::string> names;
};

Layout layout(const VarSpec& spec) {
    if (spec.endogenous.size() < 2) fail(ErrorKind::config_error, "a VAR needs at least two endogenous series");
    Layout l;
    const Series& first = spec.endogenous.front();
    l.length = first.size();
    l.n = spec.endogenous.size();
    l.levels.resize(static_cast<Eigen::Index>(l.length), static_cast<Eigen::Index>(l.n));
    for (std::size_t j = 0; j < l.n; ++j) {
        const Series& s = spec.endogenous[j];
        if (s.start_year() != first.start_year() || s.size() != first.size()) {
            fail(ErrorKind::dimension_mismatch, "series " + s.name() + " does not share the sample of " + first.name());
        }
        for (std::size_t i = 0; i < l.length; ++i) l.levels(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s[i];
        l.names.push_back(s.name());
    }
    for (const auto& col : spec.exogenous) {
        if (col.values.size() != l.length) {
            fail(ErrorKind::dimension_mismatch, "exogenous column " + col.name + " does not match the sample length");
        }
    }
    return l;
}

/// Deterministic and exogenous regressors for rows [start, T).
void append_exogenous(const VarSpec& spec, std::size_t start, std::size_t length, std::vector<Eigen::VectorXd>& cols,
                      std::vector<std::string>& names) {
    const auto n = static_cast<Eigen::Index>(length - start);
    if (spec.deterministic != Deterministic::none) {
        cols.push_back(Eigen::VectorXd::Ones(n));
        names.emplace_back("C");
    }
    if (spec.deterministic == Deterministic::constant_trend) {
        Eigen::VectorXd t(n);
        for (Eigen::Index r = 0; r < n; ++r) t[r] = static_cast<double>(start + static_cast<std::size_t>(r) + 1);
        cols.push_back(t);
        names.emplace_back("TREND");
    }
    for (const auto& col : spec.exogenous) {
        Eigen::VectorXd v(n);
        for (Eigen::Index r = 0; r < n; ++r) v[r] = col.values[start + static_cast<std::size_t>(r)];
        cols.push_back(v);
        names.push_back(col.name);
    }
}

Mat stack(const std::vector<Eigen::VectorXd>& cols, Eigen::Index rows) {
    Mat m(rows, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = cols[j];
    return m;
}

}  // namespace

std::vector<RegressorColumn> break_exogenous(std::size_t length, int start_year, const std::vector<BreakDate>& breaks,
                                             bool trend_interaction, bool include_trend, bool product_form) {
    std::vector<RegressorColumn> out;
    if (include_trend) out.push_back({"T", trend_column(length)});
    for (std::size_t b = 0; b < breaks.size(); ++b) {
        const std::size_t tb = break_index(breaks[b], start_year);
        const std::string label = "B" + std::to_string(b + 1);
        std::vector<double> du = shift_dummy(length, tb);
        if (trend_interaction) {
            std::vector<double> tdu = trend_dummy(length, tb);
            if (product_form) {
                for (std::size_t i = 0; i < length; ++i) tdu[i] = du[i] * static_cast<double>(i + 1);
            }
            out.push_back({label, std::move(du)});
            out.push_back({"T(" + label + ")", std::move(tdu)});
        } else {
            out.push_back({label, std::move(du)});
        }
    }
    return out;
}

VarLagSelection var_lag_select(const VarSpec& spec, int max_lag) {
    if (max_lag < 1) fail(ErrorKind::config_error, "max_lag must be at least 1");
    const Layout l = layout(spec);
    const auto start = static_cast<std::size_t>(max_lag);
    if (l.length <= start + 2) fail(ErrorKind::series_too_short, "sample too short for VAR lag selection");
    const auto rows = static_cast<Eigen::Index>(l.length - start);
    const Mat y = l.levels.bottomRows(rows);

    VarLagSelection out;
    out.nobs = static_cast<std::size_t>(rows);
    const double t = static_cast<double>(rows);
    for (int p = 1; p <= max_lag; ++p) {
        std::vector<Eigen::VectorXd> cols;
        std::vector<std::string> names;
        append_exogenous(spec, start, l.length, cols, names);
        for (int lagk = 1; lagk <= p; ++lagk) {
            for (std::size_t j = 0; j < l.n; ++j) {
                cols.push_back(l.levels.col(static_cast<Eigen::Index>(j)).segment(static_cast<Eigen::Index>(start) - lagk, rows));
                names.push_back(l.names[j] + "(-" + std::to_string(lagk) + ")");
            }
        }
        const Mat x = stack(cols, rows);
        if (x.cols() >= rows) fail(ErrorKind::series_too_short, "VAR(" + std::to_string(p) + ") has too many parameters");
        const Mat e = residualize(x, y, names);
        const Mat sigma = e.transpose() * e / t;
        const double log_det = std::log(sigma.determinant());
        const double k = static_cast<double>(l.n) * static_cast<double>(x.cols());
        VarLagRow row{p, log_det, log_det + 2.0 * k / t, log_det + k * std::log(t) / t,
                      log_det + 2.0 * k * std::log(std::log(t)) / t};
        out.rows.push_back(row);
    }
    auto argmin = [&](auto member) {
        int best = out.rows.front().lag;
        double value = out.rows.front().*member;
        for (const auto& r : out.rows) {
            if (r.*member < value) {
                value = r.*member;
                best = r.lag;
            }
        }
        return best;
    };
    out.aic = argmin(&VarLagRow::aic);
    out.sic = argmin(&VarLagRow::sic);
    out.hq = argmin(&VarLagRow::hq);
    return out;
}

JohansenOutcome johansen_test(const VarSpec& spec) {
    const Layout l = layout(spec);
    const int p = spec.lag_order;
    if (p < 1) fail(ErrorKind::config_error, "lag order must be at least 1");
    if (static_cast<double>(p) >= static_cast<double>(l.length) / (2.0 * static_cast<double>(l.n))) {
        fail(ErrorKind::sample_too_small, "lag order " + std::to_string(p) + " too large for " +
                                              std::to_string(l.length) + " observations of " +
                                              std::to_string(l.n) + " variables");
    }
    const auto start = static_cast<std::size_t>(p);
    const auto rows = static_cast<Eigen::Index>(l.length - start);
    const auto n = static_cast<Eigen::Index>(l.n);

    Mat dx(rows, n), x1(rows, n);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Eigen::Index t = static_cast<Eigen::Index>(start) + r;
        dx.row(r) = l.levels.row(t) - l.levels.row(t - 1);
        x1.row(r) = l.levels.row(t - 1);
    }

    std::vector<Eigen::VectorXd> cols;
    std::vector<std::string> names;
    append_exogenous(spec, start, l.length, cols, names);
    for (int i = 1; i < p; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            Eigen::VectorXd v(rows);
            for (Eigen::Index r = 0; r < rows; ++r) {
                const Eigen::Index t = static_cast<Eigen::Index>(start) + r - i;
                v[r] = l.levels(t, j) - l.levels(t - 1, j);
            }
            cols.push_back(v);
            names.push_back("D(" + l.names[static_cast<std::size_t>(j)] + "(-" + std::to_string(i) + "))");
        }
    }
    const Mat z = stack(cols, rows);
    if (z.cols() + n >= rows) fail(ErrorKind::sample_too_small, "too few observations for the Johansen regressions");
    const Mat r0 = residualize(z, dx, names);
    const Mat r1 = residualize(z, x1, names);

    const double t = static_cast<double>(rows);
    const Mat s00 = r0.transpose() * r0 / t;
    const Mat s01 = r0.transpose() * r1 / t;
    const Mat s11 = r1.transpose() * r1 / t;

    Eigen::LLT<Mat> chol11(s11);
    Eigen::LLT<Mat> chol00(s00);
    if (chol11.info() != Eigen::Success || chol00.info() != Eigen::Success) {
        fail(ErrorKind::rank_deficient, "moment matrices are not positive definite");
    }
    // L^-1 S10 S00^-1 S01 L^-T with S11 = L L'
    const Mat c = chol11.matrixL().solve(s01.transpose());  // L^-1 S10
    const Mat w = chol00.matrixL().solve(c.transpose());    // L00^-1 S01 L^-T
    const Mat a = w.transpose() * w;
    Eigen::SelfAdjointEigenSolver<Mat> eig(a, Eigen::EigenvaluesOnly);

    JohansenOutcome out;
    out.nobs = static_cast<std::size_t>(rows);
    out.lag_order = p;
    out.variables = l.names;
    for (const auto& col : spec.exogenous) out.exogenous.push_back(col.name);
    for (Eigen::Index i = n - 1; i >= 0; --i) {
        double lambda = eig.eigenvalues()[i];
        if (lambda < 0.0) lambda = 0.0;
        if (!(lambda < 1.0)) fail(ErrorKind::rank_deficient, "canonical correlation of one: perfectly collinear system");
        out.eigenvalues.push_back(lambda);
    }
    const auto count = static_cast<std::size_t>(n);
    std::vector<double> terms(count);
    for (std::size_t i = 0; i < count; ++i) terms[i] = -t * std::log1p(-out.eigenvalues[i]);
    out.trace.assign(count, 0.0);
    out.max_eigen.assign(count, 0.0);
    double acc = 0.0;
    for (std::size_t i = count; i-- > 0;) {
        acc += terms[i];
        out.trace[i] = acc;
    }
    // max_eigen defined by differencing so the telescoping identity holds bit for bit.
    for (std::size_t i = 0; i < count; ++i) {
        out.max_eigen[i] = i + 1 < count ? out.trace[i] - out.trace[i + 1] : out.trace[i];
    }
    return out;
}

int decide_rank(const JohansenOutcome& outcome, Confidence level, JohansenStatistic statistic) {
    const auto& stats = statistic == JohansenStatistic::trace ? outcome.trace : outcome.max_eigen;
    const auto& cvs = statistic == JohansenStatistic::trace ? outcome.trace_cv : outcome.max_cv;
    for (std::size_t r = 0; r < stats.size(); ++r) {
        if (r >= cvs.size() || !cvs[r].at(level)) {
            fail(ErrorKind::missing_critical_values,
                 "no critical value for r = " + std::to_string(r) + " at " + std::to_string(confidence_value(level)));
        }
        if (!(stats[r] > *cvs[r].at(level))) return static_cast<int>(r);
    }
    return static_cast<int>(stats.size());
}

void attach_critical_values(JohansenOutcome& outcome, std::vector<CriticalValues> trace_cv,
                            std::vector<CriticalValues> max_cv, Confidence level) {
    outcome.trace_cv = std::move(trace_cv);
    outcome.max_cv = std::move(max_cv);
    outcome.level = level;
    outcome.decided_rank.reset();
    outcome.trace_labels.clear();
    try {
        const int rank = decide_rank(outcome, level, JohansenStatistic::trace);
        outcome.decided_rank = rank;
        for (std::size_t r = 0; r < outcome.trace.size(); ++r) {
            const auto ri = static_cast<int>(r);
            outcome.trace_labels.emplace_back(ri < rank ? "Rejection" : ri == rank ? "Acceptance" : "-----");
        }
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::missing_critical_values) throw;
    }
}

}  // namespace ecm
