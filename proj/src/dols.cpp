#include "ecm/dols.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>

#include "ecm/errors.hpp"

namespace ecm {

namespace {

double two_sided_p(double t, double df) {
    if (!std::isfinite(t)) return 1.0;
    boost::math::students_t dist(df);
    return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

double two_sided_critical(double level, double df) {
    boost::math::students_t dist(df);
    return boost::math::quantile(boost::math::complement(dist, (1.0 - level) / 2.0));
}

}  // namespace

const char* to_string(CoefficientRole r) noexcept {
    switch (r) {
        case CoefficientRole::long_run: return "long_run";
        case CoefficientRole::deterministic: return "deterministic";
        case CoefficientRole::nuisance: return "nuisance";
    }
    return "?";
}

const DolsCoefficient& DolsFit::at(const std::string& name) const {
    for (const auto& c : coefficients) {
        if (c.name == name) return c;
    }
    fail(ErrorKind::dimension_mismatch, "no DOLS coefficient named " + name);
}

std::vector<DolsCoefficient> DolsFit::long_run() const {
    std::vector<DolsCoefficient> out;
    for (const auto& c : coefficients) {
        if (c.role == CoefficientRole::long_run) out.push_back(c);
    }
    return out;
}

DolsFit dols_fit(const DolsSpec& spec) {
    const Series& y = spec.response;
    const std::size_t t = y.size();
    if (spec.regressors.empty()) fail(ErrorKind::config_error, "DOLS needs at least one regressor");
    if (spec.leads < 0 || spec.lags < 0) fail(ErrorKind::config_error, "leads and lags must be non-negative");
    for (const auto& x : spec.regressors) {
        if (x.start_year() != y.start_year() || x.size() != t) {
            fail(ErrorKind::dimension_mismatch, "regressor " + x.name() + " does not share the sample of " + y.name());
        }
    }

    const auto q = static_cast<std::size_t>(spec.lags);
    const auto p = static_cast<std::size_t>(spec.leads);
    const std::size_t first = q + 1;
    if (t < first + p + 1) fail(ErrorKind::sample_too_small, "no usable DOLS observations");
    const std::size_t last = t - 1 - p;
    const std::size_t n = last - first + 1;

    std::vector<std::string> names;
    std::vector<CoefficientRole> roles;
    std::vector<std::vector<double>> cols;
    auto add = [&](std::string name, CoefficientRole role, auto&& value_at) {
        std::vector<double> v(n);
        for (std::size_t r = 0; r < n; ++r) v[r] = value_at(first + r);
        names.push_back(std::move(name));
        roles.push_back(role);
        cols.push_back(std::move(v));
    };

    for (const auto& x : spec.regressors) add(x.name(), CoefficientRole::long_run, [&](std::size_t i) { return x[i]; });
    if (spec.constant) add("C", CoefficientRole::deterministic, [](std::size_t) { return 1.0; });
    if (spec.trend) add("T", CoefficientRole::deterministic, [](std::size_t i) { return static_cast<double>(i + 1); });
    for (std::size_t b = 0; b < spec.breaks.size(); ++b) {
        const DolsBreak& brk = spec.breaks[b];
        const std::size_t tb = break_index(brk.date, y.start_year());
        const std::string label = "B" + std::to_string(b + 1);
        if (brk.intercept) {
            add(label, CoefficientRole::deterministic, [tb](std::size_t i) { return i + 1 > tb ? 1.0 : 0.0; });
        }
        if (brk.trend_interaction) {
            const bool product = spec.product_form;
            add("T(" + label + ")", CoefficientRole::deterministic, [tb, product](std::size_t i) {
                if (i + 1 <= tb) return 0.0;
                return product ? static_cast<double>(i + 1) : static_cast<double>(i + 1 - tb);
            });
        }
    }
    for (const auto& x : spec.regressors) {
        auto d = [&x](std::size_t i) { return x[i] - x[i - 1]; };
        for (int off = -spec.leads; off <= spec.lags; ++off) {
            std::string name = "D(" + x.name();
            if (off < 0) name += "(+" + std::to_string(-off) + ")";
            if (off > 0) name += "(-" + std::to_string(off) + ")";
            name += ")";
            add(std::move(name), CoefficientRole::nuisance,
                [&, off](std::size_t i) { return d(static_cast<std::size_t>(static_cast<long>(i) - off)); });
        }
    }

    const std::size_t k = cols.size();
    if (n <= k) {
        fail(ErrorKind::sample_too_small, "DOLS has " + std::to_string(n) + " usable observations for " +
                                              std::to_string(k) + " parameters");
    }
    Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
    for (std::size_t j = 0; j < k; ++j) {
        x.col(static_cast<Eigen::Index>(j)) = Eigen::Map<const Eigen::VectorXd>(cols[j].data(), static_cast<Eigen::Index>(n));
    }
    Eigen::VectorXd yv(static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < n; ++r) yv[static_cast<Eigen::Index>(r)] = y[first + r];

    const OlsFit fit = ols(yv, x, names);

    DolsFit out;
    out.nobs = n;
    out.k = k;
    out.first_year = y.year_at(first);
    out.last_year = y.year_at(last);
    out.r2 = fit.r2;
    out.r2_adjusted = fit.r2_adjusted;
    out.regression_se = fit.regression_se();
    out.residual_variance = fit.rss / static_cast<double>(n);
    out.jarque_bera = jarque_bera(as_span(fit.residuals));
    if (spec.force_iid) {
        out.long_run_variance = {out.residual_variance, 0, Kernel::bartlett};
    } else {
        out.long_run_variance = newey_west_lrv(as_span(fit.residuals), spec.bandwidth);
    }
    const double scale = spec.force_iid ? 1.0 : std::sqrt(out.long_run_variance.value / out.residual_variance);
    const double df = static_cast<double>(n - k);
    for (std::size_t j = 0; j < k; ++j) {
        const auto idx = static_cast<Eigen::Index>(j);
        DolsCoefficient c;
        c.name = names[j];
        c.role = roles[j];
        c.estimate = fit.coefficients[idx];
        c.classical_se = fit.standard_errors[idx];
        c.hac_se = c.classical_se * scale;
        c.t_stat = c.estimate / c.hac_se;
        c.p_value = two_sided_p(c.t_stat, df);
        out.coefficients.push_back(c);
    }
    return out;
}

std::vector<Elasticity> elasticity_report(const DolsFit& fit, double level,
                                          const std::map<std::string, std::string>& labels) {
    const double crit = two_sided_critical(level, static_cast<double>(fit.nobs - fit.k));
    std::vector<Elasticity> out;
    for (const auto& c : fit.long_run()) {
        Elasticity e;
        e.regressor = c.name;
        const auto it = labels.find(c.name);
        e.label = it == labels.end() ? c.name : it->second;
        e.value = c.estimate;
        e.std_error = c.hac_se;
        e.significant = c.p_value < 1.0 - level;
        e.direction = c.estimate < 0.0 ? "inverse" : "direct";
        if (!e.significant) {
            e.classification = "none";
        } else {
            const double distance = (std::abs(c.estimate) - 1.0) / c.hac_se;
            if (!(std::abs(distance) > crit)) {
                e.classification = "unitary";
            } else {
                e.classification = std::abs(c.estimate) > 1.0 ? "elastic" : "inelastic";
            }
        }
        out.push_back(e);
    }
    return out;
}

}  // namespace ecm
