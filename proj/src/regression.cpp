#include "ecm/regression.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ecm/errors.hpp"

namespace ecm {

namespace {

constexpr double kRankTolerance = 1e-10;

std::string column_name(const std::vector<std::string>& names, Eigen::Index j) {
    if (static_cast<std::size_t>(j) < names.size()) return names[static_cast<std::size_t>(j)];
    return "x" + std::to_string(j);
}

struct Factorisation {
    Eigen::VectorXd beta;
    Eigen::VectorXd residuals;
    Eigen::MatrixXd r;  // upper-triangular k x k
    double rss = 0.0;
};

void check_rank(const Eigen::MatrixXd& x, const Eigen::MatrixXd& r, const std::vector<std::string>& names) {
    const Eigen::Index k = x.cols();
    if (k == 0) return;
    const Eigen::VectorXd norms = x.colwise().norm().transpose();
    for (Eigen::Index j = 0; j < k; ++j) {
        if (!(norms[j] > 0.0)) fail(ErrorKind::rank_deficient, "column " + column_name(names, j) + " is identically zero");
    }
    const Eigen::MatrixXd scaled = r * norms.cwiseInverse().asDiagonal();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv[k - 1] < kRankTolerance * sv[0]) {
        const Eigen::VectorXd v = svd.matrixV().col(k - 1);
        std::string involved;
        for (Eigen::Index j = 0; j < k; ++j) {
            if (std::abs(v[j]) > 1e-3) {
                if (!involved.empty()) involved += ", ";
                involved += column_name(names, j);
            }
        }
        fail(ErrorKind::rank_deficient, "collinear columns: " + involved);
    }
}

Factorisation factorise(const Eigen::VectorXd& y, const Eigen::MatrixXd& x, const std::vector<std::string>& names) {
    const Eigen::Index n = x.rows();
    const Eigen::Index k = x.cols();
    if (y.size() != n) {
        fail(ErrorKind::dimension_mismatch,
             "response has " + std::to_string(y.size()) + " rows, design has " + std::to_string(n));
    }
    if (n <= k) {
        fail(ErrorKind::sample_too_small,
             std::to_string(n) + " observations cannot identify " + std::to_string(k) + " coefficients");
    }

    Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
    Factorisation f;
    f.r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    check_rank(x, f.r, names);

    f.beta = qr.solve(y);
    f.residuals = y - x * f.beta;
    f.rss = f.residuals.squaredNorm();
    return f;
}

}  // namespace

Eigen::MatrixXd residualize(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, const std::vector<std::string>& names) {
    if (x.cols() == 0) return y;
    if (x.rows() != y.rows()) fail(ErrorKind::dimension_mismatch, "residualize: row counts differ");
    if (x.rows() <= x.cols()) fail(ErrorKind::sample_too_small, "residualize: too few observations");
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
    const Eigen::MatrixXd r = qr.matrixQR().topRows(x.cols()).triangularView<Eigen::Upper>();
    check_rank(x, r, names);
    return y - x * qr.solve(y);
}

DesignMatrix DesignMatrix::from_columns(const std::vector<RegressorColumn>& columns) {
    DesignMatrix dm;
    if (columns.empty()) return dm;
    const std::size_t n = columns.front().values.size();
    dm.data.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(columns.size()));
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].values.size() != n) {
            fail(ErrorKind::dimension_mismatch, "column " + columns[j].name + " has " +
                                                    std::to_string(columns[j].values.size()) + " rows, expected " +
                                                    std::to_string(n));
        }
        dm.names.push_back(columns[j].name);
        for (std::size_t i = 0; i < n; ++i) dm.data(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = columns[j].values[i];
    }
    return dm;
}

InformationCriteria info_criteria(double rss, std::size_t nobs, std::size_t k) {
    const double t = static_cast<double>(nobs);
    const double base = std::log(rss / t);
    const double kk = static_cast<double>(k);
    return {base + 2.0 * kk / t, base + kk * std::log(t) / t, base + 2.0 * kk * std::log(std::log(t)) / t};
}

std::size_t OlsFit::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return i;
    }
    fail(ErrorKind::config_error, "no coefficient named '" + std::string(name) + "'");
}

OlsFit ols(const Eigen::VectorXd& y, const DesignMatrix& x) { return ols(y, x.data, x.names); }

OlsFit ols(const Eigen::VectorXd& y, const Eigen::MatrixXd& x, std::vector<std::string> names) {
    Factorisation f = factorise(y, x, names);
    const Eigen::Index n = x.rows();
    const Eigen::Index k = x.cols();

    OlsFit fit;
    if (names.empty()) {
        for (Eigen::Index j = 0; j < k; ++j) names.push_back(column_name({}, j));
    }
    fit.names = std::move(names);
    fit.nobs = static_cast<std::size_t>(n);
    fit.k = static_cast<std::size_t>(k);
    fit.coefficients = f.beta;
    fit.residuals = std::move(f.residuals);
    fit.rss = f.rss;
    fit.sigma2 = f.rss / static_cast<double>(n - k);

    const Eigen::MatrixXd rinv =
        f.r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
    fit.covariance = fit.sigma2 * (rinv * rinv.transpose());
    fit.standard_errors = fit.covariance.diagonal().cwiseSqrt();
    fit.t_stats.resize(k);
    for (Eigen::Index j = 0; j < k; ++j) fit.t_stats[j] = fit.coefficients[j] / fit.standard_errors[j];

    const double mean = y.mean();
    const double tss = (y.array() - mean).square().sum();
    fit.r2 = tss > 0.0 ? 1.0 - fit.rss / tss : 0.0;
    fit.r2_adjusted = 1.0 - (1.0 - fit.r2) * static_cast<double>(n - 1) / static_cast<double>(n - k);
    fit.ic = info_criteria(fit.rss, fit.nobs, fit.k);
    return fit;
}

CoefficientTest test_coefficient(const Eigen::VectorXd& y, const Eigen::MatrixXd& x, Eigen::Index column) {
    Factorisation f = factorise(y, x, {});
    const Eigen::Index n = x.rows();
    const Eigen::Index k = x.cols();
    // diag((X'X)^-1)_j = ||R^-T e_j||^2
    Eigen::VectorXd e = Eigen::VectorXd::Zero(k);
    e[column] = 1.0;
    f.r.transpose().triangularView<Eigen::Lower>().solveInPlace(e);
    CoefficientTest out;
    out.coefficient = f.beta[column];
    out.rss = f.rss;
    out.nobs = static_cast<std::size_t>(n);
    out.k = static_cast<std::size_t>(k);
    out.standard_error = std::sqrt(f.rss / static_cast<double>(n - k) * e.squaredNorm());
    out.t_stat = out.coefficient / out.standard_error;
    return out;
}

int newey_west_fixed_bandwidth(std::size_t nobs) {
    return static_cast<int>(std::floor(4.0 * std::pow(static_cast<double>(nobs) / 100.0, 2.0 / 9.0)));
}

double autocovariance(std::span<const double> residuals, std::size_t j) {
    double s = 0.0;
    for (std::size_t t = j; t < residuals.size(); ++t) s += residuals[t] * residuals[t - j];
    return s / static_cast<double>(residuals.size());
}

int newey_west_auto_bandwidth(std::span<const double> residuals) {
    const std::size_t n = residuals.size();
    if (n < 2) fail(ErrorKind::series_too_short, "bandwidth selection needs at least two residuals");
    const int pilot = std::min<int>(newey_west_fixed_bandwidth(n), static_cast<int>(n) - 1);
    double s0 = autocovariance(residuals, 0);
    double s1 = 0.0;
    for (int j = 1; j <= pilot; ++j) {
        const double g = autocovariance(residuals, static_cast<std::size_t>(j));
        s0 += 2.0 * g;
        s1 += 2.0 * j * g;
    }
    if (s0 == 0.0) return 0;
    const double gamma = 1.1447 * std::pow((s1 / s0) * (s1 / s0), 1.0 / 3.0);
    const int m = static_cast<int>(std::floor(gamma * std::cbrt(static_cast<double>(n))));
    return std::clamp(m, 0, static_cast<int>(n) - 1);
}

LongRunVariance newey_west_lrv(std::span<const double> residuals, std::optional<int> bandwidth) {
    const std::size_t n = residuals.size();
    if (n < 2) fail(ErrorKind::series_too_short, "long-run variance needs at least two residuals");
    const int m = bandwidth ? *bandwidth : newey_west_fixed_bandwidth(n);
    if (m < 0 || static_cast<std::size_t>(m) >= n) {
        fail(ErrorKind::config_error, "bandwidth " + std::to_string(m) + " must lie in [0, " + std::to_string(n - 1) + "]");
    }
    double omega = autocovariance(residuals, 0);
    for (int j = 1; j <= m; ++j) {
        const double w = 1.0 - static_cast<double>(j) / static_cast<double>(m + 1);
        omega += 2.0 * w * autocovariance(residuals, static_cast<std::size_t>(j));
    }
    return {omega, m, Kernel::bartlett};
}

JarqueBera jarque_bera(std::span<const double> residuals) {
    const std::size_t n = residuals.size();
    if (n < 4) fail(ErrorKind::series_too_short, "Jarque-Bera needs at least four observations");
    const double t = static_cast<double>(n);
    const double mean = std::accumulate(residuals.begin(), residuals.end(), 0.0) / t;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double r : residuals) {
        const double d = r - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= t;
    m3 /= t;
    m4 /= t;
    JarqueBera jb;
    if (m2 <= 0.0) return jb;
    jb.skewness = m3 / std::pow(m2, 1.5);
    jb.kurtosis = m4 / (m2 * m2);
    const double excess = jb.kurtosis - 3.0;
    jb.statistic = t / 6.0 * (jb.skewness * jb.skewness + excess * excess / 4.0);
    // chi-square(2) upper tail
    jb.p_value = std::exp(-jb.statistic / 2.0);
    return jb;
}

}  // namespace ecm
