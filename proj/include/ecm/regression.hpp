#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ecm/series.hpp"

namespace ecm {

/// Named regressors stored column-wise over a common estimation sample.
struct DesignMatrix {
    std::vector<std::string> names;
    Eigen::MatrixXd data;  ///< nobs x k

    static DesignMatrix from_columns(const std::vector<RegressorColumn>& columns);

    std::size_t nobs() const noexcept { return static_cast<std::size_t>(data.rows()); }
    std::size_t cols() const noexcept { return static_cast<std::size_t>(data.cols()); }
};

struct InformationCriteria {
    double aic = 0.0;
    double sic = 0.0;
    double hq = 0.0;
};

/// ln(RSS/T) plus the usual 2k/T, k ln(T)/T and 2k ln(ln T)/T penalties.
InformationCriteria info_criteria(double rss, std::size_t nobs, std::size_t k);

struct OlsFit {
    std::vector<std::string> names;
    Eigen::VectorXd coefficients;
    Eigen::VectorXd standard_errors;
    Eigen::VectorXd t_stats;
    Eigen::VectorXd residuals;
    Eigen::MatrixXd covariance;  ///< sigma2 * (X'X)^-1
    double rss = 0.0;
    double sigma2 = 0.0;  ///< RSS / (T - k)
    double r2 = 0.0;
    double r2_adjusted = 0.0;
    std::size_t nobs = 0;
    std::size_t k = 0;
    InformationCriteria ic;

    std::size_t index_of(std::string_view name) const;
    double regression_se() const { return std::sqrt(sigma2); }
};

/// Least squares through a Householder QR of X. Throws RankDeficient when a
/// singular value of the column-normalised R drops below 1e-10 of the largest,
/// naming the columns involved in the near-dependency.
OlsFit ols(const Eigen::VectorXd& y, const DesignMatrix& x);
OlsFit ols(const Eigen::VectorXd& y, const Eigen::MatrixXd& x, std::vector<std::string> names = {});

/// Estimate, standard error and t-ratio for one column only. Same factorisation
/// as ols(); used by the break-search kernels where only one t-ratio matters.
struct CoefficientTest {
    double coefficient = 0.0;
    double standard_error = 0.0;
    double t_stat = 0.0;
    double rss = 0.0;
    std::size_t nobs = 0;
    std::size_t k = 0;
};
CoefficientTest test_coefficient(const Eigen::VectorXd& y, const Eigen::MatrixXd& x, Eigen::Index column);

/// Residuals of every column of `y` after projection on `x` (same rank rule as ols()).
/// An empty `x` returns `y` unchanged.
Eigen::MatrixXd residualize(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                            const std::vector<std::string>& names = {});

enum class Kernel { bartlett };

struct LongRunVariance {
    double value = 0.0;
    int bandwidth = 0;
    Kernel kernel = Kernel::bartlett;

    bool operator==(const LongRunVariance&) const = default;
};

/// floor(4 (T/100)^(2/9)).
int newey_west_fixed_bandwidth(std::size_t nobs);
/// Newey-West (1994) data-dependent bandwidth for the Bartlett kernel.
int newey_west_auto_bandwidth(std::span<const double> residuals);

/// Lag-j autocovariance with divisor T; residuals are not demeaned.
double autocovariance(std::span<const double> residuals, std::size_t j);

/// gamma_0 + 2 sum_{j=1..m} (1 - j/(m+1)) gamma_j. Without a bandwidth the
/// fixed Newey-West rule is used.
LongRunVariance newey_west_lrv(std::span<const double> residuals, std::optional<int> bandwidth = std::nullopt);

struct JarqueBera {
    double statistic = 0.0;
    double p_value = 1.0;
    double skewness = 0.0;
    double kurtosis = 0.0;

    bool operator==(const JarqueBera&) const = default;
};

JarqueBera jarque_bera(std::span<const double> residuals);

inline std::span<const double> as_span(const Eigen::VectorXd& v) {
    return {v.data(), static_cast<std::size_t>(v.size())};
}

}  // namespace ecm
