#include <doctest.h>

#include <cmath>
#include <numeric>

#include "ecm/errors.hpp"
#include "ecm/regression.hpp"
#include "oracles.hpp"

using namespace ecm;

TEST_CASE("exact fit through the origin") {
    Eigen::MatrixXd x(5, 1);
    x << 1, 2, 3, 4, 5;
    const Eigen::VectorXd y = 2.0 * x.col(0);
    const OlsFit f = ols(y, x, {"x"});
    CHECK(f.coefficients[0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(f.residuals.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("intercept-only regression returns the mean") {
    Eigen::VectorXd y(4);
    y << 1, 2, 3, 4;
    const OlsFit f = ols(y, Eigen::MatrixXd::Ones(4, 1), {"C"});
    CHECK(f.coefficients[0] == doctest::Approx(2.5));
    CHECK(f.index_of("C") == 0);
}

TEST_CASE("three regressors on eight points agree with the normal equations") {
    const std::vector<std::vector<double>> rows{{1, 0.5, -1.2}, {1, 1.5, 0.3},  {1, -0.7, 2.2}, {1, 2.1, 1.1},
                                                {1, 3.3, -0.4}, {1, -1.9, 0.8}, {1, 0.2, -2.5}, {1, 1.1, 0.05}};
    const std::vector<double> y{0.9, 2.7, -1.1, 3.6, 4.8, -2.2, 1.4, 1.95};
    Eigen::MatrixXd x(8, 3);
    Eigen::VectorXd yv(8);
    for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 3; ++c) x(r, c) = rows[r][c];
        yv[r] = y[r];
    }
    const OlsFit f = ols(yv, x, {"C", "a", "b"});
    const auto ref = oracle::normal_equations(rows, y);
    for (int j = 0; j < 3; ++j) {
        CHECK(std::fabs(f.coefficients[j] - static_cast<double>(ref.beta[j])) < 1e-10);
        CHECK(std::fabs(f.standard_errors[j] - static_cast<double>(ref.se[j])) < 1e-10);
    }
    CHECK(f.rss == doctest::Approx(static_cast<double>(ref.rss)).epsilon(1e-10));
    CHECK(f.sigma2 == doctest::Approx(static_cast<double>(ref.rss) / 5.0).epsilon(1e-10));
}

TEST_CASE("collinear columns are reported by name") {
    Eigen::MatrixXd x(6, 3);
    x.col(0).setOnes();
    x.col(1) << 1, 2, 3, 4, 5, 6;
    x.col(2) = 2.0 * x.col(1);
    const Eigen::VectorXd y = Eigen::VectorXd::LinSpaced(6, 0, 1);
    try {
        ols(y, x, {"C", "trend", "twice"});
        FAIL("expected RankDeficient");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::rank_deficient);
        const std::string msg = e.what();
        CHECK(msg.find("trend") != std::string::npos);
        CHECK(msg.find("twice") != std::string::npos);
    }
}

TEST_CASE("mismatched rows are a dimension error") {
    try {
        ols(Eigen::VectorXd::Ones(5), Eigen::MatrixXd::Ones(4, 1));
        FAIL("expected DimensionMismatch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::dimension_mismatch);
    }
}

TEST_CASE("test_coefficient matches the full fit") {
    const auto e = oracle::gaussian(40, 3);
    Eigen::MatrixXd x(40, 3);
    Eigen::VectorXd y(40);
    for (int t = 0; t < 40; ++t) {
        x(t, 0) = 1;
        x(t, 1) = t;
        x(t, 2) = std::sin(t);
        y[t] = 0.5 + 0.1 * t + e[t];
    }
    const OlsFit f = ols(y, x);
    const CoefficientTest c = test_coefficient(y, x, 2);
    CHECK(c.coefficient == doctest::Approx(f.coefficients[2]).epsilon(1e-12));
    CHECK(c.t_stat == doctest::Approx(f.t_stats[2]).epsilon(1e-12));
}

TEST_CASE("bandwidth zero gives the divisor-T variance") {
    auto e = oracle::gaussian(200, 17);
    const double mean = std::accumulate(e.begin(), e.end(), 0.0) / e.size();
    for (auto& v : e) v -= mean;
    double var = 0.0;
    for (double v : e) var += v * v;
    var /= static_cast<double>(e.size());
    const auto lrv = newey_west_lrv(e, 0);
    CHECK(lrv.value == doctest::Approx(var).epsilon(1e-12));
    CHECK(lrv.bandwidth == 0);
}

TEST_CASE("alternating residuals with bandwidth one") {
    const std::vector<double> e{1, -1, 1, -1};
    // gamma0 = 1, gamma1 = -3/4, Bartlett weight 1/2
    CHECK(newey_west_lrv(e, 1).value == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("fixed bandwidth rule at T=46") {
    CHECK(newey_west_fixed_bandwidth(46) == static_cast<int>(std::floor(4.0 * std::pow(0.46, 2.0 / 9.0))));
    CHECK(newey_west_fixed_bandwidth(46) == 3);
    CHECK(newey_west_lrv(oracle::gaussian(46, 1)).bandwidth == 3);
}

TEST_CASE("bandwidth must stay below the sample length") {
    try {
        newey_west_lrv(std::vector<double>{1, 2, 3}, 3);
        FAIL("expected ConfigError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::config_error);
    }
}

TEST_CASE("Jarque-Bera of a symmetric two-point pattern") {
    std::vector<double> e;
    for (int i = 0; i < 20; ++i) e.push_back(i % 2 == 0 ? -1.0 : 1.0);
    const JarqueBera jb = jarque_bera(e);
    CHECK(jb.skewness == doctest::Approx(0.0));
    CHECK(jb.kurtosis == doctest::Approx(1.0));
    CHECK(jb.statistic == doctest::Approx(10.0 / 3.0).epsilon(1e-12));
    CHECK(jb.p_value == doctest::Approx(std::exp(-jb.statistic / 2.0)).epsilon(1e-12));
}

TEST_CASE("Jarque-Bera size on large normal samples") {
    int accepted = 0;
    for (std::uint64_t seed = 1; seed <= 500; ++seed) {
        if (jarque_bera(oracle::gaussian(10000, seed)).p_value > 0.01) ++accepted;
    }
    MESSAGE("p > 0.01 in " << accepted << " of 500 samples");
    CHECK(accepted >= 495);
}

TEST_CASE("information criteria formulas") {
    const auto ic0 = info_criteria(2.0, 50, 0);
    CHECK(ic0.aic == doctest::Approx(std::log(2.0 / 50)));
    CHECK(ic0.sic == ic0.aic);
    CHECK(ic0.hq == ic0.aic);
    const auto ic = info_criteria(1.0, 46, 3);
    CHECK(ic.aic == doctest::Approx(std::log(1.0 / 46) + 6.0 / 46).epsilon(1e-14));
    CHECK(ic.sic == doctest::Approx(std::log(1.0 / 46) + 3.0 * std::log(46.0) / 46).epsilon(1e-14));
    CHECK(ic.hq == doctest::Approx(std::log(1.0 / 46) + 6.0 * std::log(std::log(46.0)) / 46).epsilon(1e-14));
}
