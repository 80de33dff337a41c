#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "ecm/cointegration.hpp"
#include "ecm/errors.hpp"
#include "oracles.hpp"

using namespace ecm;

namespace {

std::vector<Series> random_system(std::size_t n, std::size_t t, std::uint64_t seed, double drift = 0.0) {
    std::vector<Series> out;
    for (std::size_t j = 0; j < n; ++j) {
        auto e = oracle::gaussian(t, seed * 97 + j);
        for (auto& v : e) v += drift;
        out.emplace_back("x" + std::to_string(j), 1900, oracle::cumulative(e));
    }
    return out;
}

/// Trivariate system with one cointegrating vector: y = x1 + x2 + AR(0.5).
std::vector<Series> rank_one_system(std::size_t t, std::uint64_t seed) {
    auto sys = random_system(2, t, seed, 0.2);
    const auto u = oracle::gaussian(t, seed * 7919 + 3);
    std::vector<double> y(t);
    double ar = 0.0;
    for (std::size_t i = 0; i < t; ++i) {
        ar = 0.5 * ar + u[i];
        y[i] = sys[0][i] + sys[1][i] + ar;
    }
    sys.emplace_back("y", 1900, y);
    return sys;
}

/// Eigenvalues of S11^-1 S10 S00^-1 S01 for p = 1 with an unrestricted
/// constant, from the normal equations and a general eigen solver.
std::vector<double> johansen_oracle(const std::vector<Series>& sys) {
    const std::size_t n = sys.size();
    const std::size_t t = sys.front().size() - 1;
    Eigen::MatrixXd dx(t, n), x1(t, n);
    for (std::size_t r = 0; r < t; ++r) {
        for (std::size_t j = 0; j < n; ++j) {
            dx(r, j) = sys[j][r + 1] - sys[j][r];
            x1(r, j) = sys[j][r];
        }
    }
    // Residuals on a constant are deviations from the column means.
    const Eigen::MatrixXd r0 = dx.rowwise() - dx.colwise().mean();
    const Eigen::MatrixXd r1 = x1.rowwise() - x1.colwise().mean();
    const double tt = static_cast<double>(t);
    const Eigen::MatrixXd s00 = r0.transpose() * r0 / tt;
    const Eigen::MatrixXd s01 = r0.transpose() * r1 / tt;
    const Eigen::MatrixXd s11 = r1.transpose() * r1 / tt;
    const Eigen::MatrixXd m = s11.inverse() * s01.transpose() * s00.inverse() * s01;
    Eigen::EigenSolver<Eigen::MatrixXd> es(m);
    std::vector<double> ev;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) ev.push_back(es.eigenvalues()[i].real());
    std::sort(ev.rbegin(), ev.rend());
    return ev;
}

std::vector<CriticalValues> cvs95(std::initializer_list<double> values) {
    std::vector<CriticalValues> out;
    for (double v : values) {
        CriticalValues c;
        c.c95 = v;
        out.push_back(c);
    }
    return out;
}

}  // namespace

TEST_CASE("eigenvalues agree with a direct small-system computation") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto sys = random_system(3, 60, seed);
        const auto o = johansen_test({sys, 1, Deterministic::constant, {}});
        const auto ref = johansen_oracle(sys);
        REQUIRE(o.eigenvalues.size() == 3);
        for (std::size_t i = 0; i < 3; ++i) CHECK(o.eigenvalues[i] == doctest::Approx(ref[i]).epsilon(1e-8));
        double trace0 = 0.0;
        for (double l : ref) trace0 -= 59.0 * std::log(1.0 - l);
        CHECK(o.trace[0] == doctest::Approx(trace0).epsilon(1e-8));
        CHECK(o.nobs == 59u);
    }
}

TEST_CASE("trace telescopes into max-eigenvalue statistics") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const std::size_t n = 2 + seed % 3;
        const auto sys = random_system(n, 80, 500 + seed);
        const auto o = johansen_test({sys, 1 + static_cast<int>(seed % 2), Deterministic::constant, {}});
        for (std::size_t r = 0; r + 1 < n; ++r) CHECK(o.trace[r] - o.trace[r + 1] == o.max_eigen[r]);
        CHECK(o.max_eigen[n - 1] == o.trace[n - 1]);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(o.eigenvalues[i] >= 0.0);
            CHECK(o.eigenvalues[i] < 1.0);
            if (i) CHECK(o.eigenvalues[i] <= o.eigenvalues[i - 1]);
        }
    }
}

TEST_CASE("statistics are invariant to rescaling and reordering the variables") {
    const auto sys = random_system(3, 70, 42);
    const auto base = johansen_test({sys, 2, Deterministic::constant, {}});
    std::vector<Series> scaled;
    for (std::size_t j = 0; j < 3; ++j) {
        std::vector<double> v(sys[j].values().begin(), sys[j].values().end());
        for (auto& x : v) x = 10.0 * (j + 1) * x + 5.0;
        scaled.emplace_back(sys[j].name(), 1900, v);
    }
    const std::vector<Series> permuted{sys[2], sys[0], sys[1]};
    const auto a = johansen_test({scaled, 2, Deterministic::constant, {}});
    const auto b = johansen_test({permuted, 2, Deterministic::constant, {}});
    for (std::size_t r = 0; r < 3; ++r) {
        CHECK(a.trace[r] == doctest::Approx(base.trace[r]).epsilon(1e-7));
        CHECK(b.trace[r] == doctest::Approx(base.trace[r]).epsilon(1e-7));
    }
}

TEST_CASE("exogenous break regressors enter the concentration step") {
    const auto sys = random_system(3, 46, 9);
    const auto exo = break_exogenous(46, 1900, {make_break(1900, 46, 1913)}, true, false);
    REQUIRE(exo.size() == 2);
    CHECK(exo[0].name == "B1");
    CHECK(exo[1].name == "T(B1)");
    CHECK(exo[1].values[14] == 1.0);
    const auto plain = johansen_test({sys, 1, Deterministic::constant, {}});
    const auto with = johansen_test({sys, 1, Deterministic::constant, exo});
    CHECK(with.exogenous == std::vector<std::string>{"B1", "T(B1)"});
    CHECK(with.trace[0] != plain.trace[0]);
    const auto product = break_exogenous(46, 1900, {make_break(1900, 46, 1913)}, true, true, true);
    REQUIRE(product.size() == 3);
    CHECK(product[0].name == "T");
    CHECK(product[2].values[14] == 15.0);
}

TEST_CASE("lag orders that exhaust the sample are refused") {
    const auto sys = random_system(4, 46, 1);
    try {
        johansen_test({sys, 6, Deterministic::constant, {}});
        FAIL("expected SampleTooSmall");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::sample_too_small);
    }
    std::vector<Series> bad{sys[0], Series("short", 1900, std::vector<double>(40, 1.0))};
    try {
        johansen_test({bad, 1, Deterministic::constant, {}});
        FAIL("expected DimensionMismatch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::dimension_mismatch);
    }
}

TEST_CASE("decide_rank sequential rule") {
    JohansenOutcome o;
    o.trace = {10.0, 5.0, 1.0, 0.5};
    o.trace_cv = cvs95({47.9, 29.8, 15.5, 3.8});
    CHECK(decide_rank(o, Confidence::c95) == 0);
    o.trace = {100.0, 50.0, 20.0, 5.0};
    CHECK(decide_rank(o, Confidence::c95) == 4);
    try {
        decide_rank(o, Confidence::c90);
        FAIL("expected MissingCriticalValues");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::missing_critical_values);
    }
    // Rows of the published four-variable 1983 configuration at 90%.
    JohansenOutcome published;
    published.trace = {78.78, 44.03, 20.0, 2.0};
    std::vector<CriticalValues> cv(4);
    cv[0].c90 = 78.38;
    cv[1].c90 = 53.85;
    cv[2].c90 = 33.13;
    cv[3].c90 = 16.05;
    attach_critical_values(published, cv, {}, Confidence::c90);
    REQUIRE(published.decided_rank);
    CHECK(*published.decided_rank == 1);
    CHECK(published.trace_labels == std::vector<std::string>{"Rejection", "Acceptance", "-----", "-----"});
}

TEST_CASE("two independent random walks: rank 0") {
    // Unrestricted-constant 95% trace values for n - r = 2 and 1.
    const auto cv = cvs95({15.49, 3.84});
    int correct = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        auto o = johansen_test({random_system(2, 400, 10000 + seed, 0.2), 1, Deterministic::constant, {}});
        attach_critical_values(o, cv, {}, Confidence::c95);
        if (o.decided_rank == 0) ++correct;
    }
    MESSAGE("rank 0 chosen " << correct << "/200");
    CHECK(correct >= 170);
}

TEST_CASE("rank-one trivariate system") {
    const auto cv = cvs95({29.80, 15.49, 3.84});
    int correct = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        auto o = johansen_test({rank_one_system(400, seed), 1, Deterministic::constant, {}});
        attach_critical_values(o, cv, {}, Confidence::c95);
        if (o.decided_rank == 1) ++correct;
    }
    MESSAGE("rank 1 chosen " << correct << "/200");
    CHECK(correct >= 170);
}

TEST_CASE("VAR lag selection on a VAR(1)") {
    int all_one = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto e1 = oracle::gaussian(400, seed * 3 + 1);
        const auto e2 = oracle::gaussian(400, seed * 3 + 2);
        std::vector<double> a(400), b(400);
        for (std::size_t t = 1; t < 400; ++t) {
            a[t] = 0.6 * a[t - 1] + 0.2 * b[t - 1] + e1[t];
            b[t] = 0.5 * b[t - 1] + e2[t];
        }
        const auto sel = var_lag_select({{Series("a", 1600, a), Series("b", 1600, b)}, 1, Deterministic::constant, {}}, 3);
        if (sel.aic == 1 && sel.sic == 1 && sel.hq == 1) ++all_one;
        CHECK(sel.rows.size() == 3u);
        CHECK(sel.nobs == 397u);
    }
    MESSAGE("all criteria chose p = 1 in " << all_one << "/100");
    CHECK(all_one >= 90);
}

TEST_CASE("SIC prefers one lag over two on white noise") {
    int prefers_one = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        std::vector<Series> sys{oracle::white_noise(200, seed * 5 + 1, "a"), oracle::white_noise(200, seed * 5 + 2, "b")};
        const auto sel = var_lag_select({sys, 1, Deterministic::constant, {}}, 2);
        if (sel.rows[0].sic < sel.rows[1].sic) ++prefers_one;
    }
    CHECK(prefers_one >= 95);
}

TEST_CASE("lag table penalties") {
    const auto sys = random_system(2, 50, 3);
    const auto sel = var_lag_select({sys, 1, Deterministic::constant, {}}, 2);
    const double t = static_cast<double>(sel.nobs);
    for (const auto& row : sel.rows) {
        const double k = 2.0 * (1 + 2 * row.lag);
        CHECK(row.aic == doctest::Approx(row.log_det + 2 * k / t));
        CHECK(row.sic == doctest::Approx(row.log_det + k * std::log(t) / t));
    }
}
