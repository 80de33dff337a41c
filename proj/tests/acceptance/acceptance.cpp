// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.
#include <boost/math/distributions/students_t.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ecm/cointegration.hpp"
#include "ecm/critical_values.hpp"
#include "ecm/dols.hpp"
#include "ecm/pipeline.hpp"
#include "ecm/regression.hpp"
#include "ecm/report.hpp"
#include "ecm/unit_root.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace ecm;

namespace {

const fs::path kRoot = ECM_SOURCE_DIR;
int g_failures = 0;

void verdict(bool ok, const std::string& id, const std::string& text, const std::string& detail) {
    std::printf("%s [%s] %s :: %s\n", ok ? "PASS" : "FAIL", id.c_str(), text.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

void info(const std::string& text) {
    std::printf("INFO %s\n", text.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

class Timer {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::vector<Series> random_system(std::size_t n, std::size_t t, std::uint64_t seed, double drift) {
    std::vector<Series> out;
    for (std::size_t j = 0; j < n; ++j) {
        auto e = oracle::gaussian(t, seed * 131 + j);
        for (auto& v : e) v += drift;
        out.emplace_back("x" + std::to_string(j), 1, oracle::cumulative(e));
    }
    return out;
}

// ---------------------------------------------------------------- suite 1

void suite_identity() {
    const Timer timer;

    {
        double worst = 0.0;
        for (std::uint64_t seed = 1; seed <= 50; ++seed) {
            const Series s = oracle::random_walk(60 + seed, seed);
            const auto det = static_cast<Deterministic>(seed % 3);
            const double a = adf(s, det, LagSelection::fixed(0)).statistic;
            const double p = phillips_perron(s, det, 0).statistic;
            worst = std::max(worst, std::fabs(a - p));
        }
        verdict(worst <= 1e-9, "1.1", "ADF(k=0) equals PP(bandwidth=0) on 50 random series",
                fmt("max |ADF - PP| = %.3g", worst));
    }

    {
        bool exact = true, bounded = true;
        for (std::uint64_t seed = 1; seed <= 50; ++seed) {
            const std::size_t n = 2 + seed % 4;
            const auto o = johansen_test({random_system(n, 50 + 3 * seed, seed, 0.0), 1 + static_cast<int>(seed % 3),
                                          Deterministic::constant, {}});
            for (std::size_t r = 0; r + 1 < n; ++r) exact = exact && (o.trace[r] - o.trace[r + 1] == o.max_eigen[r]);
            exact = exact && o.max_eigen[n - 1] == o.trace[n - 1];
            for (double l : o.eigenvalues) bounded = bounded && l >= 0.0 && l < 1.0;
        }
        verdict(exact && bounded, "1.2", "Johansen trace(r) - trace(r+1) = max_eigen(r) on 50 random systems",
                fmt("telescoping exact: %s, eigenvalues in [0,1): %s", exact ? "yes" : "no", bounded ? "yes" : "no"));
    }

    {
        double worst = 0.0;
        for (std::uint64_t seed = 1; seed <= 50; ++seed) {
            const std::size_t t = 50 + seed;
            const auto x = oracle::cumulative(oracle::gaussian(t, seed * 3));
            const auto e = oracle::gaussian(t, seed * 3 + 1);
            std::vector<double> y(t);
            for (std::size_t i = 0; i < t; ++i) y[i] = 0.3 + 1.5 * x[i] + e[i];
            DolsSpec spec{Series("y", 1, y), {Series("x", 1, x)}};
            spec.trend = false;
            spec.leads = 0;
            spec.lags = 0;
            spec.force_iid = true;
            const DolsFit fit = dols_fit(spec);
            Eigen::MatrixXd design(static_cast<Eigen::Index>(t - 1), 3);
            Eigen::VectorXd yv(static_cast<Eigen::Index>(t - 1));
            for (std::size_t i = 1; i < t; ++i) {
                const auto r = static_cast<Eigen::Index>(i - 1);
                design(r, 0) = x[i];
                design(r, 1) = 1.0;
                design(r, 2) = x[i] - x[i - 1];
                yv[r] = y[i];
            }
            const OlsFit ref = ols(yv, design);
            for (Eigen::Index j = 0; j < 3; ++j) {
                const auto& c = fit.coefficients[static_cast<std::size_t>(j)];
                worst = std::max({worst, std::fabs(c.estimate - ref.coefficients[j]),
                                  std::fabs(c.hac_se - ref.standard_errors[j]), std::fabs(c.t_stat - ref.t_stats[j])});
            }
        }
        verdict(worst <= 1e-10, "1.3", "DOLS with p=q=0, no breaks, omega forced to sigma^2 reduces to OLS",
                fmt("max abs difference %.3g over 50 samples", worst));
    }

    {
        std::size_t candidates = 0;
        double worst_gap = 0.0;  // min over candidates of (candidate - reported); must be >= 0
        bool first = true;
        auto track = [&](double reported, double candidate) {
            ++candidates;
            const double gap = candidate - reported;
            if (first || gap < worst_gap) worst_gap = gap;
            first = false;
        };
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
            const Series s = oracle::random_walk(60, 900 + seed);
            const UnitRootModelSpec za{Deterministic::constant_trend, BreakStyle::innovational_outlier,
                                       BreakKind::trend, LagSelection{LagMethod::aic, 4, 0.10}};
            const auto best = zivot_andrews(s, za, 0.15);
            const BreakRange r = break_candidates(s.size(), 0.15);
            for (std::size_t tb = r.first; tb <= r.last; ++tb) {
                if (const auto o = zivot_andrews_at(s, za, tb)) track(best.statistic, o->statistic);
            }
        }
        for (std::uint64_t seed = 1; seed <= 2; ++seed) {
            const Series s = oracle::random_walk(46, 950 + seed);
            const LagSelection gts{LagMethod::general_to_specific, 2, 0.10};
            const auto lp = lumsdaine_papell(s, 0.1, gts);
            const auto cl = clemente(s, ClementeVariant::innovational, 0.1, gts);
            const BreakRange r = break_candidates(s.size(), 0.1);
            for (std::size_t a = r.first; a <= r.last; ++a) {
                for (std::size_t b = a + 2; b <= r.last; ++b) {
                    if (const auto o = lumsdaine_papell_at(s, a, b, gts)) track(lp.statistic, o->statistic);
                    if (const auto o = clemente_at(s, ClementeVariant::innovational, a, b, gts)) {
                        track(cl.statistic, o->statistic);
                    }
                }
            }
        }
        verdict(!first && worst_gap >= 0.0, "1.4",
                "ZA/LP/Clemente reported statistic <= every grid candidate (full re-evaluation)",
                fmt("%zu candidates re-evaluated, min(candidate - reported) = %.3g", candidates, worst_gap));
    }

    const double elapsed = timer.seconds();
    verdict(elapsed < 60.0, "1.R", "identity suite runtime under 1 minute", fmt("%.1f s", elapsed));
}

// ---------------------------------------------------------------- suite 2

void suite_monte_carlo() {
    const Timer timer;
    {
        TestRecipe r;
        r.family = TestFamily::adf;
        r.deterministic = Deterministic::none;
        const auto s = monte_carlo_cv(r, default_null_dgp(r, 1000), 50000, 20170301);
        const double q = *s.quantiles[1];
        verdict(std::fabs(q - (-1.948)) <= 0.03, "2.1", "ADF no-constant 5% critical value, 50k reps at T=1000",
                fmt("%.4f (mc se %.4f) vs -1.948 +/- 0.03", q, s.standard_errors[1]));
    }
    {
        const double cv = CriticalValueTable::bundled().lookup(TestFamily::adf, "none", 500, {}, Confidence::c95);
        int rejected = 0;
        for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
            if (adf(oracle::random_walk(500, 100000 + seed), Deterministic::none, LagSelection::fixed(0)).statistic < cv) {
                ++rejected;
            }
        }
        const double rate = rejected / 1000.0;
        verdict(rate >= 0.03 && rate <= 0.07, "2.2", "ADF size on random walks, T=500, nominal 5%",
                fmt("rejection rate %.3f over 1000 seeds (cv %.3f)", rate, cv));
    }
    {
        std::vector<CriticalValues> cvs;
        std::string cv_text;
        for (int r = 0; r < 3; ++r) {
            TestRecipe rec;
            rec.family = TestFamily::johansen_trace;
            rec.dimension = 3;
            rec.hypothesis = r;
            const auto s = monte_carlo_cv(rec, default_null_dgp(rec, 400), 2000, 4242);
            cvs.push_back(s.critical_values());
            cv_text += fmt("%s%.2f", r ? ", " : "", *s.quantiles[1]);
        }
        int correct = 0;
        for (std::uint64_t seed = 1; seed <= 200; ++seed) {
            auto sys = random_system(2, 400, 7000 + seed, 0.2);
            const auto u = oracle::gaussian(400, 99000 + seed);
            std::vector<double> y(400);
            double ar = 0.0;
            for (std::size_t i = 0; i < 400; ++i) {
                ar = 0.5 * ar + u[i];
                y[i] = sys[0][i] - 0.5 * sys[1][i] + ar;
            }
            sys.emplace_back("y", 1, y);
            auto o = johansen_test({sys, 1, Deterministic::constant, {}});
            attach_critical_values(o, cvs, {}, Confidence::c95);
            if (o.decided_rank == 1) ++correct;
        }
        verdict(correct >= 170, "2.3", "Johansen detects rank 1 in a trivariate system, T=400",
                fmt("%d/200 correct (95%% trace cvs %s from 2000 reps)", correct, cv_text.c_str()));
    }
    {
        int covered = 0;
        for (std::uint64_t seed = 1; seed <= 200; ++seed) {
            const std::size_t t = 200;
            const auto v = oracle::gaussian(t + 1, seed * 2 + 500000);
            const auto e = oracle::gaussian(t, seed * 2 + 500001, 0.5);
            std::vector<double> x(t), y(t);
            double level = 0.0, ar = 0.0;
            for (std::size_t i = 0; i < t; ++i) {
                level += v[i];
                x[i] = level;
                ar = 0.3 * ar + e[i];
                const double u = ar + 0.5 * v[i] + 0.3 * (i ? v[i - 1] : 0.0) + 0.2 * v[i + 1];
                y[i] = 1.0 + 0.8 * x[i] + u;
            }
            DolsSpec spec{Series("y", 1, y), {Series("x", 1, x)}};
            spec.trend = false;
            spec.leads = 1;
            spec.lags = 1;
            const DolsFit fit = dols_fit(spec);
            const auto& c = fit.at("x");
            const boost::math::students_t dist(static_cast<double>(fit.nobs - fit.k));
            const double crit = boost::math::quantile(boost::math::complement(dist, 0.025));
            if (std::fabs(c.estimate - 0.8) <= crit * c.hac_se) ++covered;
        }
        verdict(covered >= 176, "2.4", "DOLS 95% HAC interval coverage on an endogenous-regressor DGP",
                fmt("%d/200 intervals cover the true coefficient", covered));
    }
    const double elapsed = timer.seconds();
    verdict(elapsed < 600.0, "2.R", "Monte Carlo suite runtime under 10 minutes", fmt("%.1f s", elapsed));
}

// ---------------------------------------------------------------- suite 3

struct PublishedUnitRoot {
    std::string test;
    std::string series;
    double statistic;
    Decision decision;
    std::vector<int> breaks;
};

const std::vector<PublishedUnitRoot> kPublishedUnitRoot = {
    {"adf", "lnY", 3.700, Decision::accept_unit_root, {}},
    {"pp", "lnY", 2.617, Decision::accept_unit_root, {}},
    {"adf", "lnP", 0.348, Decision::accept_unit_root, {}},
    {"pp", "lnP", 0.346, Decision::accept_unit_root, {}},
    {"adf", "lnE", -4.508, Decision::reject_unit_root, {}},
    {"pp", "lnE", -4.946, Decision::reject_unit_root, {}},
    {"adf", "lnI", -3.835, Decision::accept_unit_root, {}},
    {"pp", "lnI", -3.734, Decision::accept_unit_root, {}},
    {"zivot_andrews", "lnE", -4.207, Decision::accept_unit_root, {1983}},
    {"zivot_andrews", "lnY", -4.942, Decision::reject_unit_root, {2004}},
    {"perron_io", "lnP", -3.202, Decision::accept_unit_root, {1998}},
    {"zivot_andrews", "lnI", -5.308, Decision::reject_unit_root, {2000}},
    {"lumsdaine_papell", "lnE", -5.050, Decision::accept_unit_root, {1976, 1980}},
    {"lumsdaine_papell", "lnP", -3.526, Decision::accept_unit_root, {1979, 1986}},
    {"clemente_io", "lnE", -4.427, Decision::accept_unit_root, {1975, 2004}},
    {"clemente_io", "lnP", -5.139, Decision::accept_unit_root, {1984, 2002}},
};

/// Rows the criterion names explicitly with a +/-0.25 band.
const std::vector<std::pair<std::string, std::string>> kBanded = {
    {"adf", "lnY"}, {"pp", "lnE"}, {"zivot_andrews", "lnI"}, {"lumsdaine_papell", "lnE"}, {"clemente_io", "lnE"}};

struct PublishedJohansen {
    std::string label;
    std::vector<double> trace;
    int rank;
};

const std::vector<PublishedJohansen> kPublishedJohansen = {
    {"1983", {78.78, 44.03}, 1},
    {"2000", {105.51, 67.04, 33.34}, 2},
    {"1983, 2000", {105.24, 59.29}, 1},
};

struct PublishedCoefficient {
    std::string name;
    double estimate;
    double se;
    int stars;  // 0 none, 1 = 10%, 2 = 5%, 3 = 1%
};

const std::vector<PublishedCoefficient> kModel1 = {
    {"lnY", 1.765902, 0.330706, 3}, {"lnP", 0.006475, 0.024808, 0}, {"lnI", -1.219197, 0.222253, 3}};
const std::vector<PublishedCoefficient> kModel2 = {
    {"lnY", 1.225363, 0.580153, 2}, {"lnP", -0.027041, 0.041382, 0}, {"lnI", -1.017343, 0.277015, 2}};

int stars(double p) { return p < 0.01 ? 3 : p < 0.05 ? 2 : p < 0.10 ? 1 : 0; }

const char* decision_text(Decision d) { return to_string(d); }

std::string years_text(const std::vector<int>& ys) {
    std::string s;
    for (int y : ys) s += (s.empty() ? "" : "/") + std::to_string(y);
    return s.empty() ? "-" : s;
}

void suite_replication() {
    const Timer timer;
    const auto meta = nlohmann::json::parse(std::ifstream(kRoot / "data" / "snapshot_metadata.json"));
    const std::string actual = file_checksum(kRoot / "data" / "ecuador_energy_1970_2015.csv");
    const bool recorded_match = meta.value("fnv1a64", "") == actual;
    const bool vintage = meta.value("vintage_verified", false) && meta["reference_checksum"].is_string() &&
                         meta["reference_checksum"].get<std::string>() == actual;
    info(fmt("snapshot checksum %s (%s recorded metadata); published-vintage reference %s", actual.c_str(),
             recorded_match ? "matches" : "DIFFERS FROM",
             vintage ? "matches" : "unavailable or mismatched"));
    const bool downgraded = !vintage;
    if (downgraded) {
        info("suite 3 downgraded: only decision / sign / significance patterns are gated; "
             "numeric comparisons below are informational");
    }

    AnalysisConfig config = load_config(kRoot / "configs" / "replication.json");
    for (auto& t : config.unit_root_tests) t.only_if_unresolved = false;  // every published row is needed
    const AnalysisReport report = run_analysis(config);
    for (const auto& e : report.errors) info("pipeline error " + e.stage + "/" + e.item + ": " + e.message);

    // 3.1 unit roots
    {
        std::vector<std::string> decision_mismatch, band_miss, year_miss;
        for (const auto& pub : kPublishedUnitRoot) {
            const UnitRootRow* row = nullptr;
            for (const auto& r : report.unit_root) {
                if (r.outcome.test == pub.test && r.outcome.series == pub.series) row = &r;
            }
            const std::string id = pub.test + " " + pub.series;
            if (!row) {
                decision_mismatch.push_back(id + " missing");
                continue;
            }
            const auto& o = row->outcome;
            std::vector<int> years;
            for (const auto& b : o.breaks) years.push_back(b.year);
            info(fmt("%-18s %-4s ours %8.3f %-17s breaks %-9s | published %8.3f %-17s breaks %s", pub.test.c_str(),
                     pub.series.c_str(), o.statistic, decision_text(o.decision), years_text(years).c_str(),
                     pub.statistic, decision_text(pub.decision), years_text(pub.breaks).c_str()));
            if (o.decision != pub.decision) decision_mismatch.push_back(id);
            if (years != pub.breaks) year_miss.push_back(id);
            for (const auto& [t, s] : kBanded) {
                if (t == pub.test && s == pub.series && std::fabs(o.statistic - pub.statistic) > 0.25) {
                    band_miss.push_back(id + fmt(" (%+.3f)", o.statistic - pub.statistic));
                }
            }
        }
        auto join = [](const std::vector<std::string>& v) {
            std::string s;
            for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
            return s.empty() ? std::string("none") : s;
        };
        const bool ok = downgraded ? decision_mismatch.empty()
                                   : decision_mismatch.empty() && band_miss.empty() && year_miss.empty();
        verdict(ok, "3.1", downgraded ? "unit-root accept/reject decisions match the published tables"
                                      : "unit-root statistics within 0.25, decisions and break years exact",
                "decision mismatches: " + join(decision_mismatch) + "; outside 0.25: " + join(band_miss) +
                    "; break-year mismatches: " + join(year_miss));
    }

    // 3.2 Johansen
    {
        std::string detail;
        bool ranks_ok = true, band_ok = true;
        for (const auto& pub : kPublishedJohansen) {
            const JohansenReport* jr = nullptr;
            for (const auto& j : report.johansen) {
                if (j.label == pub.label) jr = &j;
            }
            if (!jr) {
                ranks_ok = false;
                detail += pub.label + " missing; ";
                continue;
            }
            const auto& o = jr->outcome;
            std::string ours, theirs;
            for (std::size_t r = 0; r < pub.trace.size() && r < o.trace.size(); ++r) {
                ours += fmt("%s%.2f", r ? ", " : "", o.trace[r]);
                theirs += fmt("%s%.2f", r ? ", " : "", pub.trace[r]);
                band_ok = band_ok && std::fabs(o.trace[r] - pub.trace[r]) <= 3.0;
            }
            const int rank = o.decided_rank ? *o.decided_rank : -1;
            info(fmt("johansen %-10s lags %d trace [%s] rank %d | published [%s] rank %d", pub.label.c_str(),
                     o.lag_order, ours.c_str(), rank, theirs.c_str(), pub.rank));
            ranks_ok = ranks_ok && rank == pub.rank;
            detail += fmt("%s: rank %d vs %d; ", pub.label.c_str(), rank, pub.rank);
        }
        const bool ok = downgraded ? ranks_ok : ranks_ok && band_ok;
        verdict(ok, "3.2", downgraded ? "Johansen decided ranks at 90% match (1, 2, 1)"
                                      : "Johansen trace within 3.0 and ranks match (1, 2, 1)",
                detail + fmt("trace within 3.0: %s", band_ok ? "yes" : "no"));
    }

    // 3.3 DOLS
    {
        auto model = [&](const std::string& name) -> const DolsReport* {
            for (const auto& d : report.dols) {
                if (d.name == name) return &d;
            }
            return nullptr;
        };
        const DolsReport* m1 = model("Model 1");
        const DolsReport* m2 = model("Model 2");
        bool pattern_ok = m1 && m2, band_ok = m1 != nullptr;
        std::string detail;
        auto compare = [&](const DolsReport* m, const std::vector<PublishedCoefficient>& pub, bool strict_band) {
            for (const auto& p : pub) {
                const auto& c = m->fit.at(p.name);
                const int s = stars(c.p_value);
                info(fmt("%s %-4s ours %9.4f [%.4f] stars %d | published %9.4f [%.4f] stars %d", m->name.c_str(),
                         p.name.c_str(), c.estimate, c.hac_se, s, p.estimate, p.se, p.stars));
                const bool sign_ok = p.stars == 0 || (c.estimate > 0) == (p.estimate > 0);
                const bool sig_ok = s == p.stars;
                if (!sign_ok || !sig_ok) {
                    pattern_ok = false;
                    detail += m->name + " " + p.name + (sign_ok ? "" : " sign") + (sig_ok ? "" : " significance") + "; ";
                }
                if (strict_band && std::fabs(c.estimate - p.estimate) > 0.15) band_ok = false;
            }
        };
        if (m1) compare(m1, kModel1, true);
        if (m2) compare(m2, kModel2, false);
        if (m1) {
            info(fmt("Model 1 adj. R2 %.3f, S.E. %.3f, long-run variance %.5f, Jarque-Bera %.2f | published 0.99, 0.04, "
                     "0.0014, 0.88",
                     m1->fit.r2_adjusted, m1->fit.regression_se, m1->fit.long_run_variance.value,
                     m1->fit.jarque_bera.statistic));
            for (const auto& e : m1->elasticities) {
                info("Model 1 elasticity " + e.label + ": " + e.classification + " " + e.direction);
            }
        }
        const bool ok = downgraded ? pattern_ok : pattern_ok && band_ok;
        verdict(ok, "3.3", downgraded ? "DOLS Model 1 and Model 2 sign and significance patterns match"
                                      : "DOLS Model 1 within 0.15 with pattern; Model 2 pattern",
                (detail.empty() ? std::string("pattern matches; ") : "mismatches: " + detail) +
                    fmt("Model 1 within 0.15: %s", band_ok ? "yes" : "no"));
    }

    // Single-number reference points attached to individual operations.
    {
        if (report.johansen.size() > 0) {
            info(fmt("VAR lag choice for the 1983 configuration (SIC): %d | published 1",
                     report.johansen[0].lag_selection.sic));
        }
        for (const auto& r : report.unit_root) {
            if (r.outcome.test == "pp" && r.outcome.series == "lnE" && r.outcome.bandwidth) {
                info(fmt("PP lnE bandwidth %d | published 1", *r.outcome.bandwidth));
            }
        }
    }

    const double elapsed = timer.seconds();
    verdict(elapsed < 30.0, "3.R", "replication suite runtime under 30 seconds", fmt("%.1f s", elapsed));
}

// ---------------------------------------------------------------- suite 4

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

void suite_determinism(const std::string& cli) {
    const fs::path base = fs::temp_directory_path() / "ecm_acceptance_determinism";
    fs::remove_all(base);
    std::vector<std::string> outputs;
    bool ran = true;
    for (const char* run : {"a", "b"}) {
        const fs::path dir = base / run;
        const std::string cmd = "\"" + cli + "\" run -q -c \"" + (kRoot / "configs" / "replication.json").string() +
                                "\" -o \"" + dir.string() + "\" -f json";
        ran = ran && std::system(cmd.c_str()) == 0;
        outputs.push_back(slurp(dir / "report.json"));
    }
    const bool identical = ran && !outputs[0].empty() && outputs[0] == outputs[1];
    verdict(identical, "4.1", "two full runs of the replication config produce byte-identical JSON",
            fmt("%zu bytes each, exit codes %s", outputs[0].size(), ran ? "0" : "non-zero"));
    fs::remove_all(base);
}

}  // namespace

int main(int argc, char** argv) {
    std::string suite = "all";
    std::string cli = "ecm";
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string flag = argv[i];
        if (flag == "--suite") suite = argv[i + 1];
        if (flag == "--cli") cli = argv[i + 1];
    }
    const std::map<std::string, std::function<void()>> suites = {
        {"identity", suite_identity},
        {"monte_carlo", suite_monte_carlo},
        {"replication", suite_replication},
        {"determinism", [&] { suite_determinism(cli); }},
    };
    try {
        for (const auto& name : {"identity", "monte_carlo", "replication", "determinism"}) {
            if (suite == "all" || suite == name) suites.at(name)();
        }
    } catch (const std::exception& e) {
        verdict(false, "X", "suite aborted", e.what());
    }
    std::printf("%d criterion failure(s)\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
