// Command-line front end: ingest, test, cointegrate, dols, run, cv.

#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "ecm/critical_values.hpp"
#include "ecm/errors.hpp"
#include "ecm/parallel.hpp"
#include "ecm/pipeline.hpp"
#include "ecm/report.hpp"

namespace {

struct RunOptions {
    std::string config;
    std::string out;
    std::vector<std::string> formats;
    std::optional<std::uint64_t> seed;
    bool quiet = false;
};

struct CvOptions {
    std::string family = "adf";
    std::uint64_t seed = 0;
    std::size_t length = 100;
    std::size_t replications = 2000;
    std::string deterministic = "constant";
    std::string break_kind;
    std::string lag_method = "fixed";
    int max_lag = 0;
    std::optional<int> bandwidth;
    double trim = 0.15;
    std::vector<double> fractions;
    int dimension = 2;
    int hypothesis = 0;
    int var_lags = 1;
    bool no_trend_interaction = false;
    bool include_trend = false;
    std::string cache_dir;
};

void add_run_options(CLI::App* cmd, RunOptions& o) {
    cmd->add_option("-c,--config", o.config, "analysis config (JSON)")->required();
    cmd->add_option("-o,--out", o.out, "output directory (overrides output.directory)");
    cmd->add_option("-f,--format", o.formats, "text, json and/or csv_bundle")->delimiter(',');
    cmd->add_option("--seed", o.seed, "seed for simulated critical values");
    cmd->add_flag("-q,--quiet", o.quiet, "do not print the text report");
}

int run_pipeline(const RunOptions& o, bool unit_root, bool cointegration, bool dols) {
    ecm::AnalysisConfig config = ecm::load_config(o.config);
    config.run_unit_root = unit_root;
    config.run_cointegration = cointegration;
    config.run_dols = dols;
    if (!o.out.empty()) config.output_dir = o.out;
    if (!o.formats.empty()) config.formats = o.formats;
    if (o.seed) config.seed = *o.seed;

    const ecm::AnalysisReport report = ecm::run_analysis(config);
    for (const auto& f : config.formats) {
        for (const auto& p : ecm::emit_report(report, ecm::parse_report_format(f), config.output_dir)) {
            std::cerr << "wrote " << p.string() << "\n";
        }
    }
    if (!o.quiet) std::cout << ecm::render_text(report);
    for (const auto& e : report.errors) std::cerr << "stage error [" << e.stage << "] " << e.item << ": " << e.message << "\n";
    return 0;
}

int run_ingest(const std::string& data, const std::vector<std::string>& columns) {
    const ecm::IngestResult r = ecm::ingest_csv(data, columns);
    std::cout << data << ": " << r.first_year << "-" << r.last_year << ", checksum " << r.checksum << "\n";
    for (const auto& s : r.series) {
        double lo = s[0], hi = s[0];
        for (std::size_t i = 0; i < s.size(); ++i) {
            lo = std::min(lo, s[i]);
            hi = std::max(hi, s[i]);
        }
        std::cout << "  " << s.name() << ": " << s.size() << " obs, min " << lo << ", max " << hi << "\n";
    }
    return 0;
}

int run_cv(const CvOptions& o) {
    ecm::TestRecipe recipe;
    recipe.family = ecm::parse_test_family(o.family);
    recipe.deterministic = ecm::parse_deterministic(o.deterministic);
    if (!o.break_kind.empty()) recipe.break_kind = ecm::parse_break_kind(o.break_kind);
    recipe.lags = {ecm::parse_lag_method(o.lag_method), o.max_lag, 0.10};
    recipe.bandwidth = o.bandwidth;
    recipe.trim = o.trim;
    recipe.dimension = o.dimension;
    recipe.hypothesis = o.hypothesis;
    recipe.var_lags = o.var_lags;
    recipe.break_count = o.fractions.size();
    recipe.trend_interaction = !o.no_trend_interaction;
    recipe.include_trend = o.include_trend;

    const ecm::NullDgpSpec dgp = ecm::default_null_dgp(recipe, o.length, o.fractions);
    const ecm::CriticalValueSurface s = ecm::monte_carlo_cv(recipe, dgp, o.replications, o.seed);
    std::cout << ecm::to_string(s.family) << " " << s.spec_key << " T=" << o.length << " "
              << s.provenance.label() << "\n";
    static const char* levels[] = {"90%", "95%", "99%"};
    for (std::size_t i = 0; i < 3; ++i) {
        std::printf("  %s  %10.4f  (mc se %.4f)\n", levels[i], *s.quantiles[i], s.standard_errors[i]);
    }
    if (!o.cache_dir.empty()) std::cout << "stored " << ecm::surface_cache_store(o.cache_dir, s).string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unit-root, cointegration and dynamic OLS analysis of annual time series"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "OpenMP worker threads (0 = default)");
    app.set_version_flag("--version", std::string(ecm::artifact_version()));

    std::string data;
    std::vector<std::string> columns;
    auto* ingest = app.add_subcommand("ingest", "validate a data file");
    ingest->add_option("data", data, "CSV file with a year column")->required();
    ingest->add_option("--columns", columns, "columns to validate (default: all)")->delimiter(',');

    RunOptions test_opts, coint_opts, dols_opts, run_opts;
    auto* test = app.add_subcommand("test", "unit-root battery only");
    add_run_options(test, test_opts);
    auto* coint = app.add_subcommand("cointegrate", "VAR lag selection and Johansen tests only");
    add_run_options(coint, coint_opts);
    auto* dols = app.add_subcommand("dols", "dynamic OLS models only");
    add_run_options(dols, dols_opts);
    auto* run = app.add_subcommand("run", "full pipeline");
    add_run_options(run, run_opts);

    CvOptions cv_opts;
    auto* cv = app.add_subcommand("cv", "simulate critical values");
    cv->add_option("--family", cv_opts.family, "adf, pp, perron_ao, perron_io, zivot_andrews, lumsdaine_papell, "
                                               "clemente_io, clemente_ao, johansen_trace, johansen_max");
    cv->add_option("--seed", cv_opts.seed, "random seed")->required();
    cv->add_option("-T,--length", cv_opts.length, "sample size");
    cv->add_option("-n,--replications", cv_opts.replications, "replications (>= 1000)");
    cv->add_option("--deterministic", cv_opts.deterministic, "none, constant or constant_trend");
    cv->add_option("--break", cv_opts.break_kind, "intercept, trend or both");
    cv->add_option("--lag-method", cv_opts.lag_method, "fixed, aic, sic, hq or gts");
    cv->add_option("--max-lag", cv_opts.max_lag, "lag order (fixed) or upper bound");
    cv->add_option("--bandwidth", cv_opts.bandwidth, "Phillips-Perron bandwidth");
    cv->add_option("--trim", cv_opts.trim, "trimming fraction");
    cv->add_option("--fractions", cv_opts.fractions, "break fractions")->delimiter(',');
    cv->add_option("--dimension", cv_opts.dimension, "Johansen: number of variables");
    cv->add_option("--hypothesis", cv_opts.hypothesis, "Johansen: rank under the null");
    cv->add_option("--var-lags", cv_opts.var_lags, "Johansen: VAR order in levels");
    cv->add_flag("--no-trend-interaction", cv_opts.no_trend_interaction, "Johansen: omit T(B) terms");
    cv->add_flag("--include-trend", cv_opts.include_trend, "Johansen: add a linear trend regressor");
    cv->add_option("--cache-dir", cv_opts.cache_dir, "store the surface in this directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (threads > 0) ecm::set_worker_count(threads);

    try {
        if (*ingest) return run_ingest(data, columns);
        if (*test) return run_pipeline(test_opts, true, false, false);
        if (*coint) return run_pipeline(coint_opts, false, true, false);
        if (*dols) return run_pipeline(dols_opts, false, false, true);
        if (*run) return run_pipeline(run_opts, true, true, true);
        if (*cv) return run_cv(cv_opts);
    } catch (const ecm::Error& e) {
        std::cerr << "error (" << ecm::to_string(e.kind()) << "): " << e.what() << "\n";
        return ecm::exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
