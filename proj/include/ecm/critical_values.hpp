#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ecm/parallel.hpp"
#include "ecm/series.hpp"
#include "ecm/unit_root.hpp"

namespace ecm {

enum class TestFamily {
    adf,
    pp,
    perron_ao,
    perron_io,
    zivot_andrews,
    lumsdaine_papell,
    clemente_io,
    clemente_ao,
    johansen_trace,
    johansen_max
};
const char* to_string(TestFamily f) noexcept;
TestFamily parse_test_family(const std::string& text);
/// True for the Johansen families, whose rejection region is the upper tail.
bool is_right_tail(TestFamily f) noexcept;

struct Provenance {
    enum class Kind { bundled_table, monte_carlo } kind = Kind::bundled_table;
    std::uint64_t seed = 0;
    std::size_t replications = 0;

    std::string label() const;
    bool operator==(const Provenance&) const = default;
};

struct CriticalValueSurface {
    TestFamily family = TestFamily::adf;
    std::string spec_key;
    std::optional<std::size_t> sample_size;  ///< nullopt means asymptotic
    std::vector<double> break_fractions;
    std::array<std::optional<double>, 3> quantiles;  ///< indexed by Confidence
    std::array<double, 3> standard_errors{0.0, 0.0, 0.0};
    Provenance provenance;

    CriticalValues critical_values() const;
    bool operator==(const CriticalValueSurface&) const = default;
};

struct NullDgpSpec {
    enum class Process { random_walk, random_walk_with_drift, var_unit_root } process = Process::random_walk;
    std::size_t length = 100;
    std::vector<double> break_fractions;
    double drift = 1.0;
    int dimension = 1;  ///< n for var_unit_root
    int rank = 0;       ///< cointegrating rank of the simulated VAR
};

/// Everything needed to re-run one test on a simulated sample.
struct TestRecipe {
    TestFamily family = TestFamily::adf;
    Deterministic deterministic = Deterministic::constant;
    std::optional<BreakKind> break_kind;
    LagSelection lags = LagSelection::fixed(0);
    std::optional<int> bandwidth;  ///< PP; nullopt = automatic
    double trim = 0.15;
    bool trend_interaction = true;  ///< Johansen exogenous T(B_i)
    bool include_trend = false;     ///< Johansen exogenous T
    int hypothesis = 0;             ///< Johansen r
    int dimension = 2;              ///< Johansen n
    int var_lags = 1;               ///< Johansen p (levels VAR order)
    std::size_t break_count = 0;    ///< Johansen number of break regressor sets

    /// Canonical model key, e.g. "none", "io:constant:intercept", "lp:constant_trend:both".
    std::string base_key() const;
    /// base_key plus a "|"-separated suffix with tuning that changes the simulated law.
    std::string spec_key() const;
};

/// The null process a recipe is simulated under unless told otherwise:
/// driftless random walks for unit-root families, and for Johansen n - r
/// random walks (with unit drift when a constant is present) beside r white
/// noise columns.
NullDgpSpec default_null_dgp(const TestRecipe& recipe, std::size_t length, std::vector<double> break_fractions = {});

/// Statistic of the recipe's test on one sample. `columns` is one series for
/// unit-root families and the endogenous block for Johansen.
double run_recipe(const TestRecipe& recipe, const std::vector<Series>& columns,
                  const std::vector<double>& break_fractions);

/// Draws one replicate of the null DGP; every column is dated from year 1.
std::vector<Series> simulate_null(const NullDgpSpec& dgp, std::uint64_t seed, std::uint64_t replicate);

/// Type-7 sample quantile of sorted data.
double sample_quantile(const std::vector<double>& sorted, double q);
/// Order-statistic standard error of the q-quantile.
double quantile_standard_error(const std::vector<double>& sorted, double q);

CriticalValueSurface monte_carlo_cv(const TestRecipe& recipe, const NullDgpSpec& dgp, std::size_t replications,
                                    std::uint64_t seed, Execution exec = Execution::parallel);

/// Raw replicate statistics; exposed for diagnostics and tests.
std::vector<double> monte_carlo_draws(const TestRecipe& recipe, const NullDgpSpec& dgp, std::size_t replications,
                                      std::uint64_t seed, Execution exec = Execution::parallel);

std::filesystem::path surface_cache_path(const std::filesystem::path& dir, const CriticalValueSurface& s);
std::filesystem::path surface_cache_store(const std::filesystem::path& dir, const CriticalValueSurface& s);
CriticalValueSurface surface_cache_load(const std::filesystem::path& file);

struct LookupResult {
    CriticalValues values;
    std::vector<std::string> warnings;
};

class CriticalValueTable {
public:
    /// Table preloaded with the bundled published values.
    static CriticalValueTable bundled();

    void add(CriticalValueSurface surface);
    /// Loads every *.cv file in `dir`; missing directories are ignored.
    void load_directory(const std::filesystem::path& dir);
    const std::vector<CriticalValueSurface>& surfaces() const noexcept { return surfaces_; }

    /// Monte Carlo surfaces are matched on the full key, sample size and break
    /// fractions; bundled asymptotic tables on the base key for T >= 30.
    /// Throws NotTabulated when nothing covers the request.
    LookupResult find(TestFamily family, const std::string& spec_key, std::size_t length,
                      const std::vector<double>& break_fractions) const;
    double lookup(TestFamily family, const std::string& spec_key, std::size_t length,
                  const std::vector<double>& break_fractions, Confidence level) const;

private:
    std::vector<CriticalValueSurface> surfaces_;
};

std::string johansen_spec_key(int dimension, int hypothesis, std::size_t breaks, bool trend_interaction,
                              bool include_trend);

}  // namespace ecm
