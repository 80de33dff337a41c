#include "ecm/critical_values.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "ecm/cointegration.hpp"
#include "ecm/errors.hpp"

namespace ecm {

namespace {

constexpr std::array<Confidence, 3> kLevels{Confidence::c90, Confidence::c95, Confidence::c99};
constexpr std::size_t kMinReplications = 1000;
constexpr int kFormatVersion = 1;

std::size_t level_index(Confidence c) { return static_cast<std::size_t>(c); }

bool is_johansen(TestFamily f) { return f == TestFamily::johansen_trace || f == TestFamily::johansen_max; }
bool is_perron(TestFamily f) { return f == TestFamily::perron_ao || f == TestFamily::perron_io; }
bool is_endogenous(TestFamily f) {
    return f == TestFamily::zivot_andrews || f == TestFamily::lumsdaine_papell || f == TestFamily::clemente_io ||
           f == TestFamily::clemente_ao;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", v);
    return buf;
}

double parse_double(const std::string& text, const std::string& field) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size()) {
        fail(ErrorKind::schema_mismatch, "cache field " + field + " is not a number: " + text);
    }
    return v;
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
    return buf;
}

std::string base_of(const std::string& key) { return key.substr(0, key.find('|')); }

std::size_t break_index_for(double fraction, std::size_t length) {
    const auto tb = static_cast<std::size_t>(std::lround(fraction * static_cast<double>(length)));
    return std::clamp<std::size_t>(tb, 1, length - 1);
}

bool same_fractions(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] - b[i]) > 1e-9) return false;
    }
    return true;
}

std::string format_trim(double trim) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", trim);
    return buf;
}

}  // namespace

const char* to_string(TestFamily f) noexcept {
    switch (f) {
        case TestFamily::adf: return "adf";
        case TestFamily::pp: return "pp";
        case TestFamily::perron_ao: return "perron_ao";
        case TestFamily::perron_io: return "perron_io";
        case TestFamily::zivot_andrews: return "zivot_andrews";
        case TestFamily::lumsdaine_papell: return "lumsdaine_papell";
        case TestFamily::clemente_io: return "clemente_io";
        case TestFamily::clemente_ao: return "clemente_ao";
        case TestFamily::johansen_trace: return "johansen_trace";
        case TestFamily::johansen_max: return "johansen_max";
    }
    return "?";
}

TestFamily parse_test_family(const std::string& text) {
    for (int i = 0; i <= static_cast<int>(TestFamily::johansen_max); ++i) {
        const auto f = static_cast<TestFamily>(i);
        if (text == to_string(f)) return f;
    }
    fail(ErrorKind::config_error, "unknown test family: " + text);
}

bool is_right_tail(TestFamily f) noexcept { return is_johansen(f); }

std::string Provenance::label() const {
    if (kind == Kind::bundled_table) return "bundled_table";
    return "monte_carlo(seed=" + std::to_string(seed) + ", replications=" + std::to_string(replications) + ")";
}

CriticalValues CriticalValueSurface::critical_values() const {
    CriticalValues cv;
    for (Confidence c : kLevels) {
        if (quantiles[level_index(c)]) cv.set(c, *quantiles[level_index(c)]);
    }
    cv.provenance = provenance.label();
    return cv;
}

std::string johansen_spec_key(int dimension, int hypothesis, std::size_t breaks, bool trend_interaction,
                              bool include_trend) {
    std::string key = "n" + std::to_string(dimension) + ":r" + std::to_string(hypothesis) + ":breaks" +
                      std::to_string(breaks);
    if (breaks > 0 && trend_interaction) key += ":TB";
    if (include_trend) key += ":T";
    return key;
}

std::string TestRecipe::base_key() const {
    UnitRootModelSpec spec{deterministic, BreakStyle::none, break_kind, lags};
    switch (family) {
        case TestFamily::adf:
        case TestFamily::pp: return adf_spec_key(deterministic);
        case TestFamily::perron_ao:
            spec.style = BreakStyle::additive_outlier;
            return perron_spec_key(spec);
        case TestFamily::perron_io:
            spec.style = BreakStyle::innovational_outlier;
            return perron_spec_key(spec);
        case TestFamily::zivot_andrews: return zivot_andrews_spec_key(spec);
        case TestFamily::lumsdaine_papell: return lumsdaine_papell_spec_key();
        case TestFamily::clemente_io: return clemente_spec_key(ClementeVariant::innovational);
        case TestFamily::clemente_ao: return clemente_spec_key(ClementeVariant::additive);
        case TestFamily::johansen_trace:
        case TestFamily::johansen_max:
            return std::string(to_string(deterministic)) + ":" +
                   johansen_spec_key(dimension, hypothesis, break_count, trend_interaction, include_trend);
    }
    return "?";
}

std::string TestRecipe::spec_key() const {
    std::string key = base_key();
    if (is_johansen(family)) return key + "|p=" + std::to_string(var_lags);
    if (family == TestFamily::pp) {
        return key + "|bw=" + (bandwidth ? std::to_string(*bandwidth) : std::string("auto"));
    }
    key += "|k=" + std::string(to_string(lags.method)) + std::to_string(lags.max_lag);
    if (is_endogenous(family)) key += "|trim=" + format_trim(trim);
    return key;
}

NullDgpSpec default_null_dgp(const TestRecipe& recipe, std::size_t length, std::vector<double> break_fractions) {
    NullDgpSpec dgp;
    dgp.length = length;
    dgp.break_fractions = std::move(break_fractions);
    if (is_johansen(recipe.family)) {
        dgp.process = NullDgpSpec::Process::var_unit_root;
        dgp.dimension = recipe.dimension;
        dgp.rank = recipe.hypothesis;
        dgp.drift = recipe.deterministic == Deterministic::none ? 0.0 : 1.0;
    }
    return dgp;
}

std::vector<Series> simulate_null(const NullDgpSpec& dgp, std::uint64_t seed, std::uint64_t replicate) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(replicate), static_cast<std::uint32_t>(replicate >> 32)};
    std::mt19937_64 gen(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    const std::size_t t = dgp.length;

    auto walk = [&](double drift) {
        std::vector<double> v(t);
        double level = 0.0;
        for (std::size_t i = 0; i < t; ++i) {
            level += drift + normal(gen);
            v[i] = level;
        }
        return v;
    };

    std::vector<Series> out;
    switch (dgp.process) {
        case NullDgpSpec::Process::random_walk: out.emplace_back("y", 1, walk(0.0)); break;
        case NullDgpSpec::Process::random_walk_with_drift: out.emplace_back("y", 1, walk(dgp.drift)); break;
        case NullDgpSpec::Process::var_unit_root: {
            if (dgp.dimension < 2 || dgp.rank < 0 || dgp.rank >= dgp.dimension) {
                fail(ErrorKind::infeasible_spec, "VAR null needs n >= 2 and 0 <= r < n");
            }
            for (int j = 0; j < dgp.dimension; ++j) {
                const std::string name = "x" + std::to_string(j + 1);
                if (j < dgp.rank) {
                    std::vector<double> v(t);
                    for (auto& x : v) x = normal(gen);
                    out.emplace_back(name, 1, std::move(v));
                } else {
                    out.emplace_back(name, 1, walk(dgp.drift));
                }
            }
            break;
        }
    }
    return out;
}

double run_recipe(const TestRecipe& r, const std::vector<Series>& columns, const std::vector<double>& fractions) {
    if (columns.empty()) fail(ErrorKind::dimension_mismatch, "no series supplied");
    const Series& s = columns.front();
    UnitRootModelSpec spec{r.deterministic, BreakStyle::none, r.break_kind, r.lags};
    switch (r.family) {
        case TestFamily::adf: return adf(s, r.deterministic, r.lags).statistic;
        case TestFamily::pp: return phillips_perron(s, r.deterministic, r.bandwidth).statistic;
        case TestFamily::perron_ao:
        case TestFamily::perron_io: {
            if (fractions.size() != 1) fail(ErrorKind::infeasible_spec, "a known-break test needs one break fraction");
            spec.style = r.family == TestFamily::perron_ao ? BreakStyle::additive_outlier
                                                           : BreakStyle::innovational_outlier;
            const std::size_t tb = break_index_for(fractions[0], s.size());
            return perron_known_break(s, spec, make_break(s, s.start_year() + static_cast<int>(tb) - 1)).statistic;
        }
        case TestFamily::zivot_andrews:
            spec.style = BreakStyle::innovational_outlier;
            return zivot_andrews(s, spec, r.trim, {}, Execution::serial).statistic;
        case TestFamily::lumsdaine_papell: return lumsdaine_papell(s, r.trim, r.lags, {}, Execution::serial).statistic;
        case TestFamily::clemente_io:
            return clemente(s, ClementeVariant::innovational, r.trim, r.lags, {}, Execution::serial).statistic;
        case TestFamily::clemente_ao:
            return clemente(s, ClementeVariant::additive, r.trim, r.lags, {}, Execution::serial).statistic;
        case TestFamily::johansen_trace:
        case TestFamily::johansen_max: {
            std::vector<BreakDate> breaks;
            for (double f : fractions) {
                const std::size_t tb = break_index_for(f, s.size());
                breaks.push_back(make_break(s, s.start_year() + static_cast<int>(tb) - 1));
            }
            VarSpec v{columns, r.var_lags, r.deterministic,
                      break_exogenous(s.size(), s.start_year(), breaks, r.trend_interaction, r.include_trend)};
            const JohansenOutcome o = johansen_test(v);
            const auto h = static_cast<std::size_t>(r.hypothesis);
            if (h >= o.trace.size()) fail(ErrorKind::infeasible_spec, "hypothesis r must be below n");
            return r.family == TestFamily::johansen_trace ? o.trace[h] : o.max_eigen[h];
        }
    }
    fail(ErrorKind::infeasible_spec, "unsupported test family");
}

double sample_quantile(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) fail(ErrorKind::sample_too_small, "quantile of an empty sample");
    const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double quantile_standard_error(const std::vector<double>& sorted, double q) {
    // Width of the distribution-free 95% interval for the quantile, whose
    // bounds are the order statistics at n q -/+ 1.96 sqrt(n q (1 - q)).
    constexpr double z = 1.959963984540054;
    const double n = static_cast<double>(sorted.size());
    const double centre = n * q;
    const double spread = z * std::sqrt(n * q * (1.0 - q));
    const double last = n - 1.0;
    const auto lo = static_cast<std::size_t>(std::clamp(std::floor(centre - spread), 0.0, last));
    const auto hi = static_cast<std::size_t>(std::clamp(std::ceil(centre + spread), 0.0, last));
    return (sorted[hi] - sorted[lo]) / (2.0 * z);
}

std::vector<double> monte_carlo_draws(const TestRecipe& recipe, const NullDgpSpec& dgp, std::size_t replications,
                                      std::uint64_t seed, Execution exec) {
    if (replications < kMinReplications) {
        fail(ErrorKind::infeasible_spec, "at least " + std::to_string(kMinReplications) + " replications required");
    }
    const auto& fr = dgp.break_fractions;
    if (is_perron(recipe.family)) {
        if (fr.size() != 1 || fr[0] < recipe.trim || fr[0] > 1.0 - recipe.trim) {
            fail(ErrorKind::infeasible_spec, "break fraction must lie inside the trimmed range [" +
                                                 format_trim(recipe.trim) + ", " + format_trim(1.0 - recipe.trim) +
                                                 "]");
        }
    } else if (is_johansen(recipe.family)) {
        if (fr.size() != recipe.break_count) {
            fail(ErrorKind::infeasible_spec, "recipe expects " + std::to_string(recipe.break_count) + " break fractions");
        }
        for (double f : fr) {
            if (!(f > 0.0 && f < 1.0)) fail(ErrorKind::infeasible_spec, "break fraction must lie in (0, 1)");
        }
    } else if (!fr.empty()) {
        fail(ErrorKind::infeasible_spec, std::string(to_string(recipe.family)) + " takes no break fractions");
    }
    return replicate_map(exec, replications, [&](std::size_t i) {
        return run_recipe(recipe, simulate_null(dgp, seed, i), fr);
    });
}

CriticalValueSurface monte_carlo_cv(const TestRecipe& recipe, const NullDgpSpec& dgp, std::size_t replications,
                                    std::uint64_t seed, Execution exec) {
    std::vector<double> draws = monte_carlo_draws(recipe, dgp, replications, seed, exec);
    std::sort(draws.begin(), draws.end());

    CriticalValueSurface s;
    s.family = recipe.family;
    s.spec_key = recipe.spec_key();
    const NullDgpSpec standard = default_null_dgp(recipe, dgp.length, dgp.break_fractions);
    if (dgp.process != standard.process || dgp.drift != standard.drift) {
        s.spec_key += "|dgp=" + std::string(dgp.process == NullDgpSpec::Process::random_walk ? "rw"
                                            : dgp.process == NullDgpSpec::Process::random_walk_with_drift
                                                ? "rwd"
                                                : "var") +
                      ":" + format_double(dgp.drift);
    }
    s.sample_size = dgp.length;
    s.break_fractions = dgp.break_fractions;
    s.provenance = {Provenance::Kind::monte_carlo, seed, replications};
    const bool right = is_right_tail(recipe.family);
    for (Confidence c : kLevels) {
        const double q = right ? confidence_value(c) : 1.0 - confidence_value(c);
        s.quantiles[level_index(c)] = sample_quantile(draws, q);
        s.standard_errors[level_index(c)] = quantile_standard_error(draws, q);
    }
    const double a = *s.quantiles[0], b = *s.quantiles[1], c = *s.quantiles[2];
    const bool monotone = right ? (a <= b && b <= c) : (a >= b && b >= c);
    if (!monotone) fail(ErrorKind::infeasible_spec, "simulated quantiles are not monotone in the confidence level");
    return s;
}

std::filesystem::path surface_cache_path(const std::filesystem::path& dir, const CriticalValueSurface& s) {
    std::string slug;
    for (char ch : base_of(s.spec_key)) slug += std::isalnum(static_cast<unsigned char>(ch)) ? ch : '-';
    std::string fr;
    for (double f : s.break_fractions) fr += format_double(f);
    const std::string identity = s.spec_key + "#" + fr;
    std::string name = std::string(to_string(s.family)) + "_" + slug + "_T" +
                       (s.sample_size ? std::to_string(*s.sample_size) : std::string("inf")) + "_" +
                       hex64(fnv1a(identity)).substr(0, 8);
    if (s.provenance.kind == Provenance::Kind::monte_carlo) {
        name += "_s" + std::to_string(s.provenance.seed) + "_r" + std::to_string(s.provenance.replications);
    } else {
        name += "_bundled";
    }
    return dir / (name + ".cv");
}

std::filesystem::path surface_cache_store(const std::filesystem::path& dir, const CriticalValueSurface& s) {
    std::ostringstream body;
    body << "family=" << to_string(s.family) << "\n";
    body << "spec_key=" << s.spec_key << "\n";
    body << "sample_size=" << (s.sample_size ? std::to_string(*s.sample_size) : std::string("asymptotic")) << "\n";
    body << "break_fractions=";
    for (std::size_t i = 0; i < s.break_fractions.size(); ++i) {
        body << (i ? "," : "") << format_double(s.break_fractions[i]);
    }
    body << "\n";
    static const char* tags[] = {"90", "95", "99"};
    for (std::size_t i = 0; i < 3; ++i) {
        body << "q" << tags[i] << "=" << (s.quantiles[i] ? format_double(*s.quantiles[i]) : std::string("NA")) << "\n";
        body << "se" << tags[i] << "=" << format_double(s.standard_errors[i]) << "\n";
    }
    body << "provenance="
         << (s.provenance.kind == Provenance::Kind::monte_carlo ? "monte_carlo" : "bundled_table") << "\n";
    body << "seed=" << s.provenance.seed << "\n";
    body << "replications=" << s.provenance.replications << "\n";
    const std::string text = body.str();

    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    const auto path = surface_cache_path(dir, s);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::io_failure, "cannot write critical value cache " + path.string());
    out << "ecm-cv-surface " << kFormatVersion << "\n" << text << "checksum=" << hex64(fnv1a(text)) << "\n";
    if (!out) fail(ErrorKind::io_failure, "write failed for " + path.string());
    return path;
}

CriticalValueSurface surface_cache_load(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) fail(ErrorKind::io_failure, "cannot open critical value cache " + file.string());
    std::string header;
    std::getline(in, header);
    if (header != "ecm-cv-surface " + std::to_string(kFormatVersion)) {
        fail(ErrorKind::schema_mismatch, file.string() + ": unsupported format header '" + header + "'");
    }
    std::string line, body, checksum;
    std::map<std::string, std::string> fields;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(ErrorKind::schema_mismatch, file.string() + ": malformed line '" + line + "'");
        const std::string key = line.substr(0, eq);
        if (key == "checksum") {
            checksum = line.substr(eq + 1);
            break;
        }
        body += line + "\n";
        fields[key] = line.substr(eq + 1);
    }
    if (checksum.empty() || checksum != hex64(fnv1a(body))) {
        fail(ErrorKind::schema_mismatch, file.string() + ": checksum mismatch");
    }
    auto get = [&](const std::string& key) {
        const auto it = fields.find(key);
        if (it == fields.end()) fail(ErrorKind::schema_mismatch, file.string() + ": missing field " + key);
        return it->second;
    };

    CriticalValueSurface s;
    s.family = parse_test_family(get("family"));
    s.spec_key = get("spec_key");
    const std::string t = get("sample_size");
    if (t != "asymptotic") s.sample_size = static_cast<std::size_t>(std::stoull(t));
    std::stringstream fr(get("break_fractions"));
    for (std::string item; std::getline(fr, item, ',');) s.break_fractions.push_back(parse_double(item, "break_fractions"));
    static const char* tags[] = {"90", "95", "99"};
    for (std::size_t i = 0; i < 3; ++i) {
        const std::string q = get(std::string("q") + tags[i]);
        if (q != "NA") s.quantiles[i] = parse_double(q, "quantile");
        s.standard_errors[i] = parse_double(get(std::string("se") + tags[i]), "standard error");
    }
    s.provenance.kind = get("provenance") == "monte_carlo" ? Provenance::Kind::monte_carlo
                                                          : Provenance::Kind::bundled_table;
    s.provenance.seed = std::stoull(get("seed"));
    s.provenance.replications = static_cast<std::size_t>(std::stoull(get("replications")));
    return s;
}

CriticalValueTable CriticalValueTable::bundled() {
    CriticalValueTable t;
    auto add = [&t](TestFamily f, std::string key, std::vector<double> fractions, std::optional<double> c90,
                    std::optional<double> c95, std::optional<double> c99) {
        CriticalValueSurface s;
        s.family = f;
        s.spec_key = std::move(key);
        s.break_fractions = std::move(fractions);
        s.quantiles = {c90, c95, c99};
        t.add(std::move(s));
    };
    for (TestFamily f : {TestFamily::adf, TestFamily::pp}) {
        add(f, "none", {}, -1.612, -1.948, -2.617);
        add(f, "constant", {}, -2.567, -2.862, -3.430);
        add(f, "constant_trend", {}, -3.187, -3.513, -4.176);
    }
    add(TestFamily::zivot_andrews, "za:constant_trend:trend", {}, std::nullopt, -4.52, std::nullopt);
    add(TestFamily::perron_io, "io:constant:intercept", {}, std::nullopt, -4.44, std::nullopt);
    add(TestFamily::clemente_io, "io:mean_shift", {}, std::nullopt, -5.490, std::nullopt);

    // Johansen trace values for a four-variable system at T = 46 with
    // breaks after observations 14 and 31, B and T(B) as exogenous terms.
    const double f1 = 14.0 / 46.0, f2 = 31.0 / 46.0;
    const std::vector<std::pair<std::vector<double>, std::array<std::array<double, 3>, 4>>> johansen = {
        {{f1}, {{{78.38, 82.60, 90.91}, {53.85, 57.43, 64.57}, {33.13, 36.06, 41.98}, {16.05, 18.24, 22.85}}}},
        {{f2}, {{{78.95, 83.18, 91.52}, {54.35, 57.95, 65.11}, {33.53, 36.47, 42.40}, {16.28, 18.46, 23.04}}}},
        {{f1, f2},
         {{{100.57, 105.37, 114.77}, {71.13, 75.23, 83.34}, {45.34, 48.69, 55.38}, {22.62, 25.06, 30.07}}}},
    };
    for (const auto& [fractions, rows] : johansen) {
        for (int r = 0; r < 4; ++r) {
            const auto& v = rows[static_cast<std::size_t>(r)];
            add(TestFamily::johansen_trace,
                "constant:" + johansen_spec_key(4, r, fractions.size(), true, false), fractions, v[0], v[1], v[2]);
        }
    }
    return t;
}

void CriticalValueTable::add(CriticalValueSurface surface) { surfaces_.push_back(std::move(surface)); }

void CriticalValueTable::load_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) return;
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".cv") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) add(surface_cache_load(f));
}

LookupResult CriticalValueTable::find(TestFamily family, const std::string& spec_key, std::size_t length,
                                      const std::vector<double>& fractions) const {
    const std::string base = base_of(spec_key);
    for (const auto& s : surfaces_) {
        if (s.family != family || s.sample_size || s.spec_key != base) continue;
        if (!s.break_fractions.empty() && !same_fractions(s.break_fractions, fractions)) continue;
        if (length < 30) continue;
        LookupResult r{s.critical_values(), {}};
        if (length < 50) {
            r.warnings.push_back("asymptotic " + std::string(to_string(family)) + " critical values applied at T=" +
                                 std::to_string(length));
        }
        return r;
    }
    for (const auto& s : surfaces_) {
        if (s.family != family || !s.sample_size || *s.sample_size != length || s.spec_key != spec_key) continue;
        if (!same_fractions(s.break_fractions, fractions)) continue;
        return {s.critical_values(), {}};
    }
    fail(ErrorKind::not_tabulated, std::string("no critical values for ") + to_string(family) + " " + spec_key +
                                       " at T=" + std::to_string(length));
}

double CriticalValueTable::lookup(TestFamily family, const std::string& spec_key, std::size_t length,
                                  const std::vector<double>& fractions, Confidence level) const {
    const auto v = find(family, spec_key, length, fractions).values.at(level);
    if (!v) {
        fail(ErrorKind::not_tabulated, std::string("no ") + std::to_string(confidence_value(level)) +
                                           " critical value for " + to_string(family) + " " + spec_key);
    }
    return *v;
}

}  // namespace ecm
