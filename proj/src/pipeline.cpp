#include "ecm/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <json.hpp>
#include <set>
#include <sstream>

#include "ecm/errors.hpp"

namespace ecm {

const char* artifact_version() noexcept { return ECM_VERSION; }

namespace {

using json = nlohmann::json;

// ------------------------------------------------------------------ CSV

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

[[noreturn]] void schema_error(std::size_t row, const std::string& column, const std::string& what) {
    fail(ErrorKind::schema_error, "row " + std::to_string(row) + ", column '" + column + "': " + what);
}

struct RawTable {
    std::vector<std::string> header;  // without the year column
    std::vector<int> years;
    std::vector<std::size_t> rows;    // 1-based line numbers, header is row 1
    std::vector<std::vector<std::string>> cells;  // per data row, per header column
};

RawTable read_table(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::io_failure, "cannot open data file " + path.string());
    std::string line;
    if (!std::getline(in, line)) fail(ErrorKind::schema_error, "row 1: empty file " + path.string());
    if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    std::vector<std::string> header = split_csv(trim(line));
    if (header.empty() || header.front() != "year") schema_error(1, header.empty() ? "" : header.front(), "first column must be 'year'");
    std::set<std::string> seen;
    for (std::size_t j = 1; j < header.size(); ++j) {
        if (header[j].empty()) schema_error(1, "#" + std::to_string(j + 1), "empty column name");
        if (!seen.insert(header[j]).second) schema_error(1, header[j], "duplicate column name");
    }

    RawTable t;
    t.header.assign(header.begin() + 1, header.end());
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        const std::string content = trim(line);
        if (content.empty()) continue;
        std::vector<std::string> cells = split_csv(content);
        if (cells.size() != header.size()) {
            schema_error(row, "", "expected " + std::to_string(header.size()) + " fields, found " +
                                      std::to_string(cells.size()));
        }
        int year = 0;
        const std::string& y = cells.front();
        const auto [ptr, ec] = std::from_chars(y.data(), y.data() + y.size(), year);
        if (ec != std::errc() || ptr != y.data() + y.size()) schema_error(row, "year", "not an integer year: '" + y + "'");
        if (!t.years.empty()) {
            const int prev = t.years.back();
            if (year == prev) schema_error(row, "year", "duplicate year " + std::to_string(year));
            if (year < prev) schema_error(row, "year", "years must increase (" + std::to_string(year) + " after " + std::to_string(prev) + ")");
            if (year > prev + 1) {
                fail(ErrorKind::gap_in_years, "gap in years: " + std::to_string(prev + 1) + " missing before row " +
                                                  std::to_string(row));
            }
        }
        t.years.push_back(year);
        t.rows.push_back(row);
        cells.erase(cells.begin());
        t.cells.push_back(std::move(cells));
    }
    if (t.years.empty()) fail(ErrorKind::schema_error, "row 2: no data rows in " + path.string());
    return t;
}

Series parse_column(const RawTable& t, const std::string& column) {
    const auto it = std::find(t.header.begin(), t.header.end(), column);
    if (it == t.header.end()) schema_error(1, column, "column not found");
    const auto j = static_cast<std::size_t>(it - t.header.begin());
    std::vector<double> values(t.years.size());
    for (std::size_t i = 0; i < t.years.size(); ++i) {
        const std::string& cell = t.cells[i][j];
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
            schema_error(t.rows[i], column, "not a number: '" + cell + "'");
        }
        values[i] = v;
    }
    return Series(column, t.years.front(), std::move(values));
}

std::string hex64(std::uint64_t v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
    return buf;
}

// --------------------------------------------------------------- config

class Node {
public:
    Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

    bool has(const std::string& key) const { return j_.is_object() && j_.contains(key) && !j_.at(key).is_null(); }
    Node at(const std::string& key) const {
        if (!has(key)) fail(ErrorKind::config_error, field(key) + ": required field missing");
        return Node(j_.at(key), field(key));
    }
    Node operator[](std::size_t i) const { return Node(j_.at(i), path_ + "[" + std::to_string(i) + "]"); }
    std::size_t size() const { return j_.size(); }
    const std::string& path() const { return path_; }

    std::string str() const {
        if (!j_.is_string()) bad("a string");
        return j_.get<std::string>();
    }
    double num() const {
        if (!j_.is_number()) bad("a number");
        return j_.get<double>();
    }
    long long integer() const {
        if (!j_.is_number_integer()) bad("an integer");
        return j_.get<long long>();
    }
    bool boolean() const {
        if (!j_.is_boolean()) bad("true or false");
        return j_.get<bool>();
    }
    Node list() const {
        if (!j_.is_array()) bad("a list");
        return *this;
    }
    void object() const {
        if (!j_.is_object()) bad("an object");
    }

    std::string str_or(const std::string& key, std::string d) const { return has(key) ? at(key).str() : d; }
    double num_or(const std::string& key, double d) const { return has(key) ? at(key).num() : d; }
    long long int_or(const std::string& key, long long d) const { return has(key) ? at(key).integer() : d; }
    bool bool_or(const std::string& key, bool d) const { return has(key) ? at(key).boolean() : d; }

    template <class Fn>
    auto convert(Fn&& fn) const {
        try {
            return fn(str());
        } catch (const Error& e) {
            fail(ErrorKind::config_error, path_ + ": " + e.what());
        }
    }

private:
    std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
    [[noreturn]] void bad(const char* what) const { fail(ErrorKind::config_error, path_ + ": expected " + what); }

    const json& j_;
    std::string path_;
};

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& text) {
    std::filesystem::path p(text);
    return p.is_absolute() ? p : (base / p).lexically_normal();
}

Confidence level_of(const Node& n) {
    try {
        return parse_confidence(n.num());
    } catch (const Error& e) {
        fail(ErrorKind::config_error, n.path() + ": " + e.what());
    }
}

LagSelection lags_of(const Node& parent) {
    LagSelection l;
    if (!parent.has("lags")) return l;
    const Node n = parent.at("lags");
    n.object();
    if (n.has("method")) l.method = n.at("method").convert(parse_lag_method);
    l.max_lag = static_cast<int>(n.int_or("max_lag", l.max_lag));
    l.gts_level = n.num_or("gts_level", l.gts_level);
    if (l.max_lag < 0) fail(ErrorKind::config_error, n.path() + ".max_lag: must be non-negative");
    return l;
}

std::vector<int> years_of(const Node& parent, const std::string& key) {
    std::vector<int> out;
    if (!parent.has(key)) return out;
    const Node list = parent.at(key).list();
    for (std::size_t i = 0; i < list.size(); ++i) out.push_back(static_cast<int>(list[i].integer()));
    return out;
}

const std::set<std::string> kUnitRootTests{"adf", "pp", "zivot_andrews", "perron", "lumsdaine_papell", "clemente"};

}  // namespace

std::string file_checksum(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::io_failure, "cannot open " + path.string());
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::istreambuf_iterator<char> it(in), end; it != end; ++it) {
        h ^= static_cast<unsigned char>(*it);
        h *= 0x100000001b3ULL;
    }
    return hex64(h);
}

IngestResult ingest_csv(const std::filesystem::path& path, const std::vector<std::string>& columns) {
    const RawTable t = read_table(path);
    IngestResult r;
    r.first_year = t.years.front();
    r.last_year = t.years.back();
    r.checksum = file_checksum(path);
    const std::vector<std::string>& wanted = columns.empty() ? t.header : columns;
    for (const auto& c : wanted) r.series.push_back(parse_column(t, c));
    return r;
}

AnalysisConfig config_from_json_text(const std::string& text, const std::filesystem::path& base_dir) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::config_error, std::string("config is not valid JSON: ") + e.what());
    }
    const Node root(doc, "");
    root.object();
    AnalysisConfig c;

    const Node data = root.at("data");
    c.data_path_text = data.at("path").str();
    c.data_path = resolve(base_dir, c.data_path_text);

    const Node vars = root.at("variables").list();
    std::set<std::string> names, columns;
    int responses = 0;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        const Node v = vars[i];
        VariableConfig vc;
        vc.column = v.at("column").str();
        vc.log = v.bool_or("log", true);
        vc.name = v.str_or("name", vc.log ? "ln" + vc.column : vc.column);
        vc.label = v.str_or("label", vc.name);
        const std::string role = v.str_or("role", "regressor");
        if (role != "response" && role != "regressor") {
            fail(ErrorKind::config_error, v.path() + ".role: expected 'response' or 'regressor'");
        }
        vc.response = role == "response";
        responses += vc.response ? 1 : 0;
        if (!names.insert(vc.name).second) fail(ErrorKind::config_error, v.path() + ".name: duplicate name " + vc.name);
        if (!columns.insert(vc.column).second) {
            fail(ErrorKind::config_error, v.path() + ".column: column " + vc.column + " mapped twice");
        }
        c.variables.push_back(vc);
    }
    if (responses != 1) fail(ErrorKind::config_error, "variables: exactly one response required, found " + std::to_string(responses));

    c.seed = static_cast<std::uint64_t>(root.int_or("seed", 0));

    if (root.has("critical_values")) {
        const Node cv = root.at("critical_values");
        if (cv.has("cache_dir")) c.cv_cache_dir = resolve(base_dir, cv.at("cache_dir").str());
        c.monte_carlo_fallback = cv.bool_or("monte_carlo_fallback", c.monte_carlo_fallback);
        const long long reps = cv.int_or("replications", static_cast<long long>(c.cv_replications));
        if (reps < 1000) fail(ErrorKind::config_error, cv.path() + ".replications: at least 1000 required");
        c.cv_replications = static_cast<std::size_t>(reps);
    }

    if (root.has("unit_root")) {
        const Node ur = root.at("unit_root");
        if (ur.has("level")) c.unit_root_level = level_of(ur.at("level"));
        if (ur.has("tests")) {
            const Node tests = ur.at("tests").list();
            for (std::size_t i = 0; i < tests.size(); ++i) {
                const Node t = tests[i];
                UnitRootTestConfig tc;
                tc.test = t.at("test").str();
                if (!kUnitRootTests.count(tc.test)) fail(ErrorKind::config_error, t.path() + ".test: unknown test " + tc.test);
                tc.series = t.at("series").str();
                if (!names.count(tc.series)) {
                    fail(ErrorKind::config_error, t.path() + ".series: no variable named " + tc.series);
                }
                if (t.has("deterministic")) tc.deterministic = t.at("deterministic").convert(parse_deterministic);
                else if (tc.test == "zivot_andrews" || tc.test == "lumsdaine_papell") tc.deterministic = Deterministic::constant_trend;
                tc.lags = lags_of(t);
                if (t.has("bandwidth")) tc.bandwidth = static_cast<int>(t.at("bandwidth").integer());
                if (t.has("break")) tc.break_kind = t.at("break").convert(parse_break_kind);
                if (t.has("style")) {
                    const std::string s = t.at("style").str();
                    if (s != "io" && s != "ao") fail(ErrorKind::config_error, t.path() + ".style: expected 'io' or 'ao'");
                    tc.style = s == "io" ? BreakStyle::innovational_outlier : BreakStyle::additive_outlier;
                }
                if (t.has("variant")) {
                    const std::string s = t.at("variant").str();
                    if (s != "io" && s != "ao") fail(ErrorKind::config_error, t.path() + ".variant: expected 'io' or 'ao'");
                    tc.variant = s == "io" ? ClementeVariant::innovational : ClementeVariant::additive;
                }
                tc.trim = t.num_or("trim", tc.trim);
                if (t.has("year")) tc.year = static_cast<int>(t.at("year").integer());
                tc.only_if_unresolved = t.bool_or("only_if_unresolved", tc.only_if_unresolved);
                if ((tc.test == "zivot_andrews" || tc.test == "perron") && !tc.break_kind) {
                    fail(ErrorKind::config_error, t.path() + ".break: required for " + tc.test);
                }
                c.unit_root_tests.push_back(tc);
            }
        }
    }

    if (root.has("cointegration")) {
        const Node co = root.at("cointegration");
        if (co.has("level")) c.cointegration_level = level_of(co.at("level"));
        c.var_max_lag = static_cast<int>(co.int_or("max_lag", c.var_max_lag));
        c.lag_criterion = co.str_or("lag_criterion", c.lag_criterion);
        if (c.lag_criterion != "aic" && c.lag_criterion != "sic" && c.lag_criterion != "hq") {
            fail(ErrorKind::config_error, co.path() + ".lag_criterion: expected aic, sic or hq");
        }
        if (co.has("configurations")) {
            const Node list = co.at("configurations").list();
            for (std::size_t i = 0; i < list.size(); ++i) {
                const Node n = list[i];
                JohansenConfig jc;
                jc.breaks = years_of(n, "breaks");
                std::string label;
                for (int y : jc.breaks) label += (label.empty() ? "" : ", ") + std::to_string(y);
                jc.label = n.str_or("label", label.empty() ? "no break" : label);
                jc.trend_interaction = n.bool_or("trend_interaction", jc.trend_interaction);
                jc.include_trend = n.bool_or("include_trend", jc.include_trend);
                if (n.has("lags")) jc.lags = static_cast<int>(n.at("lags").integer());
                c.johansen.push_back(jc);
            }
        }
    }

    if (root.has("dols")) {
        const Node d = root.at("dols");
        c.dols_level = d.num_or("level", c.dols_level);
        if (d.has("models")) {
            const Node list = d.at("models").list();
            for (std::size_t i = 0; i < list.size(); ++i) {
                const Node n = list[i];
                DolsModelConfig m;
                m.name = n.str_or("name", "Model " + std::to_string(i + 1));
                m.breaks = years_of(n, "breaks");
                m.constant = n.bool_or("constant", m.constant);
                m.trend = n.bool_or("trend", m.trend);
                m.trend_interaction = n.bool_or("trend_interaction", m.trend_interaction);
                m.leads = static_cast<int>(n.int_or("leads", m.leads));
                m.lags = static_cast<int>(n.int_or("lags", m.lags));
                m.product_form = n.bool_or("product_form", m.product_form);
                c.dols_models.push_back(m);
            }
        }
    }

    if (root.has("output")) {
        const Node o = root.at("output");
        if (o.has("directory")) c.output_dir = resolve(base_dir, o.at("directory").str());
        if (o.has("formats")) {
            c.formats.clear();
            const Node f = o.at("formats").list();
            for (std::size_t i = 0; i < f.size(); ++i) {
                const std::string s = f[i].str();
                if (s != "text" && s != "json" && s != "csv_bundle") {
                    fail(ErrorKind::config_error, f[i].path() + ": unknown format " + s);
                }
                c.formats.push_back(s);
            }
        }
    }
    if (c.output_dir.empty()) c.output_dir = resolve(base_dir, "out");
    return c;
}

AnalysisConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::config_error, "cannot read config " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return config_from_json_text(ss.str(), path.parent_path());
}

// ------------------------------------------------------------------- run

namespace {

void check_year(int year, int first, int last, const std::string& field) {
    if (year <= first || year >= last) {
        fail(ErrorKind::config_error, field + ": break year " + std::to_string(year) + " outside the interior of " +
                                          std::to_string(first) + "-" + std::to_string(last));
    }
}

void validate_years(const AnalysisConfig& c, int first, int last) {
    for (std::size_t i = 0; i < c.unit_root_tests.size(); ++i) {
        if (c.unit_root_tests[i].year) {
            check_year(*c.unit_root_tests[i].year, first, last, "unit_root.tests[" + std::to_string(i) + "].year");
        }
    }
    for (std::size_t i = 0; i < c.johansen.size(); ++i) {
        for (std::size_t b = 0; b < c.johansen[i].breaks.size(); ++b) {
            check_year(c.johansen[i].breaks[b], first, last,
                       "cointegration.configurations[" + std::to_string(i) + "].breaks[" + std::to_string(b) + "]");
        }
    }
    for (std::size_t i = 0; i < c.dols_models.size(); ++i) {
        for (std::size_t b = 0; b < c.dols_models[i].breaks.size(); ++b) {
            check_year(c.dols_models[i].breaks[b], first, last,
                       "dols.models[" + std::to_string(i) + "].breaks[" + std::to_string(b) + "]");
        }
    }
}

enum class Phase { standard, single_break, two_break };

Phase phase_of(const std::string& test) {
    if (test == "adf" || test == "pp") return Phase::standard;
    if (test == "zivot_andrews" || test == "perron") return Phase::single_break;
    return Phase::two_break;
}

class Runner {
public:
    Runner(const AnalysisConfig& c, AnalysisReport& r) : config_(c), report_(r), table_(CriticalValueTable::bundled()) {
        if (!c.cv_cache_dir.empty()) {
            try {
                table_.load_directory(c.cv_cache_dir);
            } catch (const Error& e) {
                record("critical_values", c.cv_cache_dir.filename().string(), e);
            }
        }
    }

    void record(const std::string& stage, const std::string& item, const Error& e) {
        report_.errors.push_back({stage, item, to_string(e.kind()), e.what()});
    }

    const Series* find(const std::string& name) const {
        const auto it = series_.find(name);
        return it == series_.end() ? nullptr : &it->second;
    }
    const Series& need(const std::string& name) const {
        const Series* s = find(name);
        if (!s) fail(ErrorKind::schema_error, "series " + name + " is unavailable (ingestion failed)");
        return *s;
    }

    void ingest() {
        const RawTable table = read_table(config_.data_path);
        first_year_ = table.years.front();
        last_year_ = table.years.back();
        report_.provenance = {config_.data_path_text, file_checksum(config_.data_path), config_.seed,
                              artifact_version()};
        validate_years(config_, first_year_, last_year_);
        for (const auto& v : config_.variables) {
            try {
                Series raw = parse_column(table, v.column);
                Series s = v.log ? log_transform(raw) : raw;
                s = s.renamed(v.name);
                report_.series.push_back({v.name, v.column, v.log, s.start_year(), s.end_year(), s.size()});
                series_.emplace(v.name, std::move(s));
            } catch (const Error& e) {
                record("ingest", v.name, e);
            }
        }
    }

    CriticalValues resolve(const TestRecipe& recipe, std::size_t length, const std::vector<double>& fractions,
                           bool allow_mc, std::vector<std::string>& warnings) {
        try {
            LookupResult r = table_.find(recipe.family, recipe.spec_key(), length, fractions);
            warnings.insert(warnings.end(), r.warnings.begin(), r.warnings.end());
            return r.values;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::not_tabulated) throw;
            if (!allow_mc || !config_.monte_carlo_fallback) {
                warnings.push_back(std::string(e.what()) + "; no decision");
                return {};
            }
        }
        const CriticalValueSurface s =
            monte_carlo_cv(recipe, default_null_dgp(recipe, length, fractions), config_.cv_replications, config_.seed);
        table_.add(s);
        warnings.push_back("critical values simulated: " + s.provenance.label());
        return s.critical_values();
    }

    UnitRootRow unit_root_test(const UnitRootTestConfig& t) {
        const Series& s = need(t.series);
        TestRecipe recipe;
        recipe.deterministic = t.deterministic;
        recipe.break_kind = t.break_kind;
        recipe.lags = t.lags;
        recipe.bandwidth = t.bandwidth;
        recipe.trim = t.trim;
        std::vector<double> fractions;
        bool allow_mc = true;
        UnitRootOutcome o;
        if (t.test == "adf") {
            recipe.family = TestFamily::adf;
            o = adf(s, t.deterministic, t.lags);
        } else if (t.test == "pp") {
            recipe.family = TestFamily::pp;
            o = phillips_perron(s, t.deterministic, t.bandwidth);
        } else if (t.test == "zivot_andrews") {
            recipe.family = TestFamily::zivot_andrews;
            o = zivot_andrews(s, {t.deterministic, BreakStyle::innovational_outlier, t.break_kind, t.lags}, t.trim);
        } else if (t.test == "perron") {
            recipe.family = t.style == BreakStyle::additive_outlier ? TestFamily::perron_ao : TestFamily::perron_io;
            const UnitRootModelSpec spec{t.deterministic, t.style, t.break_kind, t.lags};
            if (t.year) {
                const BreakDate b = make_break(s, *t.year);
                fractions = {b.fraction};
                o = perron_known_break(s, spec, b);
            } else {
                allow_mc = false;
                o = perron_endogenous(s, spec, t.trim);
            }
        } else if (t.test == "lumsdaine_papell") {
            recipe.family = TestFamily::lumsdaine_papell;
            o = lumsdaine_papell(s, t.trim, t.lags);
        } else {
            recipe.family =
                t.variant == ClementeVariant::innovational ? TestFamily::clemente_io : TestFamily::clemente_ao;
            o = clemente(s, t.variant, t.trim, t.lags);
        }
        UnitRootRow row;
        const CriticalValues cv = resolve(recipe, s.size(), fractions, allow_mc, row.warnings);
        apply_decision(o, {cv, config_.unit_root_level});
        row.outcome = std::move(o);
        return row;
    }

    void unit_root_stage() {
        std::set<std::string> resolved;
        for (Phase phase : {Phase::standard, Phase::single_break, Phase::two_break}) {
            for (const auto& t : config_.unit_root_tests) {
                if (phase_of(t.test) != phase) continue;
                const std::string item = t.test + ":" + t.series;
                if (phase == Phase::two_break && t.only_if_unresolved && resolved.count(t.series)) {
                    report_.notes.push_back(item + " skipped: a single-break test already rejected the unit root");
                    continue;
                }
                try {
                    UnitRootRow row = unit_root_test(t);
                    if (phase == Phase::single_break && row.outcome.decision == Decision::reject_unit_root) {
                        resolved.insert(t.series);
                    }
                    if (!row.outcome.breaks.empty()) {
                        std::vector<int> years;
                        for (const auto& b : row.outcome.breaks) years.push_back(b.year);
                        report_.breaks.push_back({t.series, row.outcome.test, years, to_string(row.outcome.decision)});
                    }
                    report_.unit_root.push_back(std::move(row));
                } catch (const Error& e) {
                    record("unit_root", item, e);
                }
            }
        }
    }

    std::vector<Series> endogenous() const {
        std::vector<Series> out;
        for (const auto& v : config_.variables) out.push_back(need(v.name));
        return out;
    }

    void cointegration_stage() {
        for (const auto& jc : config_.johansen) {
            try {
                JohansenReport rep;
                rep.label = jc.label;
                rep.break_years = jc.breaks;
                const std::vector<Series> endo = endogenous();
                const Series& first = endo.front();
                std::vector<BreakDate> breaks;
                std::vector<double> fractions;
                for (int y : jc.breaks) {
                    breaks.push_back(make_break(first, y));
                    fractions.push_back(breaks.back().fraction);
                }
                VarSpec spec{endo, 1, Deterministic::constant,
                             break_exogenous(first.size(), first.start_year(), breaks, jc.trend_interaction,
                                             jc.include_trend)};
                rep.lag_selection = var_lag_select(spec, config_.var_max_lag);
                if (jc.lags) {
                    rep.lag_criterion = "fixed";
                    spec.lag_order = *jc.lags;
                } else {
                    rep.lag_criterion = config_.lag_criterion;
                    spec.lag_order = config_.lag_criterion == "aic"   ? rep.lag_selection.aic
                                     : config_.lag_criterion == "hq" ? rep.lag_selection.hq
                                                                      : rep.lag_selection.sic;
                }
                JohansenOutcome out = johansen_test(spec);
                const int n = static_cast<int>(endo.size());
                std::vector<CriticalValues> trace_cv, max_cv;
                for (int r = 0; r < n; ++r) {
                    TestRecipe recipe;
                    recipe.family = TestFamily::johansen_trace;
                    recipe.deterministic = Deterministic::constant;
                    recipe.dimension = n;
                    recipe.hypothesis = r;
                    recipe.var_lags = spec.lag_order;
                    recipe.break_count = breaks.size();
                    recipe.trend_interaction = jc.trend_interaction;
                    recipe.include_trend = jc.include_trend;
                    std::vector<std::string> w;
                    trace_cv.push_back(resolve(recipe, first.size(), fractions, false, w));
                    recipe.family = TestFamily::johansen_max;
                    max_cv.push_back(resolve(recipe, first.size(), fractions, false, w));
                    for (auto& s : w) {
                        if (std::find(rep.warnings.begin(), rep.warnings.end(), s) == rep.warnings.end()) {
                            rep.warnings.push_back(std::move(s));
                        }
                    }
                }
                attach_critical_values(out, std::move(trace_cv), std::move(max_cv), config_.cointegration_level);
                rep.outcome = std::move(out);
                report_.johansen.push_back(std::move(rep));
            } catch (const Error& e) {
                record("cointegration", jc.label, e);
            }
        }
    }

    void dols_stage() {
        std::map<std::string, std::string> labels;
        for (const auto& v : config_.variables) labels[v.name] = v.label;
        for (const auto& m : config_.dols_models) {
            try {
                const VariableConfig* response = nullptr;
                std::vector<Series> regressors;
                for (const auto& v : config_.variables) {
                    if (v.response) response = &v;
                    else regressors.push_back(need(v.name));
                }
                DolsSpec spec{need(response->name), regressors, true, true, {}, 0, 1, false, std::nullopt, false};
                spec.constant = m.constant;
                spec.trend = m.trend;
                spec.leads = m.leads;
                spec.lags = m.lags;
                spec.product_form = m.product_form;
                for (int y : m.breaks) spec.breaks.push_back({make_break(spec.response, y), true, m.trend_interaction});
                DolsReport rep;
                rep.name = m.name;
                rep.break_years = m.breaks;
                rep.leads = m.leads;
                rep.lags = m.lags;
                rep.level = config_.dols_level;
                rep.fit = dols_fit(spec);
                rep.elasticities = elasticity_report(rep.fit, config_.dols_level, labels);
                report_.dols.push_back(std::move(rep));
            } catch (const Error& e) {
                record("dols", m.name, e);
            }
        }
    }

private:
    const AnalysisConfig& config_;
    AnalysisReport& report_;
    CriticalValueTable table_;
    std::map<std::string, Series> series_;
    int first_year_ = 0;
    int last_year_ = 0;
};

}  // namespace

AnalysisReport run_analysis(const AnalysisConfig& config) {
    AnalysisReport report;
    Runner runner(config, report);
    try {
        runner.ingest();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::config_error) throw;
        throw Error(e.kind(), std::string("ingest: ") + e.what());
    }
    if (config.run_unit_root) runner.unit_root_stage();
    if (config.run_cointegration) runner.cointegration_stage();
    if (config.run_dols) runner.dols_stage();
    return report;
}

}  // namespace ecm
