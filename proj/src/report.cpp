#include "ecm/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <sstream>

#include "ecm/errors.hpp"

namespace ecm {

namespace {

using ojson = nlohmann::ordered_json;
using json = nlohmann::json;

// ------------------------------------------------------------- writing

std::string number17(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write(std::ostringstream& out, const ojson& j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    const std::string close(static_cast<std::size_t>(indent), ' ');
    switch (j.type()) {
        case ojson::value_t::object: {
            if (j.empty()) {
                out << "{}";
                return;
            }
            out << "{\n";
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) out << ",\n";
                first = false;
                out << pad << ojson(key).dump() << ": ";
                write(out, value, indent + 2);
            }
            out << "\n" << close << "}";
            return;
        }
        case ojson::value_t::array: {
            if (j.empty()) {
                out << "[]";
                return;
            }
            out << "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out << ",\n";
                out << pad;
                write(out, j[i], indent + 2);
            }
            out << "\n" << close << "]";
            return;
        }
        case ojson::value_t::number_float: out << number17(j.get<double>()); return;
        default: out << j.dump(); return;
    }
}

ojson opt(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }
ojson opt(const std::optional<int>& v) { return v ? ojson(*v) : ojson(nullptr); }

ojson encode(const CriticalValues& cv) {
    return {{"c90", opt(cv.c90)}, {"c95", opt(cv.c95)}, {"c99", opt(cv.c99)}, {"provenance", cv.provenance}};
}

ojson encode(const UnitRootRow& row) {
    const UnitRootOutcome& o = row.outcome;
    ojson breaks = ojson::array();
    for (const auto& b : o.breaks) breaks.push_back({{"year", b.year}, {"fraction", b.fraction}});
    ojson dummies = ojson::array();
    for (const auto& d : o.dummies) {
        dummies.push_back({{"name", d.name},
                           {"coefficient", d.coefficient},
                           {"std_error", d.std_error},
                           {"t_stat", d.t_stat},
                           {"significant", d.significant}});
    }
    return {{"test", o.test},
            {"series", o.series},
            {"spec_key", o.spec_key},
            {"statistic", o.statistic},
            {"alpha_minus_one", o.alpha_minus_one},
            {"lags", o.lags},
            {"nobs", o.nobs},
            {"breaks", breaks},
            {"bandwidth", opt(o.bandwidth)},
            {"critical_values", encode(o.critical_values)},
            {"level", confidence_value(o.level)},
            {"decision", to_string(o.decision)},
            {"dummies", dummies},
            {"warnings", row.warnings}};
}

ojson encode(const VarLagSelection& s) {
    ojson rows = ojson::array();
    for (const auto& r : s.rows) {
        rows.push_back({{"lag", r.lag}, {"log_det", r.log_det}, {"aic", r.aic}, {"sic", r.sic}, {"hq", r.hq}});
    }
    return {{"rows", rows}, {"aic", s.aic}, {"sic", s.sic}, {"hq", s.hq}, {"nobs", s.nobs}};
}

ojson encode(const JohansenReport& r) {
    const JohansenOutcome& o = r.outcome;
    ojson tcv = ojson::array(), mcv = ojson::array();
    for (const auto& c : o.trace_cv) tcv.push_back(encode(c));
    for (const auto& c : o.max_cv) mcv.push_back(encode(c));
    ojson out = {{"label", r.label},
                 {"break_years", r.break_years},
                 {"lag_criterion", r.lag_criterion},
                 {"lag_selection", encode(r.lag_selection)}};
    out["outcome"] = {{"variables", o.variables},
                      {"exogenous", o.exogenous},
                      {"lag_order", o.lag_order},
                      {"nobs", o.nobs},
                      {"eigenvalues", o.eigenvalues},
                      {"trace", o.trace},
                      {"max_eigen", o.max_eigen},
                      {"trace_cv", tcv},
                      {"max_cv", mcv},
                      {"level", confidence_value(o.level)},
                      {"decided_rank", opt(o.decided_rank)},
                      {"trace_labels", o.trace_labels}};
    out["warnings"] = r.warnings;
    return out;
}

ojson encode(const DolsReport& r) {
    const DolsFit& f = r.fit;
    ojson coefs = ojson::array();
    for (const auto& c : f.coefficients) {
        coefs.push_back({{"name", c.name},
                         {"role", to_string(c.role)},
                         {"estimate", c.estimate},
                         {"classical_se", c.classical_se},
                         {"hac_se", c.hac_se},
                         {"t_stat", c.t_stat},
                         {"p_value", c.p_value}});
    }
    ojson el = ojson::array();
    for (const auto& e : r.elasticities) {
        el.push_back({{"regressor", e.regressor},
                      {"label", e.label},
                      {"value", e.value},
                      {"std_error", e.std_error},
                      {"significant", e.significant},
                      {"classification", e.classification},
                      {"direction", e.direction}});
    }
    ojson fit = {{"coefficients", coefs},
                 {"r2", f.r2},
                 {"r2_adjusted", f.r2_adjusted},
                 {"regression_se", f.regression_se},
                 {"residual_variance", f.residual_variance},
                 {"long_run_variance",
                  {{"value", f.long_run_variance.value}, {"bandwidth", f.long_run_variance.bandwidth}, {"kernel", "bartlett"}}},
                 {"jarque_bera",
                  {{"statistic", f.jarque_bera.statistic},
                   {"p_value", f.jarque_bera.p_value},
                   {"skewness", f.jarque_bera.skewness},
                   {"kurtosis", f.jarque_bera.kurtosis}}},
                 {"nobs", f.nobs},
                 {"k", f.k},
                 {"first_year", f.first_year},
                 {"last_year", f.last_year}};
    return {{"name", r.name}, {"break_years", r.break_years}, {"leads", r.leads}, {"lags", r.lags},
            {"level", r.level}, {"fit", fit}, {"elasticities", el}};
}

ojson encode(const AnalysisReport& r) {
    ojson out;
    out["schema_version"] = r.schema_version;
    out["provenance"] = {{"data_path", r.provenance.data_path},
                         {"data_checksum", r.provenance.data_checksum},
                         {"seed", r.provenance.seed},
                         {"version", r.provenance.version}};
    ojson series = ojson::array();
    for (const auto& s : r.series) {
        series.push_back({{"name", s.name}, {"column", s.column}, {"log", s.log}, {"first_year", s.first_year},
                          {"last_year", s.last_year}, {"nobs", s.nobs}});
    }
    out["series"] = series;
    ojson ur = ojson::array();
    for (const auto& row : r.unit_root) ur.push_back(encode(row));
    out["unit_root"] = ur;
    ojson breaks = ojson::array();
    for (const auto& b : r.breaks) {
        breaks.push_back({{"series", b.series}, {"test", b.test}, {"years", b.years}, {"decision", b.decision}});
    }
    out["breaks"] = breaks;
    ojson jo = ojson::array();
    for (const auto& j : r.johansen) jo.push_back(encode(j));
    out["johansen"] = jo;
    ojson dols = ojson::array();
    for (const auto& d : r.dols) dols.push_back(encode(d));
    out["dols"] = dols;
    ojson errors = ojson::array();
    for (const auto& e : r.errors) {
        errors.push_back({{"stage", e.stage}, {"item", e.item}, {"kind", e.kind}, {"message", e.message}});
    }
    out["errors"] = errors;
    out["notes"] = r.notes;
    return out;
}

// ------------------------------------------------------------- reading

double real(const json& j) { return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>(); }
std::optional<double> opt_real(const json& j) { return j.is_null() ? std::nullopt : std::optional<double>(j.get<double>()); }
std::optional<int> opt_int(const json& j) { return j.is_null() ? std::nullopt : std::optional<int>(j.get<int>()); }
std::vector<double> reals(const json& j) {
    std::vector<double> out;
    for (const auto& x : j) out.push_back(real(x));
    return out;
}

Decision parse_decision(const std::string& s) {
    for (Decision d : {Decision::reject_unit_root, Decision::accept_unit_root, Decision::inconclusive}) {
        if (s == to_string(d)) return d;
    }
    fail(ErrorKind::schema_mismatch, "unknown decision " + s);
}

CoefficientRole parse_role(const std::string& s) {
    for (CoefficientRole r : {CoefficientRole::long_run, CoefficientRole::deterministic, CoefficientRole::nuisance}) {
        if (s == to_string(r)) return r;
    }
    fail(ErrorKind::schema_mismatch, "unknown coefficient role " + s);
}

CriticalValues decode_cv(const json& j) {
    CriticalValues cv;
    cv.c90 = opt_real(j.at("c90"));
    cv.c95 = opt_real(j.at("c95"));
    cv.c99 = opt_real(j.at("c99"));
    cv.provenance = j.at("provenance").get<std::string>();
    return cv;
}

UnitRootRow decode_unit_root(const json& j) {
    UnitRootRow row;
    UnitRootOutcome& o = row.outcome;
    o.test = j.at("test").get<std::string>();
    o.series = j.at("series").get<std::string>();
    o.spec_key = j.at("spec_key").get<std::string>();
    o.statistic = real(j.at("statistic"));
    o.alpha_minus_one = real(j.at("alpha_minus_one"));
    o.lags = j.at("lags").get<int>();
    o.nobs = j.at("nobs").get<std::size_t>();
    for (const auto& b : j.at("breaks")) o.breaks.push_back({b.at("year").get<int>(), real(b.at("fraction"))});
    o.bandwidth = opt_int(j.at("bandwidth"));
    o.critical_values = decode_cv(j.at("critical_values"));
    o.level = parse_confidence(j.at("level").get<double>());
    o.decision = parse_decision(j.at("decision").get<std::string>());
    for (const auto& d : j.at("dummies")) {
        o.dummies.push_back({d.at("name").get<std::string>(), real(d.at("coefficient")), real(d.at("std_error")),
                             real(d.at("t_stat")), d.at("significant").get<bool>()});
    }
    row.warnings = j.at("warnings").get<std::vector<std::string>>();
    return row;
}

VarLagSelection decode_lags(const json& j) {
    VarLagSelection s;
    for (const auto& r : j.at("rows")) {
        s.rows.push_back({r.at("lag").get<int>(), real(r.at("log_det")), real(r.at("aic")), real(r.at("sic")),
                          real(r.at("hq"))});
    }
    s.aic = j.at("aic").get<int>();
    s.sic = j.at("sic").get<int>();
    s.hq = j.at("hq").get<int>();
    s.nobs = j.at("nobs").get<std::size_t>();
    return s;
}

JohansenReport decode_johansen(const json& j) {
    JohansenReport r;
    r.label = j.at("label").get<std::string>();
    r.break_years = j.at("break_years").get<std::vector<int>>();
    r.lag_criterion = j.at("lag_criterion").get<std::string>();
    r.lag_selection = decode_lags(j.at("lag_selection"));
    const json& o = j.at("outcome");
    JohansenOutcome& out = r.outcome;
    out.variables = o.at("variables").get<std::vector<std::string>>();
    out.exogenous = o.at("exogenous").get<std::vector<std::string>>();
    out.lag_order = o.at("lag_order").get<int>();
    out.nobs = o.at("nobs").get<std::size_t>();
    out.eigenvalues = reals(o.at("eigenvalues"));
    out.trace = reals(o.at("trace"));
    out.max_eigen = reals(o.at("max_eigen"));
    for (const auto& c : o.at("trace_cv")) out.trace_cv.push_back(decode_cv(c));
    for (const auto& c : o.at("max_cv")) out.max_cv.push_back(decode_cv(c));
    out.level = parse_confidence(o.at("level").get<double>());
    out.decided_rank = opt_int(o.at("decided_rank"));
    out.trace_labels = o.at("trace_labels").get<std::vector<std::string>>();
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    return r;
}

DolsReport decode_dols(const json& j) {
    DolsReport r;
    r.name = j.at("name").get<std::string>();
    r.break_years = j.at("break_years").get<std::vector<int>>();
    r.leads = j.at("leads").get<int>();
    r.lags = j.at("lags").get<int>();
    r.level = real(j.at("level"));
    const json& f = j.at("fit");
    DolsFit& fit = r.fit;
    for (const auto& c : f.at("coefficients")) {
        fit.coefficients.push_back({c.at("name").get<std::string>(), parse_role(c.at("role").get<std::string>()),
                                    real(c.at("estimate")), real(c.at("classical_se")), real(c.at("hac_se")),
                                    real(c.at("t_stat")), real(c.at("p_value"))});
    }
    fit.r2 = real(f.at("r2"));
    fit.r2_adjusted = real(f.at("r2_adjusted"));
    fit.regression_se = real(f.at("regression_se"));
    fit.residual_variance = real(f.at("residual_variance"));
    const json& lrv = f.at("long_run_variance");
    fit.long_run_variance = {real(lrv.at("value")), lrv.at("bandwidth").get<int>(), Kernel::bartlett};
    const json& jb = f.at("jarque_bera");
    fit.jarque_bera = {real(jb.at("statistic")), real(jb.at("p_value")), real(jb.at("skewness")),
                       real(jb.at("kurtosis"))};
    fit.nobs = f.at("nobs").get<std::size_t>();
    fit.k = f.at("k").get<std::size_t>();
    fit.first_year = f.at("first_year").get<int>();
    fit.last_year = f.at("last_year").get<int>();
    for (const auto& e : j.at("elasticities")) {
        r.elasticities.push_back({e.at("regressor").get<std::string>(), e.at("label").get<std::string>(),
                                  real(e.at("value")), real(e.at("std_error")), e.at("significant").get<bool>(),
                                  e.at("classification").get<std::string>(), e.at("direction").get<std::string>()});
    }
    return r;
}

// ------------------------------------------------------------- text

std::string fmt(const char* format, double v) {
    if (!std::isfinite(v)) return "NA";
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

std::string cell(const std::optional<double>& v, const char* format = "%.3f") { return v ? fmt(format, *v) : "-"; }

std::string pad(const std::string& s, std::size_t width, bool left = false) {
    if (s.size() >= width) return s;
    const std::string fill(width - s.size(), ' ');
    return left ? s + fill : fill + s;
}

std::string stars(double p) {
    if (p < 0.01) return "***";
    if (p < 0.05) return "**";
    if (p < 0.10) return "*";
    return "";
}

std::string years_text(const std::vector<int>& years) {
    std::string out;
    for (int y : years) out += (out.empty() ? "" : " / ") + std::to_string(y);
    return out.empty() ? "-" : out;
}

void render_unit_root(std::ostringstream& out, const AnalysisReport& r) {
    out << "UNIT ROOT TESTS\n";
    out << pad("Series", 8, true) << pad("Test", 18, true) << pad("Specification", 28, true) << pad("Statistic", 11)
        << pad("1%", 9) << pad("5%", 9) << pad("10%", 9) << pad("Lags", 6) << pad("BW", 5) << "  "
        << pad("Breaks", 13, true) << "Decision\n";
    for (const auto& row : r.unit_root) {
        const UnitRootOutcome& o = row.outcome;
        std::vector<int> years;
        for (const auto& b : o.breaks) years.push_back(b.year);
        out << pad(o.series, 8, true) << pad(o.test, 18, true) << pad(o.spec_key, 28, true)
            << pad(fmt("%.3f", o.statistic), 11) << pad(cell(o.critical_values.c99), 9)
            << pad(cell(o.critical_values.c95), 9) << pad(cell(o.critical_values.c90), 9)
            << pad(std::to_string(o.lags), 6) << pad(o.bandwidth ? std::to_string(*o.bandwidth) : "-", 5) << "  "
            << pad(years_text(years), 13, true) << to_string(o.decision) << "\n";
    }
    bool any = false;
    for (const auto& row : r.unit_root) {
        if (row.outcome.dummies.empty()) continue;
        if (!any) out << "\nBreak dummies (coefficient, standard error; * significant at 5%)\n";
        any = true;
        out << "  " << row.outcome.series << " " << row.outcome.test << ":";
        for (const auto& d : row.outcome.dummies) {
            out << "  " << d.name << " " << fmt("%.4f", d.coefficient) << " (" << fmt("%.4f", d.std_error) << ")"
                << (d.significant ? "*" : "");
        }
        out << "\n";
    }
    for (const auto& row : r.unit_root) {
        for (const auto& w : row.warnings) out << "  note [" << row.outcome.series << " " << row.outcome.test << "]: " << w << "\n";
    }
    out << "\n";
}

void render_johansen(std::ostringstream& out, const AnalysisReport& r) {
    out << "VAR LAG SELECTION\n";
    for (const auto& j : r.johansen) {
        out << "  Break " << j.label << " (nobs " << j.lag_selection.nobs << ")\n";
        out << "    " << pad("Lag", 5) << pad("AIC", 12) << pad("SIC", 12) << pad("HQ", 12) << "\n";
        for (const auto& row : j.lag_selection.rows) {
            out << "    " << pad(std::to_string(row.lag), 5) << pad(fmt("%.4f", row.aic), 12)
                << pad(fmt("%.4f", row.sic), 12) << pad(fmt("%.4f", row.hq), 12) << "\n";
        }
        out << "    chosen: AIC " << j.lag_selection.aic << ", SIC " << j.lag_selection.sic << ", HQ "
            << j.lag_selection.hq << "\n";
    }
    out << "\nJOHANSEN COINTEGRATION TESTS\n";
    out << pad("Break", 12, true) << pad("Lags", 5) << "  " << pad("Exogenous", 28, true) << pad("Rank", 8, true)
        << pad("Trace", 10) << pad("90%", 9) << pad("95%", 9) << pad("99%", 9) << pad("Max-eig", 10) << "  Conclusion\n";
    for (const auto& j : r.johansen) {
        const JohansenOutcome& o = j.outcome;
        std::string exog;
        for (const auto& e : o.exogenous) exog += (exog.empty() ? "" : ", ") + e;
        for (std::size_t i = 0; i < o.trace.size(); ++i) {
            const CriticalValues cv = i < o.trace_cv.size() ? o.trace_cv[i] : CriticalValues{};
            out << pad(i == 0 ? j.label : "", 12, true) << pad(i == 0 ? std::to_string(o.lag_order) : "", 5) << "  "
                << pad(i == 0 ? exog : "", 28, true) << pad(i == 0 ? "r=0" : "r<=" + std::to_string(i), 8, true)
                << pad(fmt("%.2f", o.trace[i]), 10) << pad(cell(cv.c90, "%.2f"), 9) << pad(cell(cv.c95, "%.2f"), 9)
                << pad(cell(cv.c99, "%.2f"), 9) << pad(fmt("%.2f", o.max_eigen[i]), 10) << "  "
                << (i < o.trace_labels.size() ? o.trace_labels[i] : "n/a") << "\n";
        }
        out << pad("", 12) << "  decided rank at " << fmt("%.0f%%", 100.0 * confidence_value(o.level)) << ": "
            << (o.decided_rank ? std::to_string(*o.decided_rank) : "none (critical values unavailable)") << "\n";
        for (const auto& w : j.warnings) out << "  note [" << j.label << "]: " << w << "\n";
    }
    out << "\n";
}

void render_dols(std::ostringstream& out, const AnalysisReport& r) {
    out << "DYNAMIC OLS\n";
    std::vector<std::string> names;
    for (const auto& m : r.dols) {
        for (const auto& c : m.fit.coefficients) {
            if (c.role == CoefficientRole::nuisance) continue;
            if (std::find(names.begin(), names.end(), c.name) == names.end()) names.push_back(c.name);
        }
    }
    const std::size_t w = 18;
    out << pad("Variable", 12, true);
    for (const auto& m : r.dols) out << pad(m.name, w, true);
    out << "\n";
    for (const auto& name : names) {
        std::string value_line = pad(name, 12, true), se_line = pad("", 12);
        for (const auto& m : r.dols) {
            const DolsCoefficient* c = nullptr;
            for (const auto& x : m.fit.coefficients) {
                if (x.name == name) c = &x;
            }
            value_line += pad(c ? fmt("%.6f", c->estimate) : "", w, true);
            se_line += pad(c ? "[" + fmt("%.6f", c->hac_se) + "] " + stars(c->p_value) : "", w, true);
        }
        out << value_line << "\n" << se_line << "\n";
    }
    auto stat_row = [&](const char* label, auto get, const char* format) {
        out << pad(label, 12, true);
        for (const auto& m : r.dols) out << pad(fmt(format, get(m.fit)), w, true);
        out << "\n";
    };
    out << "\n";
    stat_row("Adj. R2", [](const DolsFit& f) { return f.r2_adjusted; }, "%.4f");
    stat_row("S.E. reg.", [](const DolsFit& f) { return f.regression_se; }, "%.4f");
    stat_row("LR variance", [](const DolsFit& f) { return f.long_run_variance.value; }, "%.6f");
    stat_row("Jarque-Bera", [](const DolsFit& f) { return f.jarque_bera.statistic; }, "%.4f");
    stat_row("Obs.", [](const DolsFit& f) { return static_cast<double>(f.nobs); }, "%.0f");
    out << "Standard errors in brackets use the Bartlett/Newey-West long-run variance; *, **, *** mark 10%, 5%, 1%.\n";
    out << "Lead/lag difference terms are omitted.\n";
    for (const auto& m : r.dols) {
        out << "\n  Elasticities, " << m.name << " (" << fmt("%.0f%%", 100.0 * m.level) << "):\n";
        std::size_t label_width = 12;
        for (const auto& e : m.elasticities) label_width = std::max(label_width, e.label.size() + 2);
        for (const auto& e : m.elasticities) {
            out << "    " << pad(e.label, label_width, true) << pad(fmt("%.4f", e.value), 10) << "  " << e.classification
                << (e.classification == "none" ? "" : ", " + e.direction) << "\n";
        }
    }
    out << "\n";
}

// ------------------------------------------------------------- CSV

std::string csv_num(double v) { return std::isfinite(v) ? number17(v) : ""; }
std::string csv_opt(const std::optional<double>& v) { return v ? csv_num(*v) : ""; }

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::io_failure, "cannot write " + path.string());
    out << content;
    if (!out) fail(ErrorKind::io_failure, "write failed for " + path.string());
}

}  // namespace

ReportFormat parse_report_format(const std::string& text) {
    if (text == "text") return ReportFormat::text;
    if (text == "json") return ReportFormat::json;
    if (text == "csv_bundle") return ReportFormat::csv_bundle;
    fail(ErrorKind::config_error, "unknown report format: " + text);
}

std::string report_to_json(const AnalysisReport& report) {
    std::ostringstream out;
    write(out, encode(report), 0);
    out << "\n";
    return out.str();
}

AnalysisReport report_from_json(const std::string& text) {
    try {
        const json j = json::parse(text);
        AnalysisReport r;
        r.schema_version = j.at("schema_version").get<int>();
        if (r.schema_version != kReportSchemaVersion) {
            fail(ErrorKind::schema_mismatch, "unsupported report schema_version " + std::to_string(r.schema_version));
        }
        const json& p = j.at("provenance");
        r.provenance = {p.at("data_path").get<std::string>(), p.at("data_checksum").get<std::string>(),
                        p.at("seed").get<std::uint64_t>(), p.at("version").get<std::string>()};
        for (const auto& s : j.at("series")) {
            r.series.push_back({s.at("name").get<std::string>(), s.at("column").get<std::string>(),
                                s.at("log").get<bool>(), s.at("first_year").get<int>(), s.at("last_year").get<int>(),
                                s.at("nobs").get<std::size_t>()});
        }
        for (const auto& u : j.at("unit_root")) r.unit_root.push_back(decode_unit_root(u));
        for (const auto& b : j.at("breaks")) {
            r.breaks.push_back({b.at("series").get<std::string>(), b.at("test").get<std::string>(),
                                b.at("years").get<std::vector<int>>(), b.at("decision").get<std::string>()});
        }
        for (const auto& x : j.at("johansen")) r.johansen.push_back(decode_johansen(x));
        for (const auto& x : j.at("dols")) r.dols.push_back(decode_dols(x));
        for (const auto& e : j.at("errors")) {
            r.errors.push_back({e.at("stage").get<std::string>(), e.at("item").get<std::string>(),
                                e.at("kind").get<std::string>(), e.at("message").get<std::string>()});
        }
        r.notes = j.at("notes").get<std::vector<std::string>>();
        return r;
    } catch (const json::exception& e) {
        fail(ErrorKind::schema_mismatch, std::string("malformed report: ") + e.what());
    }
}

std::string render_text(const AnalysisReport& r) {
    std::ostringstream out;
    out << "ENERGY DEMAND ANALYSIS REPORT\n";
    out << "version " << r.provenance.version << ", schema " << r.schema_version << ", seed " << r.provenance.seed
        << "\n";
    out << "data " << r.provenance.data_path << " (checksum " << r.provenance.data_checksum << ")\n\n";
    out << "SERIES\n";
    for (const auto& s : r.series) {
        out << "  " << pad(s.name, 8, true) << pad(s.column, 20, true) << s.first_year << "-" << s.last_year << "  ("
            << s.nobs << " obs" << (s.log ? ", natural log" : "") << ")\n";
    }
    out << "\n";
    if (!r.unit_root.empty()) render_unit_root(out, r);
    if (!r.breaks.empty()) {
        out << "BREAK SUMMARY\n";
        for (const auto& b : r.breaks) {
            out << "  " << pad(b.series, 8, true) << pad(b.test, 18, true) << pad(years_text(b.years), 13, true)
                << b.decision << "\n";
        }
        out << "\n";
    }
    if (!r.johansen.empty()) render_johansen(out, r);
    if (!r.dols.empty()) render_dols(out, r);
    if (!r.notes.empty()) {
        out << "NOTES\n";
        for (const auto& n : r.notes) out << "  " << n << "\n";
        out << "\n";
    }
    if (!r.errors.empty()) {
        out << "STAGE ERRORS\n";
        for (const auto& e : r.errors) out << "  [" << e.stage << "] " << e.item << ": " << e.kind << ": " << e.message << "\n";
        out << "\n";
    }
    return out.str();
}

std::vector<std::filesystem::path> emit_report(const AnalysisReport& r, ReportFormat format,
                                               const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) fail(ErrorKind::io_failure, "cannot create output directory " + dir.string() + ": " + ec.message());
    std::vector<std::filesystem::path> written;
    auto emit = [&](const std::string& name, const std::string& content) {
        write_file(dir / name, content);
        written.push_back(dir / name);
    };
    switch (format) {
        case ReportFormat::text: emit("report.txt", render_text(r)); break;
        case ReportFormat::json: emit("report.json", report_to_json(r)); break;
        case ReportFormat::csv_bundle: {
            std::ostringstream ur;
            ur << "series,test,spec_key,statistic,alpha_minus_one,lags,bandwidth,nobs,breaks,cv90,cv95,cv99,"
                  "cv_provenance,level,decision\n";
            for (const auto& row : r.unit_root) {
                const UnitRootOutcome& o = row.outcome;
                std::string years;
                for (const auto& b : o.breaks) years += (years.empty() ? "" : " ") + std::to_string(b.year);
                ur << quote(o.series) << "," << o.test << "," << quote(o.spec_key) << "," << csv_num(o.statistic) << ","
                   << csv_num(o.alpha_minus_one) << "," << o.lags << ","
                   << (o.bandwidth ? std::to_string(*o.bandwidth) : "") << "," << o.nobs << "," << years << ","
                   << csv_opt(o.critical_values.c90) << "," << csv_opt(o.critical_values.c95) << ","
                   << csv_opt(o.critical_values.c99) << "," << quote(o.critical_values.provenance) << ","
                   << csv_num(confidence_value(o.level)) << "," << to_string(o.decision) << "\n";
            }
            emit("unit_root.csv", ur.str());

            std::ostringstream ls;
            ls << "configuration,lag,log_det,aic,sic,hq\n";
            for (const auto& j : r.johansen) {
                for (const auto& row : j.lag_selection.rows) {
                    ls << quote(j.label) << "," << row.lag << "," << csv_num(row.log_det) << "," << csv_num(row.aic)
                       << "," << csv_num(row.sic) << "," << csv_num(row.hq) << "\n";
                }
            }
            emit("lag_selection.csv", ls.str());

            std::ostringstream jo;
            jo << "configuration,lags,exogenous,hypothesis,eigenvalue,trace,trace_cv90,trace_cv95,trace_cv99,"
                  "max_eigen,max_cv90,max_cv95,max_cv99,conclusion\n";
            for (const auto& j : r.johansen) {
                const JohansenOutcome& o = j.outcome;
                std::string exog;
                for (const auto& e : o.exogenous) exog += (exog.empty() ? "" : " ") + e;
                for (std::size_t i = 0; i < o.trace.size(); ++i) {
                    const CriticalValues t = i < o.trace_cv.size() ? o.trace_cv[i] : CriticalValues{};
                    const CriticalValues m = i < o.max_cv.size() ? o.max_cv[i] : CriticalValues{};
                    jo << quote(j.label) << "," << o.lag_order << "," << quote(exog) << "," << i << ","
                       << csv_num(o.eigenvalues[i]) << "," << csv_num(o.trace[i]) << "," << csv_opt(t.c90) << ","
                       << csv_opt(t.c95) << "," << csv_opt(t.c99) << "," << csv_num(o.max_eigen[i]) << ","
                       << csv_opt(m.c90) << "," << csv_opt(m.c95) << "," << csv_opt(m.c99) << ","
                       << (i < o.trace_labels.size() ? o.trace_labels[i] : "") << "\n";
                }
            }
            emit("johansen.csv", jo.str());

            std::ostringstream d;
            d << "model,name,role,estimate,classical_se,hac_se,t_stat,p_value\n";
            for (const auto& m : r.dols) {
                for (const auto& c : m.fit.coefficients) {
                    d << quote(m.name) << "," << quote(c.name) << "," << to_string(c.role) << "," << csv_num(c.estimate)
                      << "," << csv_num(c.classical_se) << "," << csv_num(c.hac_se) << "," << csv_num(c.t_stat) << ","
                      << csv_num(c.p_value) << "\n";
                }
            }
            emit("dols.csv", d.str());
            break;
        }
    }
    return written;
}

}  // namespace ecm
