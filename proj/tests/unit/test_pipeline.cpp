#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ecm/errors.hpp"
#include "ecm/pipeline.hpp"
#include "ecm/report.hpp"

using namespace ecm;
namespace fs = std::filesystem;

namespace {

const fs::path kRoot = ECM_SOURCE_DIR;
const fs::path kSnapshot = kRoot / "data" / "ecuador_energy_1970_2015.csv";

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("ecm_pipeline_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

Error error_from(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e;
    }
    FAIL("expected an ecm::Error");
    return Error(ErrorKind::config_error, "");
}

/// The shipped snapshot with one cell of `column` replaced.
std::string corrupt_cell(const std::string& csv, int year, const std::string& column, const std::string& value) {
    std::istringstream in(csv);
    std::string line, out, header;
    std::getline(in, header);
    out = header + "\n";
    std::vector<std::string> names;
    {
        std::stringstream h(header);
        std::string f;
        while (std::getline(h, f, ',')) names.push_back(f);
    }
    while (std::getline(in, line)) {
        if (line.rfind(std::to_string(year) + ",", 0) == 0) {
            std::stringstream l(line);
            std::string f, rebuilt;
            for (std::size_t i = 0; std::getline(l, f, ','); ++i) {
                if (names[i] == column) f = value;
                rebuilt += (i ? "," : "") + f;
            }
            line = rebuilt;
        }
        out += line + "\n";
    }
    return out;
}

const char* kMinimalConfig = R"({
  "data": {"path": "data.csv"},
  "variables": [
    {"column": "energy_pc", "name": "lnE", "role": "response"},
    {"column": "gdp_pc", "name": "lnY"},
    {"column": "oil_price", "name": "lnP"},
    {"column": "industry", "name": "lnI"}
  ],
  "seed": 7,
  "critical_values": {"monte_carlo_fallback": false},
  "unit_root": {"tests": [
    {"test": "adf", "series": "lnE", "deterministic": "none", "lags": {"method": "aic", "max_lag": 2}},
    {"test": "adf", "series": "lnY", "deterministic": "none", "lags": {"method": "aic", "max_lag": 2}},
    {"test": "adf", "series": "lnP", "deterministic": "none", "lags": {"method": "aic", "max_lag": 2}},
    {"test": "pp", "series": "lnI", "deterministic": "constant_trend"}
  ]},
  "cointegration": {"max_lag": 2, "configurations": [{"breaks": [1983]}]},
  "dols": {"models": [{"name": "M", "breaks": [1983]}]}
})";

}  // namespace

TEST_CASE("snapshot ingests as four annual series") {
    const auto r = ingest_csv(kSnapshot, {"energy_pc", "gdp_pc", "oil_price", "industry"});
    REQUIRE(r.series.size() == 4);
    for (const auto& s : r.series) {
        CHECK(s.size() == 46u);
        CHECK(s.start_year() == 1970);
        CHECK(s.end_year() == 2015);
    }
    CHECK(r.first_year == 1970);
    CHECK(r.last_year == 2015);
    CHECK(r.checksum == file_checksum(kSnapshot));
    CHECK(slurp(kRoot / "data" / "snapshot_metadata.json").find(r.checksum) != std::string::npos);
}

TEST_CASE("a missing year is reported") {
    const fs::path dir = scratch("gap");
    write(dir / "gap.csv", "year,a\n1997,1\n1998,2\n2000,3\n2001,4\n");
    const Error e = error_from([&] { ingest_csv(dir / "gap.csv"); });
    CHECK(e.kind() == ErrorKind::gap_in_years);
    CHECK(std::string(e.what()).find("1999") != std::string::npos);
}

TEST_CASE("duplicate years and bad cells are schema errors") {
    const fs::path dir = scratch("schema");
    write(dir / "dup.csv", "year,a\n1997,1\n1998,2\n1998,3\n");
    CHECK(error_from([&] { ingest_csv(dir / "dup.csv"); }).kind() == ErrorKind::schema_error);
    write(dir / "cell.csv", "year,a,b\n1997,1,2\n1998,x,3\n");
    const Error e = error_from([&] { ingest_csv(dir / "cell.csv"); });
    CHECK(e.kind() == ErrorKind::schema_error);
    CHECK(std::string(e.what()).find("'a'") != std::string::npos);
    // Only the requested columns are validated.
    CHECK(ingest_csv(dir / "cell.csv", {"b"}).series.size() == 1);
    write(dir / "header.csv", "when,a\n1997,1\n");
    CHECK(error_from([&] { ingest_csv(dir / "header.csv"); }).kind() == ErrorKind::schema_error);
    CHECK(error_from([&] { ingest_csv(dir / "absent.csv"); }).kind() == ErrorKind::io_failure);
}

TEST_CASE("break year outside the sample names the config field") {
    const fs::path dir = scratch("badyear");
    write(dir / "data.csv", slurp(kSnapshot));
    std::string text = kMinimalConfig;
    text.replace(text.find("[1983]}]}"), 6, "[2020]");
    const auto config = config_from_json_text(text, dir);
    const Error e = error_from([&] { run_analysis(config); });
    CHECK(e.kind() == ErrorKind::config_error);
    CHECK(std::string(e.what()).find("cointegration.configurations[0].breaks[0]") != std::string::npos);
    CHECK(exit_code_for(e.kind()) == 2);
}

TEST_CASE("malformed configs are config errors with a path") {
    const Error e = error_from([] { config_from_json_text(R"({"data": {"path": 3}})", "."); });
    CHECK(e.kind() == ErrorKind::config_error);
    CHECK(std::string(e.what()).find("data.path") != std::string::npos);
    CHECK(error_from([] { config_from_json_text("{", "."); }).kind() == ErrorKind::config_error);
}

TEST_CASE("an empty battery reports ingestion only") {
    const fs::path dir = scratch("empty");
    write(dir / "data.csv", slurp(kSnapshot));
    const auto config = config_from_json_text(R"({
      "data": {"path": "data.csv"},
      "variables": [{"column": "energy_pc", "role": "response"}, {"column": "gdp_pc"}]
    })", dir);
    const auto report = run_analysis(config);
    CHECK(report.series.size() == 2);
    CHECK(report.unit_root.empty());
    CHECK(report.johansen.empty());
    CHECK(report.dols.empty());
    CHECK(report.errors.empty());
    CHECK(report.provenance.data_checksum == file_checksum(kSnapshot));
}

TEST_CASE("a corrupted price column only affects price results") {
    const fs::path dir = scratch("isolation");
    write(dir / "data.csv", corrupt_cell(slurp(kSnapshot), 1990, "oil_price", "-4.0"));
    const auto report = run_analysis(config_from_json_text(kMinimalConfig, dir));
    bool price_error = false;
    for (const auto& e : report.errors) {
        if (e.item == "lnP" && e.kind == "NonPositiveValue") price_error = true;
    }
    CHECK(price_error);
    std::vector<std::string> tested;
    for (const auto& row : report.unit_root) tested.push_back(row.outcome.series);
    CHECK(tested == std::vector<std::string>{"lnE", "lnY", "lnI"});
    for (const auto& row : report.unit_root) CHECK(std::isfinite(row.outcome.statistic));
    CHECK(report.series.size() == 3);
}

TEST_CASE("replication run: report structure, JSON round-trip and determinism") {
    const auto config = load_config(kRoot / "configs" / "replication.json");
    const auto first = run_analysis(config);
    const auto second = run_analysis(config);
    const std::string json = report_to_json(first);
    CHECK(json == report_to_json(second));
    CHECK(report_from_json(json) == first);

    REQUIRE(first.johansen.size() == 3);
    CHECK(first.johansen[0].break_years == std::vector<int>{1983});
    CHECK(first.johansen[0].outcome.decided_rank.has_value());
    REQUIRE(first.dols.size() == 2);
    CHECK(first.dols[0].elasticities.size() == 3);
    CHECK(first.errors.empty());

    const fs::path out = scratch("emit");
    const auto files = emit_report(first, ReportFormat::csv_bundle, out);
    for (const char* name : {"unit_root.csv", "johansen.csv", "dols.csv", "lag_selection.csv"}) {
        CHECK(fs::exists(out / name));
    }
    CHECK(files.size() == 4);
    emit_report(first, ReportFormat::json, out);
    CHECK(slurp(out / "report.json") == json);

    const std::string text = render_text(first);
    CHECK(text.find("[0.") != std::string::npos);
    CHECK(text.find("Rejection") != std::string::npos);
}

TEST_CASE("schema versions are checked on load") {
    AnalysisReport r;
    std::string json = report_to_json(r);
    CHECK(report_from_json(json) == r);
    json.replace(json.find("\"schema_version\": 1"), 19, "\"schema_version\": 2");
    CHECK(error_from([&] { report_from_json(json); }).kind() == ErrorKind::schema_mismatch);
}
