#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ecm/pipeline.hpp"

namespace ecm {

enum class ReportFormat { text, json, csv_bundle };
ReportFormat parse_report_format(const std::string& text);

/// Stable JSON: fixed key order, two-space indent, doubles with 17
/// significant digits, non-finite values as null.
std::string report_to_json(const AnalysisReport& report);
AnalysisReport report_from_json(const std::string& text);

std::string render_text(const AnalysisReport& report);

/// Writes report.txt, report.json or the CSV tables (unit_root.csv,
/// lag_selection.csv, johansen.csv, dols.csv) into `dir`.
std::vector<std::filesystem::path> emit_report(const AnalysisReport& report, ReportFormat format,
                                               const std::filesystem::path& dir);

}  // namespace ecm
