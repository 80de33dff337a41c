#include "ecm/series.hpp"

#include <cmath>
#include <string>

#include "ecm/errors.hpp"

namespace ecm {

Series::Series(std::string name, int start_year, std::vector<double> values)
    : name_(std::move(name)), start_year_(start_year), values_(std::move(values)) {
    if (values_.empty()) fail(ErrorKind::series_too_short, "series '" + name_ + "' is empty");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            fail(ErrorKind::schema_error, "series '" + name_ + "' has a non-finite value at year " +
                                              std::to_string(year_at(i)));
        }
    }
}

std::size_t Series::index_of(int year) const {
    if (!contains_year(year)) {
        fail(ErrorKind::break_out_of_range, "year " + std::to_string(year) + " outside " + name_ + " sample " +
                                                std::to_string(start_year_) + "-" + std::to_string(end_year()));
    }
    return static_cast<std::size_t>(year - start_year_);
}

Series Series::renamed(std::string name) const { return Series(std::move(name), start_year_, values_); }

BreakDate make_break(int start_year, std::size_t length, int year) {
    const long tb = static_cast<long>(year) - start_year + 1;
    if (tb < 2 || tb > static_cast<long>(length) - 1) {
        fail(ErrorKind::break_out_of_range, "break year " + std::to_string(year) + " is not interior to " +
                                                std::to_string(start_year) + "-" +
                                                std::to_string(start_year + static_cast<int>(length) - 1));
    }
    return BreakDate{year, static_cast<double>(tb) / static_cast<double>(length)};
}

BreakDate make_break(const Series& s, int year) { return make_break(s.start_year(), s.size(), year); }

std::size_t break_index(const BreakDate& b, int start_year) {
    return static_cast<std::size_t>(b.year - start_year + 1);
}

const char* to_string(Deterministic d) noexcept {
    switch (d) {
        case Deterministic::none: return "none";
        case Deterministic::constant: return "constant";
        case Deterministic::constant_trend: return "constant_trend";
    }
    return "?";
}

const char* to_string(BreakKind k) noexcept {
    switch (k) {
        case BreakKind::intercept: return "intercept";
        case BreakKind::trend: return "trend";
        case BreakKind::both: return "both";
    }
    return "?";
}

Deterministic parse_deterministic(const std::string& text) {
    if (text == "none") return Deterministic::none;
    if (text == "constant") return Deterministic::constant;
    if (text == "constant_trend") return Deterministic::constant_trend;
    fail(ErrorKind::config_error, "unknown deterministic spec '" + text + "'");
}

BreakKind parse_break_kind(const std::string& text) {
    if (text == "intercept") return BreakKind::intercept;
    if (text == "trend") return BreakKind::trend;
    if (text == "both") return BreakKind::both;
    fail(ErrorKind::config_error, "unknown break kind '" + text + "'");
}

Series log_transform(const Series& s) {
    std::vector<double> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!(s[i] > 0.0)) {
            fail(ErrorKind::non_positive_value, "cannot take log of " + s.name() + " at index " + std::to_string(i) +
                                                    " (year " + std::to_string(s.year_at(i)) + ")");
        }
        out[i] = std::log(s[i]);
    }
    return Series("ln" + s.name(), s.start_year(), std::move(out));
}

Series difference(const Series& s, int order) {
    if (order < 1) fail(ErrorKind::config_error, "difference order must be positive");
    if (s.size() <= static_cast<std::size_t>(order)) {
        fail(ErrorKind::series_too_short, s.name() + " too short for a difference of order " + std::to_string(order));
    }
    std::vector<double> cur(s.values().begin(), s.values().end());
    for (int d = 0; d < order; ++d) {
        for (std::size_t i = 0; i + 1 < cur.size(); ++i) cur[i] = cur[i + 1] - cur[i];
        cur.pop_back();
    }
    std::string prefix = order == 1 ? "D" : "D" + std::to_string(order);
    return Series(prefix + "." + s.name(), s.start_year() + order, std::move(cur));
}

Series lag(const Series& s, int k) {
    if (k < 1) fail(ErrorKind::config_error, "lag must be positive");
    if (s.size() <= static_cast<std::size_t>(k)) {
        fail(ErrorKind::series_too_short, s.name() + " too short for lag " + std::to_string(k));
    }
    std::vector<double> out(s.values().begin(), s.values().end() - k);
    return Series("L" + std::to_string(k) + "." + s.name(), s.start_year() + k, std::move(out));
}

namespace {

void check_tb(std::size_t length, std::size_t tb) {
    if (tb < 2 || tb + 1 > length) {
        fail(ErrorKind::break_out_of_range,
             "break index " + std::to_string(tb) + " outside [2, " + std::to_string(length - 1) + "]");
    }
}

}  // namespace

std::vector<double> shift_dummy(std::size_t length, std::size_t tb) {
    check_tb(length, tb);
    std::vector<double> out(length, 0.0);
    for (std::size_t i = tb; i < length; ++i) out[i] = 1.0;
    return out;
}

std::vector<double> trend_dummy(std::size_t length, std::size_t tb) {
    check_tb(length, tb);
    std::vector<double> out(length, 0.0);
    for (std::size_t i = tb; i < length; ++i) out[i] = static_cast<double>(i + 1 - tb);
    return out;
}

std::vector<double> pulse_dummy(std::size_t length, std::size_t tb) {
    check_tb(length, tb);
    std::vector<double> out(length, 0.0);
    out[tb] = 1.0;
    return out;
}

std::vector<double> trend_column(std::size_t length) {
    std::vector<double> out(length);
    for (std::size_t i = 0; i < length; ++i) out[i] = static_cast<double>(i + 1);
    return out;
}

std::vector<RegressorColumn> break_dummies(std::size_t length, int start_year, const BreakSpec& spec,
                                           DummyStyle style) {
    if (spec.dates.empty() || spec.dates.size() > 2) {
        fail(ErrorKind::config_error, "break spec needs one or two dates");
    }
    if (spec.dates.size() == 2 && spec.dates[1].year <= spec.dates[0].year) {
        fail(ErrorKind::config_error, "break dates must be strictly increasing");
    }
    std::vector<RegressorColumn> out;
    for (const auto& date : spec.dates) {
        const long tb_signed = static_cast<long>(date.year) - start_year + 1;
        if (tb_signed < 0) fail(ErrorKind::break_out_of_range, "break year precedes the sample");
        const auto tb = static_cast<std::size_t>(tb_signed);
        const std::string year = std::to_string(date.year);
        if (style == DummyStyle::pulse) {
            out.push_back({"DTB" + year, pulse_dummy(length, tb)});
            continue;
        }
        if (spec.kind != BreakKind::trend) out.push_back({"DU" + year, shift_dummy(length, tb)});
        if (spec.kind != BreakKind::intercept) out.push_back({"DT" + year, trend_dummy(length, tb)});
    }
    return out;
}

}  // namespace ecm
