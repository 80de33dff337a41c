#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ecm {

/// Annual time series. Observation i belongs to year start_year + i.
class Series {
public:
    Series(std::string name, int start_year, std::vector<double> values);

    const std::string& name() const noexcept { return name_; }
    int start_year() const noexcept { return start_year_; }
    int end_year() const noexcept { return start_year_ + static_cast<int>(values_.size()) - 1; }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }

    int year_at(std::size_t i) const noexcept { return start_year_ + static_cast<int>(i); }
    bool contains_year(int year) const noexcept { return year >= start_year_ && year <= end_year(); }
    std::size_t index_of(int year) const;

    Series renamed(std::string name) const;

private:
    std::string name_;
    int start_year_;
    std::vector<double> values_;
};

/// A break placed after the observation of `year`: that year is the last
/// pre-break observation, and shift dummies switch on the year after.
struct BreakDate {
    int year = 0;
    double fraction = 0.0;  ///< (year - start_year + 1) / T, strictly inside (0, 1)

    friend bool operator==(const BreakDate&, const BreakDate&) = default;
};

/// Validates that the break leaves at least two observations on each side
/// ([2, T-1] in 1-based counting) and returns it with its fraction filled in.
BreakDate make_break(const Series& s, int year);
BreakDate make_break(int start_year, std::size_t length, int year);

/// Number of pre-break observations (1-based break index T_b).
std::size_t break_index(const BreakDate& b, int start_year);

enum class Deterministic { none, constant, constant_trend };
enum class BreakKind { intercept, trend, both };
enum class DummyStyle { shift, pulse };

const char* to_string(Deterministic d) noexcept;
const char* to_string(BreakKind k) noexcept;
Deterministic parse_deterministic(const std::string& text);
BreakKind parse_break_kind(const std::string& text);

struct BreakSpec {
    BreakKind kind = BreakKind::intercept;
    std::vector<BreakDate> dates;  ///< one or two, strictly increasing
};

struct RegressorColumn {
    std::string name;
    std::vector<double> values;
};

Series log_transform(const Series& s);
Series difference(const Series& s, int order = 1);
Series lag(const Series& s, int k);

/// DU_t = 1 for t > T_b (1-based t).
std::vector<double> shift_dummy(std::size_t length, std::size_t tb);
/// DT_t = t - T_b for t > T_b.
std::vector<double> trend_dummy(std::size_t length, std::size_t tb);
/// DTB_t = 1 only at t = T_b + 1.
std::vector<double> pulse_dummy(std::size_t length, std::size_t tb);
/// 1, 2, ..., length.
std::vector<double> trend_column(std::size_t length);

/// Shift style emits DU and/or DT per break (named DU<year>, DT<year>);
/// pulse style emits DTB<year>.
std::vector<RegressorColumn> break_dummies(std::size_t length, int start_year, const BreakSpec& spec,
                                           DummyStyle style);

}  // namespace ecm
