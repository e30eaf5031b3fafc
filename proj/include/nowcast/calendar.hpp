#pragma once

#include "nowcast/periods.hpp"
#include "nowcast/series.hpp"

#include <array>
#include <map>
#include <string>
#include <string_view>

namespace nowcast {

/// Last available period relative to the nowcast quarter t: "t-1:3" is month 3 of t-1,
/// "t-2" is quarter t-2 (month_in_quarter == 0 marks a quarterly rule).
struct AvailabilityRule {
    int quarter_offset = 0;
    int month_in_quarter = 0;

    [[nodiscard]] bool is_quarterly() const noexcept { return month_in_quarter == 0; }
    /// Month offset from the first month of t (monthly rules only).
    [[nodiscard]] long month_offset() const noexcept { return quarter_offset * 3L + month_in_quarter - 1; }

    [[nodiscard]] std::string str() const;
    static AvailabilityRule parse(std::string_view text);

    friend bool operator==(const AvailabilityRule&, const AvailabilityRule&) = default;
};

/**
 * @brief Release schedule: for every series and day stage, the last visible period.
 *
 * Loaded from a whitespace-separated text file whose header row names the
 * day columns ("series 0 30 60 90 100") followed by one row per series.
 * The built-in default reproduces the publication lags of the Portuguese
 * indicator set, with national-accounts series for t-1 released at day 60.
 */
class ReleaseCalendar {
public:
    using DayRules = std::array<AvailabilityRule, kDayCount>;

    static ReleaseCalendar defaults();
    static ReleaseCalendar parse(std::string_view text);
    static ReleaseCalendar load(const std::string& path);
    /// Text of the built-in default calendar file.
    static std::string_view default_text();

    /// Validates monotonicity before storing.
    void set_rules(const std::string& id, const DayRules& rules);

    [[nodiscard]] bool covers(const std::string& id) const { return rules_.count(id) != 0; }
    [[nodiscard]] const AvailabilityRule& rule(const std::string& id, int day) const;
    [[nodiscard]] MonthIndex last_visible_month(const std::string& id, QuarterIndex t, int day) const;
    [[nodiscard]] QuarterIndex last_visible_quarter(const std::string& id, QuarterIndex t, int day) const;
    [[nodiscard]] const std::map<std::string, DayRules>& rules() const noexcept { return rules_; }

    [[nodiscard]] std::string to_text() const;

    friend bool operator==(const ReleaseCalendar&, const ReleaseCalendar&) = default;

private:
    std::map<std::string, DayRules> rules_;
};

}  // namespace nowcast
