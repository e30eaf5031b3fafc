#pragma once

#include "nowcast/calendar.hpp"
#include "nowcast/series.hpp"

namespace nowcast {

/**
 * @brief The dataset as it looked at day `day` of quarter `quarter`.
 *
 * Every series is truncated to its release-calendar rule. Snapshots are
 * immutable values; everything that feeds a nowcast for (quarter, day) is
 * read from one.
 */
class Snapshot {
public:
    Snapshot(QuarterIndex quarter, int day, Dataset visible)
        : quarter_(quarter), day_(day), data_(std::move(visible)) {}

    [[nodiscard]] QuarterIndex quarter() const noexcept { return quarter_; }
    [[nodiscard]] int day() const noexcept { return day_; }
    [[nodiscard]] const Dataset& data() const noexcept { return data_; }

    [[nodiscard]] bool has_monthly(const std::string& id) const { return data_.has_monthly(id); }
    [[nodiscard]] bool has_quarterly(const std::string& id) const { return data_.has_quarterly(id); }
    [[nodiscard]] const MonthlySeries& monthly(const std::string& id) const { return data_.monthly_series(id); }
    [[nodiscard]] const QuarterlySeries& quarterly(const std::string& id) const { return data_.quarterly_series(id); }

    friend bool operator==(const Snapshot&, const Snapshot&) = default;

private:
    QuarterIndex quarter_;
    int day_;
    Dataset data_;
};

/// Truncates every series per `calendar`. A series without a rule is an error naming it.
Snapshot take_snapshot(const Dataset& data, const ReleaseCalendar& calendar, QuarterIndex t, int day);

/// Everything observed through the end of quarter `last`, ignoring publication lags.
/// Used for full-sample estimation; reported as day 100 of `last`.
Snapshot full_information_snapshot(const Dataset& data, QuarterIndex last);

}  // namespace nowcast
