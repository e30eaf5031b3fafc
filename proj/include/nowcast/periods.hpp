#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace nowcast {

struct QuarterIndex;

/**
 * @brief A calendar month (year, month 1..12).
 *
 * Months are totally ordered and support integer offsets, so a contiguous
 * monthly series can be stored as a start month plus a value vector.
 */
struct MonthIndex {
    int year = 0;
    int month = 1;

    MonthIndex() = default;
    MonthIndex(int y, int m);

    static MonthIndex from_ordinal(long ordinal);
    [[nodiscard]] long ordinal() const noexcept { return year * 12L + (month - 1); }

    [[nodiscard]] QuarterIndex quarter() const;
    /// Position inside the quarter: 1, 2 or 3.
    [[nodiscard]] int position() const noexcept { return (month - 1) % 3 + 1; }

    /// "YYYY-MM"
    [[nodiscard]] std::string str() const;
    static MonthIndex parse(std::string_view text);

    friend MonthIndex operator+(MonthIndex m, long months) { return from_ordinal(m.ordinal() + months); }
    friend MonthIndex operator-(MonthIndex m, long months) { return from_ordinal(m.ordinal() - months); }
    friend long operator-(MonthIndex a, MonthIndex b) noexcept { return a.ordinal() - b.ordinal(); }
    MonthIndex& operator++() { return *this = *this + 1; }

    friend bool operator==(const MonthIndex&, const MonthIndex&) = default;
    friend auto operator<=>(const MonthIndex& a, const MonthIndex& b) noexcept {
        return a.ordinal() <=> b.ordinal();
    }
};

/// A calendar quarter (year, quarter 1..4). t - 4 is the same quarter a year earlier.
struct QuarterIndex {
    int year = 0;
    int quarter = 1;

    QuarterIndex() = default;
    QuarterIndex(int y, int q);

    static QuarterIndex from_ordinal(long ordinal);
    [[nodiscard]] long ordinal() const noexcept { return year * 4L + (quarter - 1); }

    /// Month at position 1..3 of this quarter.
    [[nodiscard]] MonthIndex month(int position) const;
    [[nodiscard]] MonthIndex first_month() const { return month(1); }
    [[nodiscard]] MonthIndex last_month() const { return month(3); }

    /// "YYYYQn"
    [[nodiscard]] std::string str() const;
    /// "YYYY-Qn", the form used in data files.
    [[nodiscard]] std::string data_label() const;
    /// Accepts "YYYYQn" and "YYYY-Qn".
    static QuarterIndex parse(std::string_view text);

    friend QuarterIndex operator+(QuarterIndex q, long n) { return from_ordinal(q.ordinal() + n); }
    friend QuarterIndex operator-(QuarterIndex q, long n) { return from_ordinal(q.ordinal() - n); }
    friend long operator-(QuarterIndex a, QuarterIndex b) noexcept { return a.ordinal() - b.ordinal(); }
    QuarterIndex& operator++() { return *this = *this + 1; }

    friend bool operator==(const QuarterIndex&, const QuarterIndex&) = default;
    friend auto operator<=>(const QuarterIndex& a, const QuarterIndex& b) noexcept {
        return a.ordinal() <=> b.ordinal();
    }
};

/// Day stages at which nowcasts are produced. Day 100 stands for day 10 of the following quarter.
inline constexpr int kDays[] = {0, 30, 60, 90, 100};
inline constexpr int kDayCount = 5;

[[nodiscard]] bool is_valid_day(int day) noexcept;
/// Position of `day` within kDays; throws InputError for an unknown day.
[[nodiscard]] int day_slot(int day);

}  // namespace nowcast
