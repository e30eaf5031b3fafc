#include "nowcast/periods.hpp"

#include "nowcast/error.hpp"

#include <charconv>
#include <cstdio>

namespace nowcast {

namespace {

long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

int parse_int(std::string_view text, std::string_view whole) {
    int value = 0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc{} || ptr != last) {
        throw InputError("unparseable period '" + std::string(whole) + "'");
    }
    return value;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

}  // namespace

MonthIndex::MonthIndex(int y, int m) : year(y), month(m) {
    if (m < 1 || m > 12) throw InputError("month out of range: " + std::to_string(m));
}

MonthIndex MonthIndex::from_ordinal(long ordinal) {
    const long y = floor_div(ordinal, 12);
    return MonthIndex(static_cast<int>(y), static_cast<int>(ordinal - y * 12) + 1);
}

QuarterIndex MonthIndex::quarter() const { return QuarterIndex(year, (month - 1) / 3 + 1); }

std::string MonthIndex::str() const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
    return buf;
}

MonthIndex MonthIndex::parse(std::string_view text) {
    const auto t = trim(text);
    const auto dash = t.find('-');
    if (dash == std::string_view::npos || dash == 0) {
        throw InputError("unparseable month '" + std::string(text) + "' (expected YYYY-MM)");
    }
    return MonthIndex(parse_int(t.substr(0, dash), text), parse_int(t.substr(dash + 1), text));
}

QuarterIndex::QuarterIndex(int y, int q) : year(y), quarter(q) {
    if (q < 1 || q > 4) throw InputError("quarter out of range: " + std::to_string(q));
}

QuarterIndex QuarterIndex::from_ordinal(long ordinal) {
    const long y = floor_div(ordinal, 4);
    return QuarterIndex(static_cast<int>(y), static_cast<int>(ordinal - y * 4) + 1);
}

MonthIndex QuarterIndex::month(int position) const {
    if (position < 1 || position > 3) throw Error("month position must be 1..3");
    return MonthIndex(year, (quarter - 1) * 3 + position);
}

std::string QuarterIndex::str() const { return std::to_string(year) + "Q" + std::to_string(quarter); }

std::string QuarterIndex::data_label() const {
    return std::to_string(year) + "-Q" + std::to_string(quarter);
}

QuarterIndex QuarterIndex::parse(std::string_view text) {
    const auto t = trim(text);
    const auto q = t.find_first_of("Qq");
    if (q == std::string_view::npos || q == 0) {
        throw InputError("unparseable quarter '" + std::string(text) + "' (expected YYYYQn)");
    }
    auto year_part = t.substr(0, q);
    if (year_part.back() == '-') year_part.remove_suffix(1);
    return QuarterIndex(parse_int(year_part, text), parse_int(t.substr(q + 1), text));
}

bool is_valid_day(int day) noexcept {
    for (int d : kDays) {
        if (d == day) return true;
    }
    return false;
}

int day_slot(int day) {
    for (int i = 0; i < kDayCount; ++i) {
        if (kDays[i] == day) return i;
    }
    throw InputError("invalid day " + std::to_string(day) + "; allowed days are {0,30,60,90,100}");
}

}  // namespace nowcast
