#include "nowcast/calendar.hpp"

#include "text_util.hpp"

#include <charconv>

namespace nowcast {

namespace {

constexpr std::string_view kDefaultCalendar = R"(# Release calendar: last period available at each day stage of the nowcast quarter t.
# Day 100 is day 10 of quarter t+1.
# Monthly rules read t[-k]:i (month i of quarter t-k); quarterly rules read t[-k].
series   0      30     60     90     100
ESI      t-1:3  t:1    t:2    t:3    t:3
ICE      t-1:3  t:1    t:2    t:3    t:3
IPI      t-1:2  t-1:3  t:1    t:2    t:2
CEM      t-1:2  t-1:3  t:1    t:2    t:3
CAR      t-1:2  t-1:3  t:1    t:2    t:3
ATM      t-1:2  t-1:3  t:1    t:2    t:2
EXGS     t-1:1  t-1:2  t-1:3  t:1    t:1
IMGS     t-1:1  t-1:2  t-1:3  t:1    t:1
EXG      t-1:1  t-1:2  t-1:3  t:1    t:2
IMG      t-1:1  t-1:2  t-1:3  t:1    t:2
CPI      t-1:2  t-1:3  t:1    t:2    t:3
OIL      t-1:3  t:1    t:2    t:3    t:3
CEPR     t-1:3  t:1    t:2    t:3    t:3
# National quarterly accounts: quarter t-1 is released 60 days after it ends.
GDP      t-2    t-2    t-1    t-1    t-1
GDP_QOQ  t-2    t-2    t-1    t-1    t-1
EXP      t-2    t-2    t-1    t-1    t-1
IMP      t-2    t-2    t-1    t-1    t-1
DEF_EXP  t-2    t-2    t-1    t-1    t-1
DEF_IMP  t-2    t-2    t-1    t-1    t-1
)";

int parse_small_int(std::string_view s, std::string_view whole) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw InputError("unparseable availability rule '" + std::string(whole) + "'");
    }
    return v;
}

// Comparable position of a rule on a common month (or quarter) axis.
long rule_position(const AvailabilityRule& r) {
    return r.is_quarterly() ? r.quarter_offset : r.month_offset();
}

}  // namespace

std::string AvailabilityRule::str() const {
    std::string s = "t";
    if (quarter_offset > 0) s += "+" + std::to_string(quarter_offset);
    if (quarter_offset < 0) s += std::to_string(quarter_offset);
    if (!is_quarterly()) s += ":" + std::to_string(month_in_quarter);
    return s;
}

AvailabilityRule AvailabilityRule::parse(std::string_view text) {
    const auto t = detail::trim(text);
    if (t.empty() || t.front() != 't') throw InputError("unparseable availability rule '" + std::string(text) + "'");
    auto rest = t.substr(1);
    AvailabilityRule r;
    const auto colon = rest.find(':');
    auto offset = rest.substr(0, colon);
    if (!offset.empty()) {
        if (offset.front() != '+' && offset.front() != '-') {
            throw InputError("unparseable availability rule '" + std::string(text) + "'");
        }
        const int sign = offset.front() == '-' ? -1 : 1;
        r.quarter_offset = sign * parse_small_int(offset.substr(1), text);
    }
    if (colon != std::string_view::npos) {
        r.month_in_quarter = parse_small_int(rest.substr(colon + 1), text);
        if (r.month_in_quarter < 1 || r.month_in_quarter > 3) {
            throw InputError("month position must be 1..3 in rule '" + std::string(text) + "'");
        }
    }
    return r;
}

std::string_view ReleaseCalendar::default_text() { return kDefaultCalendar; }

ReleaseCalendar ReleaseCalendar::defaults() { return parse(kDefaultCalendar); }

ReleaseCalendar ReleaseCalendar::load(const std::string& path) {
    try {
        return parse(detail::read_file(path));
    } catch (const InputError& e) {
        const std::string what = e.what();
        if (what.find(path) != std::string::npos) throw;
        throw InputError("calendar '" + path + "': " + what);
    }
}

ReleaseCalendar ReleaseCalendar::parse(std::string_view text) {
    ReleaseCalendar cal;
    bool have_header = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = text.find('\n', pos);
        const auto line = detail::strip_comment(
            text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
        pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++line_no;
        if (line.empty()) continue;
        const auto fields = detail::split_ws(line);
        const std::string where = "calendar line " + std::to_string(line_no);
        if (!have_header) {
            if (fields.size() != kDayCount + 1 || fields[0] != "series") {
                throw InputError(where + ": expected header 'series 0 30 60 90 100'");
            }
            for (int i = 0; i < kDayCount; ++i) {
                if (parse_small_int(fields[i + 1], fields[i + 1]) != kDays[i]) {
                    throw InputError(where + ": day columns must be 0 30 60 90 100");
                }
            }
            have_header = true;
            continue;
        }
        if (fields.size() != kDayCount + 1) throw InputError(where + ": expected a series id and 5 rules");
        DayRules rules;
        try {
            for (int i = 0; i < kDayCount; ++i) rules[i] = AvailabilityRule::parse(fields[i + 1]);
            cal.set_rules(std::string(fields[0]), rules);
        } catch (const InputError& e) {
            throw InputError(where + ": " + e.what());
        }
    }
    if (!have_header) throw InputError("calendar has no header row");
    return cal;
}

void ReleaseCalendar::set_rules(const std::string& id, const DayRules& rules) {
    const bool quarterly = rules[0].is_quarterly();
    for (const auto& r : rules) {
        if (r.is_quarterly() != quarterly) throw InputError("series " + id + " mixes monthly and quarterly rules");
    }
    for (int i = 1; i < kDayCount; ++i) {
        if (rule_position(rules[i]) < rule_position(rules[i - 1])) {
            throw InputError("series " + id + ": availability decreases between day " + std::to_string(kDays[i - 1]) +
                             " and day " + std::to_string(kDays[i]));
        }
    }
    // Day 0 of t+1 comes before day 100 of t.
    const long next_quarter_shift = quarterly ? 1 : 3;
    if (rule_position(rules[0]) + next_quarter_shift > rule_position(rules[kDayCount - 1])) {
        throw InputError("series " + id + ": day 0 of the next quarter shows more than day 100");
    }
    rules_[id] = rules;
}

const AvailabilityRule& ReleaseCalendar::rule(const std::string& id, int day) const {
    const auto it = rules_.find(id);
    if (it == rules_.end()) throw InputError("release calendar has no rule for series " + id);
    return it->second[static_cast<std::size_t>(day_slot(day))];
}

MonthIndex ReleaseCalendar::last_visible_month(const std::string& id, QuarterIndex t, int day) const {
    const auto& r = rule(id, day);
    if (r.is_quarterly()) throw InputError("series " + id + " has a quarterly rule but is monthly");
    return t.first_month() + r.month_offset();
}

QuarterIndex ReleaseCalendar::last_visible_quarter(const std::string& id, QuarterIndex t, int day) const {
    const auto& r = rule(id, day);
    if (!r.is_quarterly()) throw InputError("series " + id + " has a monthly rule but is quarterly");
    return t + r.quarter_offset;
}

std::string ReleaseCalendar::to_text() const {
    std::string out = "series   0      30     60     90     100\n";
    for (const auto& [id, rules] : rules_) {
        std::string line = id;
        line.resize(std::max<std::size_t>(line.size() + 1, 9), ' ');
        for (int i = 0; i < kDayCount; ++i) {
            auto cell = rules[i].str();
            if (i + 1 < kDayCount) cell.resize(std::max<std::size_t>(cell.size() + 1, 7), ' ');
            line += cell;
        }
        out += line + "\n";
    }
    return out;
}

}  // namespace nowcast
