#include "nowcast/snapshot.hpp"

namespace nowcast {

Snapshot take_snapshot(const Dataset& data, const ReleaseCalendar& calendar, QuarterIndex t, int day) {
    day_slot(day);
    Dataset visible;
    for (const auto& [id, s] : data.monthly) {
        if (!calendar.covers(id)) throw InputError("release calendar has no rule for series " + id);
        visible.monthly.emplace(id, s.truncated_through(calendar.last_visible_month(id, t, day)));
    }
    for (const auto& [id, s] : data.quarterly) {
        if (!calendar.covers(id)) throw InputError("release calendar has no rule for series " + id);
        visible.quarterly.emplace(id, s.truncated_through(calendar.last_visible_quarter(id, t, day)));
    }
    return Snapshot(t, day, std::move(visible));
}

Snapshot full_information_snapshot(const Dataset& data, QuarterIndex last) {
    Dataset visible;
    for (const auto& [id, s] : data.monthly) visible.monthly.emplace(id, s.truncated_through(last.last_month()));
    for (const auto& [id, s] : data.quarterly) visible.quarterly.emplace(id, s.truncated_through(last));
    return Snapshot(last, 100, std::move(visible));
}

}  // namespace nowcast
