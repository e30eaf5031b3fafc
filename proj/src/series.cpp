#include "nowcast/series.hpp"

#include "text_util.hpp"

namespace nowcast {

std::string to_string(Unit u) {
    switch (u) {
        case Unit::index: return "index";
        case Unit::currency: return "currency";
        case Unit::percent: return "percent";
    }
    return "index";
}

std::string to_string(NoiseClass n) { return n == NoiseClass::smooth ? "smooth" : "noisy"; }

std::string to_string(Frequency f) { return f == Frequency::monthly ? "monthly" : "quarterly"; }

Unit parse_unit(std::string_view text) {
    if (text == "index") return Unit::index;
    if (text == "currency") return Unit::currency;
    if (text == "percent") return Unit::percent;
    throw InputError("unknown unit '" + std::string(text) + "'");
}

NoiseClass parse_noise_class(std::string_view text) {
    if (text == "smooth") return NoiseClass::smooth;
    if (text == "noisy") return NoiseClass::noisy;
    throw InputError("unknown noise class '" + std::string(text) + "'");
}

Frequency parse_frequency(std::string_view text) {
    if (text == "monthly") return Frequency::monthly;
    if (text == "quarterly") return Frequency::quarterly;
    throw InputError("unknown frequency '" + std::string(text) + "'");
}

const MonthlySeries& Dataset::monthly_series(const std::string& id) const {
    const auto it = monthly.find(id);
    if (it == monthly.end()) throw Error("monthly series " + id + " not in dataset");
    return it->second;
}

const QuarterlySeries& Dataset::quarterly_series(const std::string& id) const {
    const auto it = quarterly.find(id);
    if (it == quarterly.end()) throw Error("quarterly series " + id + " not in dataset");
    return it->second;
}

void Dataset::merge(Dataset other) {
    for (auto& [id, s] : other.monthly) {
        if (has_monthly(id) || has_quarterly(id)) throw InputError("series " + id + " supplied twice");
        monthly.emplace(id, std::move(s));
    }
    for (auto& [id, s] : other.quarterly) {
        if (has_monthly(id) || has_quarterly(id)) throw InputError("series " + id + " supplied twice");
        quarterly.emplace(id, std::move(s));
    }
}

SeriesSchema SeriesSchema::defaults() {
    SeriesSchema s;
    const auto monthly = [&](const char* id, Unit u, NoiseClass n) {
        s.set(id, SeriesInfo{Frequency::monthly, MonthlyMeta{u, n}});
    };
    monthly("ESI", Unit::index, NoiseClass::smooth);
    monthly("ICE", Unit::index, NoiseClass::smooth);
    monthly("IPI", Unit::index, NoiseClass::noisy);
    monthly("CEM", Unit::index, NoiseClass::noisy);
    monthly("CAR", Unit::index, NoiseClass::smooth);
    monthly("ATM", Unit::currency, NoiseClass::noisy);
    // Trade series are completed with the moving-average rule.
    monthly("EXGS", Unit::currency, NoiseClass::noisy);
    monthly("IMGS", Unit::currency, NoiseClass::noisy);
    monthly("EXG", Unit::currency, NoiseClass::noisy);
    monthly("IMG", Unit::currency, NoiseClass::noisy);
    monthly("CPI", Unit::index, NoiseClass::smooth);
    monthly("OIL", Unit::currency, NoiseClass::smooth);
    monthly("CEPR", Unit::percent, NoiseClass::smooth);
    for (const char* id : {"GDP", "GDP_QOQ", "EXP", "IMP", "DEF_EXP", "DEF_IMP"}) {
        s.set(id, SeriesInfo{Frequency::quarterly, {}});
    }
    return s;
}

SeriesSchema SeriesSchema::load(const std::string& path) {
    try {
        return parse(detail::read_file(path));
    } catch (const InputError& e) {
        const std::string what = e.what();
        if (what.find(path) != std::string::npos) throw;
        throw InputError("schema '" + path + "': " + what);
    }
}

SeriesSchema SeriesSchema::parse(std::string_view text) {
    SeriesSchema s;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = text.find('\n', pos);
        const auto line = detail::strip_comment(text.substr(pos, end - pos));
        ++line_no;
        pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
        if (line.empty()) continue;
        const auto f = detail::split(line, ',');
        if (f.size() == 4 && f[0] == "series_id") continue;
        if (f.size() != 4) {
            throw InputError("schema line " + std::to_string(line_no) +
                             ": expected series_id,frequency,unit,noise_class");
        }
        SeriesInfo info;
        info.frequency = parse_frequency(f[1]);
        if (info.frequency == Frequency::monthly) {
            info.meta = MonthlyMeta{parse_unit(f[2]), parse_noise_class(f[3])};
        }
        s.set(std::string(f[0]), info);
    }
    return s;
}

const SeriesInfo* SeriesSchema::find(const std::string& id) const {
    const auto it = entries_.find(id);
    return it == entries_.end() ? nullptr : &it->second;
}

}  // namespace nowcast
