#include "nowcast/csv_io.hpp"

#include "text_util.hpp"

#include <charconv>
#include <map>

namespace nowcast {

namespace {

struct Cell {
    double value;
    std::size_t row;
};

double parse_value(std::string_view text, const std::string& where) {
    return detail::parse_double(text, where);
}

template <class Period>
std::vector<double> contiguous_values(const std::string& id, const std::map<long, Cell>& cells,
                                      const std::string& source) {
    std::vector<double> values;
    values.reserve(cells.size());
    long expected = cells.begin()->first;
    for (const auto& [ordinal, cell] : cells) {
        if (ordinal != expected) {
            throw InputError(source + ": series " + id + " has a gap at " + Period::from_ordinal(expected).str());
        }
        values.push_back(cell.value);
        ++expected;
    }
    return values;
}

}  // namespace

Dataset parse_csv(std::string_view text, const SeriesSchema& schema, const std::string& source) {
    std::map<std::string, std::map<long, Cell>> cells;
    std::size_t row = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = text.find('\n', pos);
        const auto raw = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
        pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++row;
        const auto line = detail::trim(raw);
        if (line.empty() || line.front() == '#') continue;

        const std::string where = source + " row " + std::to_string(row);
        const auto fields = detail::split(line, ',');
        if (fields.size() == 3 && fields[0] == "period") continue;
        if (fields.size() != 3) throw InputError(where + ": expected 3 columns (period, series_id, value)");

        const std::string id(fields[1]);
        const SeriesInfo* info = schema.find(id);
        if (info == nullptr) throw InputError(where + ": series '" + id + "' not in schema");

        long ordinal = 0;
        try {
            ordinal = info->frequency == Frequency::monthly ? MonthIndex::parse(fields[0]).ordinal()
                                                            : QuarterIndex::parse(fields[0]).ordinal();
        } catch (const InputError& e) {
            throw InputError(where + ": " + e.what());
        }
        const double value = parse_value(fields[2], where);

        auto [it, inserted] = cells[id].emplace(ordinal, Cell{value, row});
        if (!inserted) {
            throw InputError(where + ": duplicate observation for " + id + " at " + std::string(fields[0]) +
                             " (first seen on row " + std::to_string(it->second.row) + ")");
        }
    }

    Dataset data;
    for (const auto& [id, series_cells] : cells) {
        const SeriesInfo& info = *schema.find(id);
        if (info.frequency == Frequency::monthly) {
            auto values = contiguous_values<MonthIndex>(id, series_cells, source);
            data.monthly.emplace(id, MonthlySeries(id, info.meta, MonthIndex::from_ordinal(series_cells.begin()->first),
                                                   std::move(values)));
        } else {
            auto values = contiguous_values<QuarterIndex>(id, series_cells, source);
            data.quarterly.emplace(
                id, QuarterlySeries(id, {}, QuarterIndex::from_ordinal(series_cells.begin()->first), std::move(values)));
        }
    }
    return data;
}

Dataset ingest_csv(const std::string& path, const SeriesSchema& schema) {
    return parse_csv(detail::read_file(path), schema, path);
}

std::string export_csv(const Dataset& data) {
    // Both maps are ordered by id; interleave them so the file is sorted by id overall.
    std::map<std::string, std::string> blocks;
    for (const auto& [id, s] : data.monthly) {
        std::string block;
        for (std::size_t i = 0; i < s.size(); ++i) {
            block += (s.start() + static_cast<long>(i)).str() + "," + id + "," + detail::format_exact(s.values()[i]) + "\n";
        }
        blocks[id] = std::move(block);
    }
    for (const auto& [id, s] : data.quarterly) {
        std::string block;
        for (std::size_t i = 0; i < s.size(); ++i) {
            block += (s.start() + static_cast<long>(i)).data_label() + "," + id + "," +
                     detail::format_exact(s.values()[i]) + "\n";
        }
        blocks[id] = std::move(block);
    }
    std::string out = "period,series_id,value\n";
    for (const auto& [id, block] : blocks) out += block;
    return out;
}

void write_csv(const std::string& path, const Dataset& data) { detail::write_file(path, export_csv(data)); }

}  // namespace nowcast
