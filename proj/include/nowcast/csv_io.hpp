#pragma once

#include "nowcast/series.hpp"

#include <string>
#include <string_view>

namespace nowcast {

/**
 * Long-format CSV: one observation per row, columns (period, series_id, value).
 * Period is YYYY-MM for monthly series and YYYY-Qn for quarterly ones; the
 * schema decides which. A leading header row "period,series_id,value" and
 * '#' comment lines are accepted.
 *
 * Rejects unparseable rows (with the row number), duplicate (period, id)
 * pairs, ids missing from the schema and series with interior gaps (naming
 * the first missing period).
 */
Dataset parse_csv(std::string_view text, const SeriesSchema& schema, const std::string& source = "<csv>");
Dataset ingest_csv(const std::string& path, const SeriesSchema& schema);

/// Writes every series in long format, sorted by id then period, values in round-trip precision.
std::string export_csv(const Dataset& data);
void write_csv(const std::string& path, const Dataset& data);

}  // namespace nowcast
