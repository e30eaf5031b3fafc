#pragma once

#include "nowcast/evaluation.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace nowcast::report {

inline constexpr const char* kEngineVersion = "0.1.0";

/// Structured report: every (sample, day, estimator) cell with n, mse, rmse, mae.
std::string to_json(const AccuracyReport& report);
AccuracyReport from_json(std::string_view text);
AccuracyReport load(const std::string& path);

/// Long form "quarter,day,estimator,abs_error,cumulative".
std::string cumulative_csv(const AccuracyReport& report);

/// Full-sample MAE per day and model: "day,model,simple,corrected,midpoint".
std::string model_mae_csv(const AccuracyReport& report);

enum class TableLayout { table4, table5, table6 };

TableLayout parse_layout(std::string_view text);
[[nodiscard]] std::string to_string(TableLayout layout);

struct TableRow {
    std::string label;
    double mse = 0.0;
    double rmse = 0.0;
    double mae = 0.0;
    /// Separator line follows this row in text rendering.
    bool group_end = false;
};

/**
 * Rows of the accuracy tables. table4: median of the simple forecasts, full
 * sample. table5: median with error correction, full sample. table6: as
 * table5 on the sub-sample, plus the fixed TDI reference row. Each day row is
 * followed after days 30 and 100 by the Theta benchmark of that horizon.
 * An empty report is an error.
 */
std::vector<TableRow> table_rows(const AccuracyReport& report, TableLayout layout);

std::string render_text(const std::vector<TableRow>& rows);
std::string render_csv(const std::vector<TableRow>& rows);

/// Everything needed to repeat a run. Paths are kept as given.
struct RunManifest {
    std::string command;
    std::string config_path;
    std::vector<std::string> data_paths;
    std::string calendar_path;
    std::string schema_path;
    std::string output_dir;
    /// Resolved option values, as JSON text.
    std::string options_json = "{}";
    std::string engine_version = kEngineVersion;

    friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

std::string to_json(const RunManifest& manifest);
RunManifest manifest_from_json(std::string_view text);

/// JSON object text for a backtest configuration.
std::string config_options_json(const BacktestConfig& config);

}  // namespace nowcast::report
