#include "nowcast/report.hpp"

#include "text_util.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <set>

namespace nowcast::report {

using nlohmann::json;

namespace {

json parse_json(std::string_view text, const char* what) {
    try {
        return json::parse(text.begin(), text.end(), nullptr, true, true);
    } catch (const json::exception& e) {
        throw InputError(std::string(what) + " is not valid JSON: " + e.what());
    }
}

template <class T>
T field(const json& j, const char* key, const char* what) {
    if (!j.contains(key)) throw InputError(std::string(what) + " lacks field '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw InputError(std::string(what) + " field '" + key + "': " + e.what());
    }
}

}  // namespace

std::string to_json(const AccuracyReport& report) {
    json cells = json::array();
    for (const auto& c : report.cells) {
        cells.push_back({{"sample", c.sample},
                         {"day", c.day},
                         {"estimator", c.estimator},
                         {"n", c.metrics.n},
                         {"mse", c.metrics.mse},
                         {"rmse", c.metrics.rmse},
                         {"mae", c.metrics.mae}});
    }
    const json j{{"eval_start", report.eval_start.str()},
                 {"eval_end", report.eval_end.str()},
                 {"subsample_end", report.subsample_end.str()},
                 {"cells", cells}};
    return j.dump(2) + "\n";
}

AccuracyReport from_json(std::string_view text) {
    const json j = parse_json(text, "report");
    AccuracyReport r;
    r.eval_start = QuarterIndex::parse(field<std::string>(j, "eval_start", "report"));
    r.eval_end = QuarterIndex::parse(field<std::string>(j, "eval_end", "report"));
    r.subsample_end = QuarterIndex::parse(field<std::string>(j, "subsample_end", "report"));
    for (const auto& c : field<json>(j, "cells", "report")) {
        ReportCell cell;
        cell.sample = field<std::string>(c, "sample", "report cell");
        cell.day = field<int>(c, "day", "report cell");
        cell.estimator = field<std::string>(c, "estimator", "report cell");
        cell.metrics.n = field<std::size_t>(c, "n", "report cell");
        cell.metrics.mse = field<double>(c, "mse", "report cell");
        cell.metrics.rmse = field<double>(c, "rmse", "report cell");
        cell.metrics.mae = field<double>(c, "mae", "report cell");
        r.cells.push_back(std::move(cell));
    }
    return r;
}

AccuracyReport load(const std::string& path) {
    try {
        return from_json(detail::read_file(path));
    } catch (const InputError& e) {
        const std::string what = e.what();
        if (what.find(path) != std::string::npos) throw;
        throw InputError("report '" + path + "': " + what);
    }
}

std::string cumulative_csv(const AccuracyReport& report) {
    std::string out = "quarter,day,estimator,abs_error,cumulative\n";
    for (const auto& p : report.cumulative) {
        out += p.quarter.str() + "," + std::to_string(p.day) + "," + p.estimator + "," +
               detail::format_exact(p.abs_error) + "," + detail::format_exact(p.cumulative) + "\n";
    }
    return out;
}

std::string model_mae_csv(const AccuracyReport& report) {
    std::set<int> days;
    for (const auto& c : report.cells) {
        if (c.sample == "full") days.insert(c.day);
    }
    std::string out = "day,model,simple,corrected,midpoint\n";
    for (int day : days) {
        for (int m = 1; m <= kModelCount; ++m) {
            out += std::to_string(day) + "," + std::to_string(m);
            for (const char* v : {"simple", "corrected", "midpoint"}) {
                const auto* c = report.find("full", day, "model" + std::to_string(m) + "_" + v);
                out += "," + (c != nullptr ? detail::format_exact(c->metrics.mae) : std::string());
            }
            out += "\n";
        }
    }
    return out;
}

TableLayout parse_layout(std::string_view text) {
    if (text == "table4") return TableLayout::table4;
    if (text == "table5") return TableLayout::table5;
    if (text == "table6") return TableLayout::table6;
    throw InputError("unknown layout '" + std::string(text) + "'; expected table4, table5 or table6");
}

std::string to_string(TableLayout layout) {
    switch (layout) {
        case TableLayout::table4: return "table4";
        case TableLayout::table5: return "table5";
        case TableLayout::table6: return "table6";
    }
    return "table4";
}

std::vector<TableRow> table_rows(const AccuracyReport& report, TableLayout layout) {
    if (report.empty()) throw Error("report has no cells; nothing to tabulate");
    const std::string sample = layout == TableLayout::table6 ? "subsample" : "full";
    const std::string median = layout == TableLayout::table4 ? "median_simple" : "median_corrected";
    const bool corrected_theta = layout != TableLayout::table4;

    std::vector<TableRow> rows;
    const auto add = [&](const std::string& label, const ReportCell& c) {
        rows.push_back({label, c.metrics.mse, c.metrics.rmse, c.metrics.mae, false});
    };
    const auto add_group = [&](std::initializer_list<int> days, const char* theta, const char* theta_label) {
        const ReportCell* benchmark = nullptr;
        bool fallback = false;
        for (int d : days) {
            if (const auto* c = report.find(sample, d, median)) add("Day " + std::to_string(d), *c);
            if (benchmark != nullptr) continue;
            if (corrected_theta) {
                benchmark = report.find(sample, d, std::string(theta) + "_corrected");
                if (benchmark == nullptr) {
                    benchmark = report.find(sample, d, theta);
                    fallback = benchmark != nullptr;
                }
            } else {
                benchmark = report.find(sample, d, theta);
            }
        }
        if (benchmark != nullptr) {
            add(std::string("Benchmark: ") + theta_label + (fallback ? " (no error correction)" : ""), *benchmark);
        }
        if (!rows.empty()) rows.back().group_end = true;
    };
    add_group({0, 30}, "theta_2p", "Theta model 2p");
    add_group({60, 90, 100}, "theta_1p", "Theta model 1p");
    if (rows.empty()) throw Error("report has no " + sample + "-sample cells for " + median);
    if (layout == TableLayout::table6) {
        rows.back().group_end = false;
        rows.push_back({"Benchmark: TDI model", 0.30, 0.55, 0.41, true});
    }
    return rows;
}

std::string render_text(const std::vector<TableRow>& rows) {
    constexpr int kLabel = 52;
    std::string out = fmt::format("{:<{}}{:>20}{:>10}{:>21}\n", "Data available at:", kLabel, "Mean Squared Error",
                                  "Root MSE", "Mean Absolute Error");
    const std::string rule(kLabel + 51, '-');
    out += rule + "\n";
    for (const auto& r : rows) {
        out += fmt::format("{:<{}}{:>20.2f}{:>10.2f}{:>21.2f}\n", r.label, kLabel, r.mse, r.rmse, r.mae);
        if (r.group_end) out += rule + "\n";
    }
    return out;
}

std::string render_csv(const std::vector<TableRow>& rows) {
    std::string out = "data_available_at,mse,rmse,mae\n";
    for (const auto& r : rows) out += fmt::format("{},{:.4f},{:.4f},{:.4f}\n", r.label, r.mse, r.rmse, r.mae);
    return out;
}

std::string to_json(const RunManifest& m) {
    const json j{{"command", m.command},
                 {"config", m.config_path},
                 {"data", m.data_paths},
                 {"calendar", m.calendar_path},
                 {"schema", m.schema_path},
                 {"output_dir", m.output_dir},
                 {"options", parse_json(m.options_json, "manifest options")},
                 {"engine_version", m.engine_version}};
    return j.dump(2) + "\n";
}

RunManifest manifest_from_json(std::string_view text) {
    const json j = parse_json(text, "manifest");
    RunManifest m;
    m.command = field<std::string>(j, "command", "manifest");
    m.config_path = field<std::string>(j, "config", "manifest");
    m.data_paths = field<std::vector<std::string>>(j, "data", "manifest");
    m.calendar_path = field<std::string>(j, "calendar", "manifest");
    m.schema_path = field<std::string>(j, "schema", "manifest");
    m.output_dir = field<std::string>(j, "output_dir", "manifest");
    m.options_json = field<json>(j, "options", "manifest").dump();
    m.engine_version = field<std::string>(j, "engine_version", "manifest");
    return m;
}

std::string config_options_json(const BacktestConfig& c) {
    const json j{{"eval_start", c.eval_start.str()},
                 {"eval_end", c.eval_end.str()},
                 {"sample_start", c.sample_start.str()},
                 {"subsample_end", c.subsample_end.str()},
                 {"days", c.days},
                 {"window_quarters", c.window_quarters},
                 {"hp_lambda", c.hp_lambda},
                 {"theta", {{"input", theta::to_string(c.theta_input)}, {"error_correction", c.theta_error_correction}}},
                 {"audit", c.audit}};
    return j.dump();
}

}  // namespace nowcast::report
