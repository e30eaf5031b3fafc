#include "nowcast/cli.hpp"

#include "nowcast/csv_io.hpp"
#include "nowcast/report.hpp"
#include "nowcast/synthetic.hpp"
#include "text_util.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <filesystem>
#include <optional>
#include <ostream>
#include <set>

namespace nowcast::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string resolve(const std::string& base_dir, const std::string& path) {
    const fs::path p(path);
    if (p.is_absolute() || base_dir.empty()) return p.lexically_normal().string();
    return (fs::path(base_dir) / p).lexically_normal().string();
}

template <class T>
T get(const json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw InputError(std::string("config field '") + key + "': " + e.what());
    }
}

QuarterIndex get_quarter(const json& j, const char* key) {
    return QuarterIndex::parse(get<std::string>(j, key));
}

Dataset load_dataset(const std::vector<std::string>& paths, const SeriesSchema& schema) {
    if (paths.empty()) throw InputError("no data files given");
    Dataset data;
    for (const auto& p : paths) data.merge(ingest_csv(p, schema));
    return data;
}

SeriesSchema load_schema(const std::string& path) {
    return path.empty() ? SeriesSchema::defaults() : SeriesSchema::load(path);
}

ReleaseCalendar load_calendar(const std::string& path) {
    return path.empty() ? ReleaseCalendar::defaults() : ReleaseCalendar::load(path);
}

std::string fmt3(std::optional<double> v) { return v ? fmt::format("{:.3f}", *v) : std::string("-"); }

json optional_json(std::optional<double> v) { return v ? json(*v) : json(nullptr); }

struct NowcastArgs {
    std::vector<std::string> data;
    std::string calendar;
    std::string schema;
    std::string quarter;
    int day = 0;
    std::string ledger;
    std::string output;
    std::string sample_start = "1996Q1";
    double lambda = hp::kMonthlyLambda;
    std::string theta_input = "growth";
    bool theta_correction = false;
};

int cmd_nowcast(const NowcastArgs& a, std::ostream& out) {
    const QuarterIndex t = QuarterIndex::parse(a.quarter);
    day_slot(a.day);
    const auto schema = load_schema(a.schema);
    const auto calendar = load_calendar(a.calendar);
    const auto data = load_dataset(a.data, schema);
    const auto ledger = a.ledger.empty() ? ForecastLedger{} : ForecastLedger::load(a.ledger);
    const auto input = theta::parse_theta_input(a.theta_input);

    bridge::BridgeOptions options;
    options.lambda = a.lambda;
    options.sample_start = QuarterIndex::parse(a.sample_start);
    const Snapshot snap = take_snapshot(data, calendar, t, a.day);
    const auto consensus = consensus_nowcasts(snap, ledger, options);
    auto th = theta::theta_nowcast(snap, input, options.sample_start);
    if (a.theta_correction) theta::theta_error_correct(th, ledger, snap);

    out << fmt::format("GDP q-o-q growth nowcast for {} with data available at day {}\n", t.str(), a.day);
    out << fmt::format("{:<8}{:>12}{:>12}{:>12}\n", "model", "simple", "corrected", "midpoint");
    json models = json::array();
    for (int i = 0; i < kModelCount; ++i) {
        const auto k = static_cast<std::size_t>(i);
        out << fmt::format("{:<8}{:>12}{:>12}{:>12}\n", i + 1, fmt3(consensus.simple[k]), fmt3(consensus.corrected[k]),
                           fmt3(consensus.midpoint(i)));
        models.push_back({{"model", i + 1},
                          {"simple", consensus.simple[k]},
                          {"corrected", optional_json(consensus.corrected[k])},
                          {"midpoint", optional_json(consensus.midpoint(i))}});
    }
    out << fmt::format("median of simple forecasts:               {:.3f}\n", consensus.median_simple);
    out << fmt::format("median of simple and corrected forecasts: {:.3f}\n", consensus.median_corrected);
    out << fmt::format("Theta benchmark ({}):                 {:.3f}", th.model, th.value);
    if (th.corrected) out << fmt::format(" (corrected {:.3f})", *th.corrected);
    out << "\n";

    if (!a.output.empty()) {
        const json j{{"quarter", t.str()},
                     {"day", a.day},
                     {"models", models},
                     {"median_simple", consensus.median_simple},
                     {"median_corrected", consensus.median_corrected},
                     {"theta",
                      {{"model", th.model},
                       {"horizon", th.horizon},
                       {"input", theta::to_string(input)},
                       {"value", th.value},
                       {"corrected", optional_json(th.corrected)}}}};
        detail::write_file(a.output, j.dump(2) + "\n");
    }
    return kExitOk;
}

int cmd_backtest(const std::string& config_path, const std::string& output_override, std::ostream& out) {
    BacktestJob job = load_backtest_config(config_path);
    if (!output_override.empty()) job.output_dir = output_override;
    if (job.output_dir.empty()) throw InputError("no output directory: set output_dir in the config or pass --output-dir");

    const auto schema = load_schema(job.schema);
    const auto calendar = load_calendar(job.calendar);
    const auto data = load_dataset(job.data, schema);
    const auto result = run_backtest(job.config, data, calendar);

    std::error_code ec;
    fs::create_directories(job.output_dir, ec);
    if (ec) throw InputError("cannot create output directory '" + job.output_dir + "': " + ec.message());
    const auto path = [&](const char* name) { return (fs::path(job.output_dir) / name).string(); };

    result.ledger.save(path("ledger.csv"));
    detail::write_file(path("report.json"), report::to_json(result.report));
    detail::write_file(path("cumulative.csv"), report::cumulative_csv(result.report));
    detail::write_file(path("model_mae.csv"), report::model_mae_csv(result.report));
    for (auto layout : {report::TableLayout::table4, report::TableLayout::table5, report::TableLayout::table6}) {
        const auto name = report::to_string(layout) + ".csv";
        std::string text = "data_available_at,mse,rmse,mae\n";
        try {
            text = report::render_csv(report::table_rows(result.report, layout));
        } catch (const Error&) {
            // A configuration whose days miss a layout's sample still writes the header.
        }
        detail::write_file(path(name.c_str()), text);
    }

    report::RunManifest manifest;
    manifest.command = "backtest";
    manifest.config_path = config_path;
    manifest.data_paths = job.data;
    manifest.calendar_path = job.calendar;
    manifest.schema_path = job.schema;
    manifest.output_dir = job.output_dir;
    manifest.options_json = report::config_options_json(job.config);
    detail::write_file(path("manifest.json"), report::to_json(manifest));

    out << fmt::format("backtest {}-{}: {} ledger records written to {}\n", job.config.eval_start.str(),
                       job.config.eval_end.str(), result.ledger.size(), job.output_dir);
    if (job.config.audit) out << fmt::format("audit: {} checks passed\n", result.audit_checks);
    for (auto layout : {report::TableLayout::table4, report::TableLayout::table5}) {
        try {
            out << "\n" << report::to_string(layout) << "\n" << report::render_text(report::table_rows(result.report, layout));
        } catch (const Error&) {
        }
    }
    return kExitOk;
}

int cmd_table(const std::string& report_path, const std::string& layout_text, const std::string& format,
              std::ostream& out) {
    const auto layout = report::parse_layout(layout_text);
    if (format != "text" && format != "csv") throw InputError("unknown format '" + format + "'; expected text or csv");
    const auto rows = report::table_rows(report::load(report_path), layout);
    out << (format == "csv" ? report::render_csv(rows) : report::render_text(rows));
    return kExitOk;
}

int cmd_fit(const std::vector<std::string>& data_paths, const std::string& schema_path, const std::string& through_text,
            const std::string& sample_start, std::ostream& out) {
    const auto data = load_dataset(data_paths, load_schema(schema_path));
    const auto& gdp = data.quarterly_series("GDP_QOQ");
    if (gdp.empty()) throw InputError("GDP_QOQ has no observations");
    const QuarterIndex through = through_text.empty() ? gdp.last() : QuarterIndex::parse(through_text);
    if (!gdp.contains(through)) throw InputError("GDP_QOQ has no observation for " + through.str());

    bridge::BridgeOptions options;
    options.sample_start = QuarterIndex::parse(sample_start);
    const Snapshot full = full_information_snapshot(data, through);
    const Snapshot snap(through + 1, 100, full.data());
    const auto regressors = bridge::build_regressors(snap, options);
    std::vector<std::pair<std::string, ols::RegressionFit>> columns;
    for (const auto& spec : bridge_models()) {
        try {
            columns.emplace_back("(" + spec.label() + ")", estimate_model(spec, regressors));
        } catch (const Error& e) {
            throw Error("model " + spec.label() + ": " + e.what());
        }
    }
    out << fmt::format("Bridge models estimated over {} - {}\n", options.sample_start.str(), through.str());
    out << ols::render_table(columns);
    return kExitOk;
}

int cmd_synth(const std::string& output, synth::SynthOptions o, const std::string& last, std::ostream& out) {
    o.last = QuarterIndex::parse(last);
    const auto data = synth::synthesize(o);
    write_csv(output, data);
    out << fmt::format("synthetic dataset through {} written to {}\n", o.last.str(), output);
    return kExitOk;
}

}  // namespace

BacktestJob parse_backtest_config(std::string_view text, const std::string& base_dir) {
    json j;
    try {
        j = json::parse(text.begin(), text.end(), nullptr, true, true);
    } catch (const json::exception& e) {
        throw InputError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw InputError("config must be a JSON object");
    static const std::set<std::string> known{"data",          "calendar",   "schema",          "output_dir",
                                             "eval_start",    "eval_end",   "sample_start",    "subsample_end",
                                             "days",          "window_quarters", "hp_lambda", "theta",
                                             "audit",         "parallel"};
    for (const auto& [key, value] : j.items()) {
        if (known.count(key) == 0) throw InputError("unknown config field '" + key + "'");
    }

    BacktestJob job;
    auto& c = job.config;
    if (!j.contains("data")) throw InputError("config lacks field 'data'");
    if (j.at("data").is_string()) {
        job.data.push_back(resolve(base_dir, j.at("data").get<std::string>()));
    } else {
        for (const auto& p : get<std::vector<std::string>>(j, "data")) job.data.push_back(resolve(base_dir, p));
    }
    if (j.contains("calendar")) job.calendar = resolve(base_dir, get<std::string>(j, "calendar"));
    if (j.contains("schema")) job.schema = resolve(base_dir, get<std::string>(j, "schema"));
    if (j.contains("output_dir")) job.output_dir = resolve(base_dir, get<std::string>(j, "output_dir"));
    if (j.contains("eval_start")) c.eval_start = get_quarter(j, "eval_start");
    if (j.contains("eval_end")) c.eval_end = get_quarter(j, "eval_end");
    if (j.contains("sample_start")) c.sample_start = get_quarter(j, "sample_start");
    if (j.contains("subsample_end")) c.subsample_end = get_quarter(j, "subsample_end");
    if (j.contains("days")) c.days = get<std::vector<int>>(j, "days");
    if (j.contains("window_quarters")) c.window_quarters = get<int>(j, "window_quarters");
    if (j.contains("hp_lambda")) c.hp_lambda = get<double>(j, "hp_lambda");
    if (j.contains("audit")) c.audit = get<bool>(j, "audit");
    if (j.contains("parallel")) c.parallel = get<bool>(j, "parallel");
    if (j.contains("theta")) {
        const auto& th = j.at("theta");
        if (!th.is_object()) throw InputError("config field 'theta' must be an object");
        for (const auto& [key, value] : th.items()) {
            if (key != "input" && key != "error_correction") throw InputError("unknown config field 'theta." + key + "'");
        }
        if (th.contains("input")) c.theta_input = theta::parse_theta_input(get<std::string>(th, "input"));
        if (th.contains("error_correction")) c.theta_error_correction = get<bool>(th, "error_correction");
    }
    c.validate();
    return job;
}

BacktestJob load_backtest_config(const std::string& path) {
    const std::string text = detail::read_file(path);
    try {
        return parse_backtest_config(text, fs::path(path).parent_path().string());
    } catch (const InputError& e) {
        throw InputError("config '" + path + "': " + e.what());
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"GDP nowcasting with bridge equations, HP-filter gap filling and median consensus"};
    app.require_subcommand(1);

    NowcastArgs na;
    auto* nowcast = app.add_subcommand("nowcast", "Nowcast one quarter at one day stage");
    nowcast->add_option("--data", na.data, "Data CSV (period,series_id,value); repeatable")->required();
    nowcast->add_option("--calendar", na.calendar, "Release calendar file (default: built-in)");
    nowcast->add_option("--schema", na.schema, "Series schema file (default: built-in)");
    nowcast->add_option("--quarter", na.quarter, "Quarter to nowcast, e.g. 2019Q4")->required();
    nowcast->add_option("--day", na.day, "Day stage: 0, 30, 60, 90 or 100")->required();
    nowcast->add_option("--ledger", na.ledger, "Ledger CSV with earlier forecasts, for error correction");
    nowcast->add_option("--output", na.output, "Write the nowcast as JSON");
    nowcast->add_option("--sample-start", na.sample_start, "First estimation quarter")->capture_default_str();
    nowcast->add_option("--hp-lambda", na.lambda, "HP smoothing parameter")->capture_default_str();
    nowcast->add_option("--theta-input", na.theta_input, "Theta input series: growth or level")->capture_default_str();
    nowcast->add_flag("--theta-correction", na.theta_correction, "Error-correct the Theta benchmark");

    std::string config_path;
    std::string output_dir;
    auto* backtest = app.add_subcommand("backtest", "Run the pseudo-real-time evaluation");
    backtest->add_option("--config", config_path, "Backtest configuration (JSON, comments allowed)")->required();
    backtest->add_option("--output-dir", output_dir, "Override the configured output directory");

    std::string report_path;
    std::string layout = "table4";
    std::string format = "text";
    auto* table = app.add_subcommand("table", "Render an accuracy table from a report");
    table->add_option("--report", report_path, "report.json written by backtest")->required();
    table->add_option("--layout", layout, "table4, table5 or table6")->capture_default_str();
    table->add_option("--format", format, "text or csv")->capture_default_str();

    std::vector<std::string> fit_data;
    std::string fit_schema;
    std::string through;
    std::string fit_start = "1996Q1";
    auto* fit = app.add_subcommand("fit", "Estimate the six bridge models on the full sample");
    fit->add_option("--data", fit_data, "Data CSV; repeatable")->required();
    fit->add_option("--schema", fit_schema, "Series schema file (default: built-in)");
    fit->add_option("--through", through, "Last estimation quarter (default: last GDP_QOQ quarter)");
    fit->add_option("--sample-start", fit_start, "First estimation quarter")->capture_default_str();

    std::string synth_out;
    synth::SynthOptions so;
    std::string last = "2019Q4";
    auto* synth_cmd = app.add_subcommand("synth", "Write the synthetic test dataset");
    synth_cmd->add_option("--output", synth_out, "CSV path")->required();
    synth_cmd->add_option("--seed", so.seed, "Random seed")->capture_default_str();
    synth_cmd->add_option("--sigma", so.gdp_sigma, "GDP shock standard deviation")->capture_default_str();
    synth_cmd->add_option("--trade-sigma", so.trade_sigma, "Trade volume shock standard deviation")
        ->capture_default_str();
    synth_cmd->add_option("--ice-sigma", so.ice_sigma, "Innovation standard deviation of the ICE cycle")
        ->capture_default_str();
    synth_cmd->add_option("--last", last, "Last quarter")->capture_default_str();

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (nowcast->parsed()) return cmd_nowcast(na, out);
        if (backtest->parsed()) return cmd_backtest(config_path, output_dir, out);
        if (table->parsed()) return cmd_table(report_path, layout, format, out);
        if (fit->parsed()) return cmd_fit(fit_data, fit_schema, through, fit_start, out);
        if (synth_cmd->parsed()) return cmd_synth(synth_out, so, last, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace nowcast::cli
