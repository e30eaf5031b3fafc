#pragma once

#include "nowcast/calendar.hpp"
#include "nowcast/nowcast_models.hpp"
#include "nowcast/theta.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nowcast {

struct BacktestConfig {
    QuarterIndex eval_start{2002, 1};
    QuarterIndex eval_end{2019, 4};
    QuarterIndex sample_start{1996, 1};
    /// Last quarter of the sub-sample report.
    QuarterIndex subsample_end{2015, 4};
    std::vector<int> days{0, 30, 60, 90, 100};
    /// 0 for an expanding estimation window.
    int window_quarters = 0;
    double hp_lambda = hp::kMonthlyLambda;
    theta::ThetaInput theta_input = theta::ThetaInput::growth;
    bool theta_error_correction = false;
    /// Re-derive every snapshot from scratch and check visibility and superset rules.
    bool audit = false;
    /// Run the day stages of a quarter concurrently.
    bool parallel = true;

    /// Throws InputError on an inconsistent configuration.
    void validate() const;
};

struct AccuracyMetrics {
    std::size_t n = 0;
    double mse = 0.0;
    double rmse = 0.0;
    double mae = 0.0;
};

/// Mean squared error, its root and mean absolute error. Empty input is an error.
AccuracyMetrics accuracy(std::span<const double> errors);

/// Running sum of absolute errors.
std::vector<double> cumulative_abs_error(std::span<const double> errors);

/**
 * Report name of a ledger record: "median_simple", "median_corrected",
 * "model3_midpoint", "theta_1p", "theta_2p_corrected". Empty for realized rows.
 */
std::string estimator_name(const NowcastRecord& record);

struct ReportCell {
    /// "full" or "subsample".
    std::string sample;
    int day = 0;
    std::string estimator;
    AccuracyMetrics metrics;
};

struct CumulativePoint {
    QuarterIndex quarter;
    int day = 0;
    std::string estimator;
    double abs_error = 0.0;
    double cumulative = 0.0;
};

struct AccuracyReport {
    QuarterIndex eval_start;
    QuarterIndex eval_end;
    QuarterIndex subsample_end;
    std::vector<ReportCell> cells;
    /// Full-sample cumulative absolute errors, grouped by day and estimator, quarters in order.
    std::vector<CumulativePoint> cumulative;

    [[nodiscard]] const ReportCell* find(const std::string& sample, int day, const std::string& estimator) const;
    [[nodiscard]] bool empty() const noexcept { return cells.empty(); }
};

/// Errors (actual - forecast) of every ledger nowcast in the evaluation range, aggregated per cell.
AccuracyReport build_report(const ForecastLedger& ledger, const QuarterlySeries& truth, const BacktestConfig& config);

struct BacktestResult {
    ForecastLedger ledger;
    AccuracyReport report;
    /// Number of audit checks performed (0 unless auditing).
    std::size_t audit_checks = 0;
};

/**
 * Pseudo-real-time exercise: for each quarter of the evaluation range in
 * order and each configured day, snapshot, complete, build regressors, run the
 * six models and the Theta benchmark, then append simple, corrected, midpoint
 * and consensus records. Failures carry (quarter, day) and model context.
 */
BacktestResult run_backtest(const BacktestConfig& config, const Dataset& data, const ReleaseCalendar& calendar,
                            ForecastLedger ledger = {});

}  // namespace nowcast
