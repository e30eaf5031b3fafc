#pragma once

#include "nowcast/hp_filter.hpp"
#include "nowcast/monthly_forecaster.hpp"
#include "nowcast/ols.hpp"
#include "nowcast/snapshot.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nowcast::bridge {

// Regressor names shared by the bridge models.
inline constexpr const char* kSum = "sum";
inline constexpr const char* kEsi = "ESI_c";
inline constexpr const char* kIce = "ICE";
inline constexpr const char* kIpi = "ipi";
inline constexpr const char* kCem = "cem";
inline constexpr const char* kCar = "car";
inline constexpr const char* kAtm = "atm";
inline constexpr const char* kExp = "exp";
inline constexpr const char* kImp = "imp";
inline constexpr const char* kCepr = "CEPR";

struct BridgeOptions {
    double lambda = hp::kMonthlyLambda;
    /// First quarter of every estimation sample.
    QuarterIndex sample_start{1996, 1};
};

/// Mean of the three months of `t`; every month must be observed or forecast.
double quarterly_mean(const monthly::CompletedMonthlySeries& series, QuarterIndex t);

/// (current / year_ago - 1) * 100; a zero base is an error.
double yoy_growth(double current, double year_ago);
double yoy_growth(const QuarterlySeries& series, QuarterIndex t);

/// GDP growth lags summed into `sum`: {1, 2, 3} from day 60 on, {2, 3} before.
std::vector<int> sum_lags(int day);

double sum_regressor(const QuarterlySeries& gdp_growth, QuarterIndex t, int day);

enum class TradeKind { exports, imports };

struct TradeNowcast {
    /// Volume y-o-y % growth for the nowcast quarter.
    double growth = 0.0;
    /// EXP (or IMP) of t-4 scaled by the growth.
    double level = 0.0;
    /// Lag of the deflator growth: 1 once the previous quarter is released, 2 before.
    int deflator_lag = 1;
    ols::RegressionFit fit;
};

inline constexpr int kMinTradeQuarters = 16;

/**
 * Real export (import) volume nowcast. The NQA volume y-o-y growth is
 * regressed on nominal goods-and-services growth, the lagged deflator growth
 * and oil growth over every visible quarter from the sample start, then
 * applied to the snapshot's quarter. `nominal` and `oil` are the completed
 * EXGS (IMGS) and OIL series.
 */
TradeNowcast trade_volume_nowcast(TradeKind kind, const Snapshot& snapshot,
                                  const monthly::CompletedMonthlySeries& nominal,
                                  const monthly::CompletedMonthlySeries& oil, const BridgeOptions& options = {});

/// Convenience overload completing EXGS/IMGS and OIL from the snapshot first.
TradeNowcast trade_volume_nowcast(TradeKind kind, const Snapshot& snapshot, const BridgeOptions& options = {});

struct RegressorRow {
    QuarterIndex quarter;
    /// Only regressors that could be computed for this quarter are present.
    std::map<std::string, double> values;
    /// Released q-o-q GDP growth, if visible in the snapshot.
    std::optional<double> gdp;
};

struct RegressorSet {
    QuarterIndex target;
    int day = 0;
    /// One row per quarter from the sample start through the target, in order.
    std::vector<RegressorRow> rows;
    std::map<std::string, monthly::CompletedMonthlySeries> completed;
    std::map<std::string, TradeNowcast> trade;

    [[nodiscard]] const RegressorRow* find(QuarterIndex q) const;
    [[nodiscard]] const RegressorRow& at(QuarterIndex q) const;
};

/**
 * Completes every monthly series of the snapshot through the last month of
 * its quarter and assembles the quarterly regressors. Historical exp/imp are
 * the released NQA volume growths; the nowcast quarter gets trade_volume_nowcast.
 * ATM is deflated by CPI before completion.
 */
RegressorSet build_regressors(const Snapshot& snapshot, const BridgeOptions& options = {});

}  // namespace nowcast::bridge
