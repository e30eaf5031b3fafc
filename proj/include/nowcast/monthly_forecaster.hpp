#pragma once

#include "nowcast/hp_filter.hpp"
#include "nowcast/series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nowcast::monthly {

enum class Method { trend_step, moving_average, proxy_regression };

[[nodiscard]] std::string to_string(Method m);

/// Largest number of months a series may be extrapolated (exports at day 0 need five).
inline constexpr long kMaxGap = 5;

struct ForecastPoint {
    MonthIndex month;
    double value;
    Method method;
    friend bool operator==(const ForecastPoint&, const ForecastPoint&) = default;
};

/// Observed months followed by contiguous forecasts up to the target month.
class CompletedMonthlySeries {
public:
    CompletedMonthlySeries(MonthlySeries observed, std::vector<ForecastPoint> forecasts);

    [[nodiscard]] const MonthlySeries& observed() const noexcept { return observed_; }
    [[nodiscard]] const std::vector<ForecastPoint>& forecasts() const noexcept { return forecasts_; }
    [[nodiscard]] MonthIndex start() const noexcept { return observed_.start(); }
    [[nodiscard]] MonthIndex last() const;
    [[nodiscard]] std::optional<double> find(MonthIndex m) const;
    /// Observed values followed by forecast values.
    [[nodiscard]] std::vector<double> values() const;

    friend bool operator==(const CompletedMonthlySeries&, const CompletedMonthlySeries&) = default;

private:
    MonthlySeries observed_;
    std::vector<ForecastPoint> forecasts_;
};

/**
 * Trend-step extrapolation for smooth series: with Y the last observation and
 * g the last first difference of the HP trend of the visible history, month
 * last + h is forecast as Y + h * g. Needs at least 4 observations.
 */
CompletedMonthlySeries complete_smooth(const MonthlySeries& series, MonthIndex target,
                                       double lambda = hp::kMonthlyLambda);

/**
 * Moving-average extrapolation for noisy series: base = mean of the last three
 * observations (centred one month before the last), drift = mean of the last
 * three trend growths, and the h-th missing month is base + (h + 1) * drift.
 * Needs at least 6 observations.
 */
CompletedMonthlySeries complete_noisy(const MonthlySeries& series, MonthIndex target,
                                      double lambda = hp::kMonthlyLambda);

/// Dispatches on the series' noise class.
CompletedMonthlySeries complete(const MonthlySeries& series, MonthIndex target, double lambda = hp::kMonthlyLambda);

/// OLS of target y-o-y % growth on proxy y-o-y % growth over their common history.
struct ProxyRegression {
    double alpha = 0.0;
    double beta = 0.0;
    int n_obs = 0;
};

inline constexpr int kMinProxyOverlap = 20;

ProxyRegression fit_proxy_regression(const MonthlySeries& target, const MonthlySeries& proxy);

/// target(m - 12) * (1 + (alpha + beta * proxy_growth(m)) / 100).
double proxy_month_forecast(const MonthlySeries& target, const MonthlySeries& proxy, MonthIndex m);

/**
 * Goods-and-services trade completion. Months where the goods-only proxy is
 * already published are filled by proxy_month_forecast; the remaining months
 * use the moving-average rule on the series augmented with those figures.
 * Without a proxy lead this is complete_noisy over the whole gap.
 */
CompletedMonthlySeries complete_trade(const MonthlySeries& series, const MonthlySeries* proxy, MonthIndex target,
                                      double lambda = hp::kMonthlyLambda);

/// nominal / prices month by month; prices must cover every nominal month.
MonthlySeries deflate(const MonthlySeries& nominal, const MonthlySeries& prices);

}  // namespace nowcast::monthly
