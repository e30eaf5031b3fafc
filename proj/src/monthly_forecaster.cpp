#include "nowcast/monthly_forecaster.hpp"

#include "nowcast/ols.hpp"

#include <array>

namespace nowcast::monthly {

namespace {

long gap_to(const MonthlySeries& s, MonthIndex target) {
    if (s.empty()) throw Error("series " + s.id() + " has no visible observations");
    const long h = target - s.last();
    if (h > kMaxGap) {
        throw Error("series " + s.id() + ": " + std::to_string(h) + " months to forecast after " + s.last().str() +
                    " exceeds the limit of " + std::to_string(kMaxGap));
    }
    return h;
}

std::vector<double> smooth_steps(const std::string& id, std::span<const double> values, long h_max, double lambda) {
    if (values.size() < 4) throw Error("series " + id + ": trend-step forecast needs at least 4 observations");
    const auto growth = hp::trend_growth(hp::hp_trend(values, lambda));
    const double g = growth.back();
    const double y = values.back();
    std::vector<double> out;
    for (long h = 1; h <= h_max; ++h) out.push_back(y + static_cast<double>(h) * g);
    return out;
}

std::vector<double> moving_average_steps(const std::string& id, std::span<const double> values, long h_max,
                                         double lambda) {
    if (values.size() < 6) throw Error("series " + id + ": moving-average forecast needs at least 6 observations");
    const auto growth = hp::trend_growth(hp::hp_trend(values, lambda));
    const std::size_t n = values.size();
    const std::size_t m = growth.size();
    const double base = (values[n - 1] + values[n - 2] + values[n - 3]) / 3.0;
    const double drift = (growth[m - 1] + growth[m - 2] + growth[m - 3]) / 3.0;
    std::vector<double> out;
    for (long h = 1; h <= h_max; ++h) out.push_back(base + static_cast<double>(h + 1) * drift);
    return out;
}

std::vector<ForecastPoint> tag(MonthIndex first, const std::vector<double>& values, Method method) {
    std::vector<ForecastPoint> out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        out.push_back({first + static_cast<long>(i), values[i], method});
    }
    return out;
}

std::optional<double> yoy(const MonthlySeries& s, MonthIndex m) {
    const auto now = s.find(m);
    const auto before = s.find(m - 12);
    if (!now || !before || *before == 0.0) return std::nullopt;
    return (*now / *before - 1.0) * 100.0;
}

}  // namespace

std::string to_string(Method m) {
    switch (m) {
        case Method::trend_step: return "trend_step";
        case Method::moving_average: return "moving_average";
        case Method::proxy_regression: return "proxy_regression";
    }
    return "trend_step";
}

CompletedMonthlySeries::CompletedMonthlySeries(MonthlySeries observed, std::vector<ForecastPoint> forecasts)
    : observed_(std::move(observed)), forecasts_(std::move(forecasts)) {
    MonthIndex expected = observed_.empty() ? observed_.start() : observed_.last() + 1;
    for (const auto& f : forecasts_) {
        if (f.month != expected) throw Error("series " + observed_.id() + ": forecasts must follow the observations contiguously");
        ++expected;
    }
}

MonthIndex CompletedMonthlySeries::last() const {
    if (!forecasts_.empty()) return forecasts_.back().month;
    return observed_.last();
}

std::optional<double> CompletedMonthlySeries::find(MonthIndex m) const {
    if (auto v = observed_.find(m)) return v;
    for (const auto& f : forecasts_) {
        if (f.month == m) return f.value;
    }
    return std::nullopt;
}

std::vector<double> CompletedMonthlySeries::values() const {
    std::vector<double> out(observed_.values().begin(), observed_.values().end());
    for (const auto& f : forecasts_) out.push_back(f.value);
    return out;
}

CompletedMonthlySeries complete_smooth(const MonthlySeries& series, MonthIndex target, double lambda) {
    const long h = gap_to(series, target);
    if (h <= 0) return CompletedMonthlySeries(series, {});
    return CompletedMonthlySeries(
        series, tag(series.last() + 1, smooth_steps(series.id(), series.values(), h, lambda), Method::trend_step));
}

CompletedMonthlySeries complete_noisy(const MonthlySeries& series, MonthIndex target, double lambda) {
    const long h = gap_to(series, target);
    if (h <= 0) return CompletedMonthlySeries(series, {});
    return CompletedMonthlySeries(
        series,
        tag(series.last() + 1, moving_average_steps(series.id(), series.values(), h, lambda), Method::moving_average));
}

CompletedMonthlySeries complete(const MonthlySeries& series, MonthIndex target, double lambda) {
    return series.meta().noise == NoiseClass::noisy ? complete_noisy(series, target, lambda)
                                                    : complete_smooth(series, target, lambda);
}

ProxyRegression fit_proxy_regression(const MonthlySeries& target, const MonthlySeries& proxy) {
    std::vector<double> dependent;
    std::vector<double> regressor;
    if (!target.empty()) {
        for (MonthIndex m = target.start() + 12; m <= target.last(); ++m) {
            const auto ty = yoy(target, m);
            const auto py = yoy(proxy, m);
            if (ty && py) {
                dependent.push_back(*ty);
                regressor.push_back(*py);
            }
        }
    }
    if (dependent.size() < static_cast<std::size_t>(kMinProxyOverlap)) {
        throw Error("proxy regression " + target.id() + " on " + proxy.id() + ": only " +
                    std::to_string(dependent.size()) + " overlapping y-o-y months, need " +
                    std::to_string(kMinProxyOverlap));
    }
    ols::DesignMatrix x({proxy.id()}, true);
    for (double r : regressor) x.add_row(std::array<double, 1>{r});
    const auto f = ols::fit(x, dependent);
    return {f.coefficients[0], f.coefficients[1], f.n_obs};
}

double proxy_month_forecast(const MonthlySeries& target, const MonthlySeries& proxy, MonthIndex m) {
    const auto proxy_growth = yoy(proxy, m);
    if (!proxy_growth) throw Error("proxy " + proxy.id() + " has no y-o-y growth at " + m.str());
    const auto base = target.find(m - 12);
    if (!base) throw Error("series " + target.id() + " has no observation at " + (m - 12).str());
    if (*base == 0.0) throw Error("series " + target.id() + " is zero at " + (m - 12).str() + "; growth undefined");
    const auto reg = fit_proxy_regression(target, proxy);
    return *base * (1.0 + (reg.alpha + reg.beta * *proxy_growth) / 100.0);
}

CompletedMonthlySeries complete_trade(const MonthlySeries& series, const MonthlySeries* proxy, MonthIndex target,
                                      double lambda) {
    const long h = gap_to(series, target);
    if (h <= 0) return CompletedMonthlySeries(series, {});

    std::vector<ForecastPoint> forecasts;
    std::vector<double> augmented(series.values().begin(), series.values().end());
    MonthIndex next = series.last() + 1;
    if (proxy != nullptr && !proxy->empty() && proxy->last() >= next) {
        const auto reg = fit_proxy_regression(series, *proxy);
        for (; next <= target && proxy->contains(next); ++next) {
            const double base = series.at(next - 12);
            if (base == 0.0) throw Error("series " + series.id() + " is zero at " + (next - 12).str());
            const auto pg = yoy(*proxy, next);
            if (!pg) throw Error("proxy " + proxy->id() + " has no y-o-y growth at " + next.str());
            const double value = base * (1.0 + (reg.alpha + reg.beta * *pg) / 100.0);
            forecasts.push_back({next, value, Method::proxy_regression});
            augmented.push_back(value);
        }
    }
    const long rest = target - next + 1;
    if (rest > 0) {
        const auto tail = moving_average_steps(series.id(), augmented, rest, lambda);
        for (long i = 0; i < rest; ++i) forecasts.push_back({next + i, tail[static_cast<std::size_t>(i)], Method::moving_average});
    }
    return CompletedMonthlySeries(series, std::move(forecasts));
}

MonthlySeries deflate(const MonthlySeries& nominal, const MonthlySeries& prices) {
    std::vector<double> real;
    real.reserve(nominal.size());
    for (std::size_t i = 0; i < nominal.size(); ++i) {
        const MonthIndex m = nominal.start() + static_cast<long>(i);
        const auto p = prices.find(m);
        if (!p) throw Error("cannot deflate " + nominal.id() + ": " + prices.id() + " missing at " + m.str());
        if (*p == 0.0) throw Error("cannot deflate " + nominal.id() + ": " + prices.id() + " is zero at " + m.str());
        real.push_back(nominal.values()[i] / *p);
    }
    return MonthlySeries(nominal.id(), nominal.meta(), nominal.start(), std::move(real));
}

}  // namespace nowcast::monthly
