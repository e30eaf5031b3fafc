#include "nowcast/quarterly_bridge.hpp"

#include <array>

namespace nowcast::bridge {

namespace {

std::optional<double> mean_if_complete(const monthly::CompletedMonthlySeries& s, QuarterIndex q) {
    double total = 0.0;
    for (int i = 1; i <= 3; ++i) {
        const auto v = s.find(q.month(i));
        if (!v) return std::nullopt;
        total += *v;
    }
    return total / 3.0;
}

std::optional<double> yoy_if_complete(const monthly::CompletedMonthlySeries& s, QuarterIndex q) {
    const auto now = mean_if_complete(s, q);
    const auto before = mean_if_complete(s, q - 4);
    if (!now || !before || *before == 0.0) return std::nullopt;
    return yoy_growth(*now, *before);
}

std::optional<double> yoy_if_present(const QuarterlySeries& s, QuarterIndex q) {
    const auto now = s.find(q);
    const auto before = s.find(q - 4);
    if (!now || !before || *before == 0.0) return std::nullopt;
    return yoy_growth(*now, *before);
}

struct TradeIds {
    const char* nominal;
    const char* proxy;
    const char* volume;
    const char* deflator;
    const char* regressor;
};

TradeIds ids(TradeKind kind) {
    if (kind == TradeKind::exports) return {"EXGS", "EXG", "EXP", "DEF_EXP", kExp};
    return {"IMGS", "IMG", "IMP", "DEF_IMP", kImp};
}

monthly::CompletedMonthlySeries complete_nominal_trade(const Snapshot& snap, const TradeIds& id, double lambda) {
    const auto& series = snap.monthly(id.nominal);
    const MonthlySeries* proxy = snap.has_monthly(id.proxy) ? &snap.monthly(id.proxy) : nullptr;
    return monthly::complete_trade(series, proxy, snap.quarter().last_month(), lambda);
}

}  // namespace

double quarterly_mean(const monthly::CompletedMonthlySeries& series, QuarterIndex t) {
    const auto m = mean_if_complete(series, t);
    if (!m) throw Error("series " + series.observed().id() + " does not cover all months of " + t.str());
    return *m;
}

double yoy_growth(double current, double year_ago) {
    if (year_ago == 0.0) throw Error("y-o-y growth undefined: zero base");
    return (current / year_ago - 1.0) * 100.0;
}

double yoy_growth(const QuarterlySeries& series, QuarterIndex t) {
    return yoy_growth(series.at(t), series.at(t - 4));
}

std::vector<int> sum_lags(int day) {
    day_slot(day);
    if (day >= 60) return {1, 2, 3};
    return {2, 3};
}

double sum_regressor(const QuarterlySeries& gdp_growth, QuarterIndex t, int day) {
    double total = 0.0;
    for (int lag : sum_lags(day)) {
        const auto v = gdp_growth.find(t - lag);
        if (!v) throw Error("sum regressor for " + t.str() + " needs GDP growth of " + (t - lag).str());
        total += *v;
    }
    return total;
}

TradeNowcast trade_volume_nowcast(TradeKind kind, const Snapshot& snapshot,
                                  const monthly::CompletedMonthlySeries& nominal,
                                  const monthly::CompletedMonthlySeries& oil, const BridgeOptions& options) {
    const TradeIds id = ids(kind);
    const QuarterIndex t = snapshot.quarter();
    const auto& volume = snapshot.quarterly(id.volume);
    const auto& deflator = snapshot.quarterly(id.deflator);
    if (volume.empty() || deflator.empty()) {
        throw Error(std::string("trade nowcast needs released ") + id.volume + " and " + id.deflator);
    }
    const int lag = static_cast<int>(t - deflator.last());
    if (lag < 1) throw Error(std::string(id.deflator) + " is visible for the nowcast quarter itself");

    const auto regressors = [&](QuarterIndex q) -> std::optional<std::array<double, 3>> {
        const auto g_nominal = yoy_if_complete(nominal, q);
        const auto g_deflator = yoy_if_present(deflator, q - lag);
        const auto g_oil = yoy_if_complete(oil, q);
        if (!g_nominal || !g_deflator || !g_oil) return std::nullopt;
        return std::array<double, 3>{*g_nominal, *g_deflator, *g_oil};
    };

    ols::DesignMatrix x({nominal.observed().id(), id.deflator, "OIL"}, true);
    std::vector<double> y;
    for (QuarterIndex q = options.sample_start; q <= volume.last() && q < t; ++q) {
        const auto dep = yoy_if_present(volume, q);
        const auto row = regressors(q);
        if (!dep || !row) continue;
        x.add_row(*row);
        y.push_back(*dep);
    }
    if (y.size() < static_cast<std::size_t>(kMinTradeQuarters)) {
        throw Error(std::string("trade nowcast for ") + id.volume + " has " + std::to_string(y.size()) +
                    " estimation quarters, need " + std::to_string(kMinTradeQuarters));
    }

    TradeNowcast out;
    out.deflator_lag = lag;
    out.fit = ols::fit(x, y);
    const auto now = regressors(t);
    if (!now) throw Error(std::string("trade nowcast: regressors for ") + id.volume + " at " + t.str() + " unavailable");
    const auto& b = out.fit.coefficients;
    out.growth = b[0] + b[1] * (*now)[0] + b[2] * (*now)[1] + b[3] * (*now)[2];
    out.level = volume.at(t - 4) * (1.0 + out.growth / 100.0);
    return out;
}

TradeNowcast trade_volume_nowcast(TradeKind kind, const Snapshot& snapshot, const BridgeOptions& options) {
    const TradeIds id = ids(kind);
    const auto nominal = complete_nominal_trade(snapshot, id, options.lambda);
    const auto oil = monthly::complete(snapshot.monthly("OIL"), snapshot.quarter().last_month(), options.lambda);
    return trade_volume_nowcast(kind, snapshot, nominal, oil, options);
}

const RegressorRow* RegressorSet::find(QuarterIndex q) const {
    if (rows.empty()) return nullptr;
    const long k = q - rows.front().quarter;
    if (k < 0 || k >= static_cast<long>(rows.size())) return nullptr;
    return &rows[static_cast<std::size_t>(k)];
}

const RegressorRow& RegressorSet::at(QuarterIndex q) const {
    const auto* row = find(q);
    if (row == nullptr) throw Error("no regressor row for " + q.str());
    return *row;
}

RegressorSet build_regressors(const Snapshot& snapshot, const BridgeOptions& options) {
    const QuarterIndex t = snapshot.quarter();
    const int day = snapshot.day();
    if (options.sample_start > t) {
        throw InputError("sample start " + options.sample_start.str() + " is after the nowcast quarter " + t.str());
    }
    const MonthIndex target = t.last_month();

    RegressorSet out;
    out.target = t;
    out.day = day;

    const auto complete_if_present = [&](const char* id) {
        if (snapshot.has_monthly(id)) {
            out.completed.emplace(id, monthly::complete(snapshot.monthly(id), target, options.lambda));
        }
    };
    for (const char* id : {"ESI", "ICE", "IPI", "CEM", "CAR", "CEPR", "OIL"}) complete_if_present(id);
    if (snapshot.has_monthly("ATM") && snapshot.has_monthly("CPI")) {
        const auto& cpi = snapshot.monthly("CPI");
        const auto& atm = snapshot.monthly("ATM");
        const auto nominal = cpi.empty() ? atm.truncated_through(atm.start() - 1) : atm.truncated_through(cpi.last());
        out.completed.emplace("ATM", monthly::complete(monthly::deflate(nominal, cpi), target, options.lambda));
    }
    for (TradeKind kind : {TradeKind::exports, TradeKind::imports}) {
        const TradeIds id = ids(kind);
        if (!snapshot.has_monthly(id.nominal)) continue;
        out.completed.emplace(id.nominal, complete_nominal_trade(snapshot, id, options.lambda));
        if (snapshot.has_quarterly(id.volume) && snapshot.has_quarterly(id.deflator) && out.completed.count("OIL")) {
            out.trade.emplace(id.regressor, trade_volume_nowcast(kind, snapshot, out.completed.at(id.nominal),
                                                                 out.completed.at("OIL"), options));
        }
    }

    const QuarterlySeries* gdp = snapshot.has_quarterly("GDP_QOQ") ? &snapshot.quarterly("GDP_QOQ") : nullptr;
    const auto series = [&](const char* id) -> const monthly::CompletedMonthlySeries* {
        const auto it = out.completed.find(id);
        return it == out.completed.end() ? nullptr : &it->second;
    };
    const auto put = [](RegressorRow& row, const char* name, std::optional<double> v) {
        if (v) row.values[name] = *v;
    };

    for (QuarterIndex q = options.sample_start; q <= t; ++q) {
        RegressorRow row;
        row.quarter = q;
        if (gdp != nullptr) {
            row.gdp = gdp->find(q);
            bool lags_present = true;
            for (int lag : sum_lags(day)) lags_present = lags_present && gdp->contains(q - lag);
            if (lags_present) row.values[kSum] = sum_regressor(*gdp, q, day);
        }
        if (const auto* s = series("ESI")) {
            if (const auto m = mean_if_complete(*s, q)) row.values[kEsi] = *m - 100.0;
        }
        if (const auto* s = series("ICE")) put(row, kIce, mean_if_complete(*s, q));
        if (const auto* s = series("CEPR")) put(row, kCepr, mean_if_complete(*s, q));
        if (const auto* s = series("IPI")) put(row, kIpi, yoy_if_complete(*s, q));
        if (const auto* s = series("CEM")) put(row, kCem, yoy_if_complete(*s, q));
        if (const auto* s = series("CAR")) put(row, kCar, yoy_if_complete(*s, q));
        if (const auto* s = series("ATM")) put(row, kAtm, yoy_if_complete(*s, q));
        for (TradeKind kind : {TradeKind::exports, TradeKind::imports}) {
            const TradeIds id = ids(kind);
            if (q == t) {
                const auto it = out.trade.find(id.regressor);
                if (it != out.trade.end()) row.values[id.regressor] = it->second.growth;
            } else if (snapshot.has_quarterly(id.volume)) {
                put(row, id.regressor, yoy_if_present(snapshot.quarterly(id.volume), q));
            }
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

}  // namespace nowcast::bridge
