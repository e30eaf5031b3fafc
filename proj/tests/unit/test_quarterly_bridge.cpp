#include "helpers.hpp"

#include "nowcast/error.hpp"
#include "nowcast/quarterly_bridge.hpp"

#include <doctest.h>

using namespace nowcast;
using namespace nowcast::bridge;

namespace {

monthly::CompletedMonthlySeries completed(std::vector<double> observed, std::vector<double> forecast = {}) {
    const auto s = testing::monthly(std::move(observed));
    std::vector<monthly::ForecastPoint> f;
    for (std::size_t i = 0; i < forecast.size(); ++i) {
        f.push_back({s.last() + static_cast<long>(i + 1), forecast[i], monthly::Method::trend_step});
    }
    return monthly::CompletedMonthlySeries(s, f);
}

}  // namespace

TEST_SUITE("quarterly_bridge") {

TEST_CASE("quarterly mean") {
    CHECK(quarterly_mean(completed({1, 2, 3}), {2000, 1}) == doctest::Approx(2.0));
    CHECK(quarterly_mean(completed({100, 100}, {103}), {2000, 1}) == doctest::Approx(101.0));
    CHECK(quarterly_mean(completed({7, 7, 7}), {2000, 1}) == doctest::Approx(7.0));
    CHECK(quarterly_mean(completed({3, 1, 2}), {2000, 1}) == quarterly_mean(completed({1, 2, 3}), {2000, 1}));
    CHECK_THROWS_AS(quarterly_mean(completed({1, 2}), {2000, 1}), Error);
}

TEST_CASE("year-on-year growth") {
    CHECK(yoy_growth(110.0, 100.0) == doctest::Approx(10.0));
    CHECK(yoy_growth(100.0, 100.0) == 0.0);
    CHECK(yoy_growth(95.0, 100.0) == doctest::Approx(-5.0));
    CHECK_THROWS_AS(yoy_growth(1.0, 0.0), Error);
    const auto q = testing::quarterly({100, 1, 1, 1, 110});
    CHECK(yoy_growth(q, QuarterIndex{2001, 1}) == doctest::Approx(10.0));
}

TEST_CASE("sum of lagged GDP growth by day") {
    const auto g = testing::quarterly({0.2, 0.3, 0.5});
    const QuarterIndex t{2000, 4};
    CHECK(sum_regressor(g, t, 90) == doctest::Approx(1.0));
    CHECK(sum_regressor(g, t, 30) == doctest::Approx(0.5));
    CHECK(sum_regressor(g, t, 0) == doctest::Approx(0.5));
    const auto zero = testing::quarterly({0, 0, 0});
    for (int d : kDays) CHECK(sum_regressor(zero, t, d) == 0.0);
    // Day 30 must not need t-1.
    const auto short_g = testing::quarterly({0.2, 0.3});
    CHECK(sum_regressor(short_g, t, 30) == doctest::Approx(0.5));
    CHECK_THROWS_AS(sum_regressor(short_g, t, 60), Error);
}

TEST_CASE("ESI is centred on 100") {
    const auto& data = testing::synthetic();
    const auto snap = take_snapshot(data, ReleaseCalendar::defaults(), {2010, 1}, 100);
    const auto regs = build_regressors(snap);
    const auto& esi = data.monthly_series("ESI");
    const QuarterIndex q{2009, 2};
    const double mean = (esi.at(q.month(1)) + esi.at(q.month(2)) + esi.at(q.month(3))) / 3.0;
    CHECK(regs.at(q).values.at(kEsi) == doctest::Approx(mean - 100.0).epsilon(1e-14));
}

TEST_CASE("ATM is deflated before growth") {
    auto data = testing::synthetic();
    const auto& cpi = data.monthly_series("CPI");
    std::vector<double> atm(cpi.values().begin(), cpi.values().end());
    for (auto& v : atm) v *= 3.0;
    data.monthly.erase("ATM");
    data.monthly.emplace("ATM", MonthlySeries("ATM", {Unit::currency, NoiseClass::noisy}, cpi.start(), atm));
    const auto regs = build_regressors(take_snapshot(data, ReleaseCalendar::defaults(), {2010, 1}, 100));
    for (const auto& row : regs.rows) {
        if (row.values.count(kAtm)) CHECK(std::abs(row.values.at(kAtm)) < 1e-9);
    }
}

TEST_CASE("day 60 regressor set mixes observed and forecast months per the calendar") {
    const auto cal = ReleaseCalendar::defaults();
    const QuarterIndex t{2012, 2};
    const auto snap = take_snapshot(testing::synthetic(), cal, t, 60);
    const auto regs = build_regressors(snap);
    const std::map<std::string, std::size_t> expected{{"ESI", 1}, {"ICE", 1}, {"IPI", 2},  {"CEM", 2},
                                                      {"CAR", 2}, {"ATM", 2}, {"EXGS", 3}, {"IMGS", 3},
                                                      {"OIL", 1}, {"CEPR", 1}};
    for (const auto& [id, n] : expected) {
        const auto& c = regs.completed.at(id);
        CHECK_MESSAGE(c.forecasts().size() == n, id);
        CHECK(c.last() == t.last_month());
    }
    for (const auto& f : regs.completed.at("IPI").forecasts()) CHECK(f.method == monthly::Method::moving_average);
    for (const auto& f : regs.completed.at("ESI").forecasts()) CHECK(f.method == monthly::Method::trend_step);

    const auto& row = regs.at(t);
    for (const char* name : {kSum, kEsi, kIce, kIpi, kCem, kCar, kAtm, kExp, kImp, kCepr}) {
        CHECK_MESSAGE(row.values.count(name) == 1, name);
    }
    CHECK_FALSE(row.gdp.has_value());
    CHECK(regs.at(t - 1).gdp.has_value());
    CHECK(regs.rows.front().quarter == QuarterIndex{1996, 1});
}

TEST_CASE("historical trade regressors are released volume growths") {
    const auto& data = testing::synthetic();
    const QuarterIndex t{2012, 2};
    const auto regs = build_regressors(take_snapshot(data, ReleaseCalendar::defaults(), t, 90));
    const QuarterIndex q{2008, 3};
    CHECK(regs.at(q).values.at(kExp) == doctest::Approx(yoy_growth(data.quarterly_series("EXP"), q)));
    CHECK(regs.at(t).values.at(kExp) == regs.trade.at(kExp).growth);
}

TEST_CASE("regressors are deterministic") {
    const auto snap = take_snapshot(testing::synthetic(), ReleaseCalendar::defaults(), {2016, 4}, 30);
    const auto a = build_regressors(snap);
    const auto b = build_regressors(snap);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].values == b.rows[i].values);
}

TEST_CASE("trade nowcast recovers a noiseless volume equation") {
    const auto& data = testing::noiseless();
    const QuarterIndex t{2012, 2};
    const auto full = full_information_snapshot(data, t);
    const auto snap = Snapshot(t, 100, take_snapshot(data, ReleaseCalendar::defaults(), t, 60).data());
    // Complete nominal series with the true values so that only the regression is tested.
    const auto truth = [&](const char* id) {
        return monthly::CompletedMonthlySeries(full.monthly(id), {});
    };
    const auto tn = trade_volume_nowcast(TradeKind::exports, snap, truth("EXGS"), truth("OIL"));
    CHECK(tn.deflator_lag == 1);
    CHECK(tn.fit.coefficients[0] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(tn.fit.coefficients[1] == doctest::Approx(0.8).epsilon(1e-8));
    CHECK(tn.fit.coefficients[2] == doctest::Approx(-0.1).epsilon(1e-8));
    CHECK(tn.fit.coefficients[3] == doctest::Approx(0.05).epsilon(1e-8));
    const auto& exp = data.quarterly_series("EXP");
    CHECK(tn.growth == doctest::Approx(yoy_growth(exp, t)).epsilon(1e-8));
    CHECK(tn.level == doctest::Approx(exp.at(t - 4) * (1.0 + tn.growth / 100.0)));
}

TEST_CASE("deflator lag is two before the previous quarter is released") {
    const auto snap = take_snapshot(testing::synthetic(), ReleaseCalendar::defaults(), {2012, 2}, 30);
    CHECK(trade_volume_nowcast(TradeKind::imports, snap).deflator_lag == 2);
}

TEST_CASE("sample start after the target") {
    const auto snap = take_snapshot(testing::synthetic(), ReleaseCalendar::defaults(), {2000, 1}, 30);
    BridgeOptions o;
    o.sample_start = {2001, 1};
    CHECK_THROWS_AS(build_regressors(snap, o), InputError);
}

}
