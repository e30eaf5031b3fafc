#include "helpers.hpp"

#include "nowcast/error.hpp"
#include "nowcast/evaluation.hpp"

#include <doctest.h>

#include <map>

using namespace nowcast;

namespace {

BacktestConfig short_config() {
    BacktestConfig c;
    c.eval_start = {2014, 1};
    c.eval_end = {2016, 4};
    c.subsample_end = {2015, 2};
    return c;
}

}  // namespace

TEST_SUITE("evaluation") {

TEST_CASE("accuracy metrics") {
    auto m = accuracy(std::vector<double>{1, -1});
    CHECK(m.mse == 1.0);
    CHECK(m.rmse == 1.0);
    CHECK(m.mae == 1.0);
    m = accuracy(std::vector<double>{0.3, -0.4});
    CHECK(m.mse == doctest::Approx(0.125));
    CHECK(m.rmse == doctest::Approx(0.35355339).epsilon(1e-8));
    CHECK(m.mae == doctest::Approx(0.35));
    m = accuracy(std::vector<double>{0, 0, 0});
    CHECK(m.mse == 0.0);
    CHECK(m.mae == 0.0);
    CHECK(m.n == 3);
    CHECK_THROWS_AS(accuracy(std::vector<double>{}), Error);
}

TEST_CASE("cumulative absolute error") {
    const auto c = cumulative_abs_error(std::vector<double>{0.5, -0.5, 1});
    CHECK(c == std::vector<double>{0.5, 1.0, 2.0});
    CHECK(cumulative_abs_error(std::vector<double>{0, 0}) == std::vector<double>{0, 0});
    CHECK(cumulative_abs_error(std::vector<double>{-0.3}) == std::vector<double>{0.3});
}

TEST_CASE("estimator names") {
    CHECK(estimator_name({{2010, 1}, 0, "median", Variant::corrected, 0}) == "median_corrected");
    CHECK(estimator_name({{2010, 1}, 0, "3", Variant::midpoint, 0}) == "model3_midpoint");
    CHECK(estimator_name({{2010, 1}, 0, "theta_1p", Variant::simple, 0}) == "theta_1p");
    CHECK(estimator_name({{2010, 1}, 0, "theta_2p", Variant::corrected, 0}) == "theta_2p_corrected");
    CHECK(estimator_name({{2010, 1}, kNoDay, kActual, Variant::released, 0}).empty());
}

TEST_CASE("configuration validation") {
    auto c = short_config();
    CHECK_NOTHROW(c.validate());
    c.eval_start = {2017, 1};
    CHECK_THROWS_AS(c.validate(), InputError);
    c = short_config();
    c.days = {};
    CHECK_THROWS_AS(c.validate(), InputError);
    c.days = {0, 45};
    CHECK_THROWS_AS(c.validate(), InputError);
    c.days = {30, 30};
    CHECK_THROWS_AS(c.validate(), InputError);
    c = short_config();
    c.sample_start = {2014, 1};
    CHECK_THROWS_AS(c.validate(), InputError);
    c = short_config();
    c.eval_end = {2030, 1};
    CHECK_THROWS_AS(run_backtest(c, testing::synthetic(), ReleaseCalendar::defaults()), InputError);
}

TEST_CASE("single-quarter run has one error per estimator and day") {
    auto c = short_config();
    c.eval_end = c.eval_start;
    const auto r = run_backtest(c, testing::synthetic(), ReleaseCalendar::defaults());
    for (const auto& cell : r.report.cells) CHECK(cell.metrics.n == 1);
    for (int d : kDays) {
        CHECK(r.report.find("full", d, "median_simple") != nullptr);
        CHECK(r.report.find("full", d, "model6_simple") != nullptr);
        CHECK(r.report.find("full", d, d < 60 ? "theta_2p" : "theta_1p") != nullptr);
        // No earlier same-day forecasts exist, so nothing is corrected.
        CHECK(r.report.find("full", d, "model1_corrected") == nullptr);
    }
}

TEST_CASE("backtest ledger, identities and audit") {
    auto c = short_config();
    c.audit = true;
    const auto& data = testing::synthetic();
    const auto r = run_backtest(c, data, ReleaseCalendar::defaults());
    CHECK(r.audit_checks > 0);
    const auto& truth = data.quarterly_series("GDP_QOQ");
    for (QuarterIndex q = c.eval_start; q <= c.eval_end; ++q) CHECK(*r.ledger.realized(q) == truth.at(q));
    // Days 0 and 30 correct with t-2, so they start one quarter later.
    for (int d : kDays) {
        const auto* cell = r.report.find("full", d, "model1_corrected");
        REQUIRE(cell != nullptr);
        CHECK(cell->metrics.n == (d < 60 ? 10 : 11));
    }
    for (const auto& cell : r.report.cells) {
        CHECK(cell.metrics.rmse * cell.metrics.rmse == doctest::Approx(cell.metrics.mse).epsilon(1e-12));
    }

    // The sub-sample equals the full run's records re-aggregated over the shorter range.
    for (const auto& cell : r.report.cells) {
        if (cell.sample != "subsample") continue;
        std::vector<double> errors;
        for (const auto& rec : r.ledger.records()) {
            if (rec.day != cell.day || estimator_name(rec) != cell.estimator) continue;
            if (rec.quarter < c.eval_start || rec.quarter > c.subsample_end) continue;
            errors.push_back(truth.at(rec.quarter) - rec.value);
        }
        const auto m = accuracy(errors);
        CHECK(m.n == cell.metrics.n);
        CHECK(m.mae == doctest::Approx(cell.metrics.mae).epsilon(1e-14));
    }

    // Cumulative points cover the full sample in quarter order.
    std::map<std::pair<int, std::string>, double> last;
    for (const auto& p : r.report.cumulative) {
        auto& prev = last[{p.day, p.estimator}];
        CHECK(p.cumulative == doctest::Approx(prev + p.abs_error));
        prev = p.cumulative;
    }
}

TEST_CASE("parallel and serial runs agree and a rerun appends nothing") {
    auto c = short_config();
    c.eval_end = {2014, 4};
    const auto& data = testing::synthetic();
    const auto cal = ReleaseCalendar::defaults();
    const auto a = run_backtest(c, data, cal);
    c.parallel = false;
    const auto b = run_backtest(c, data, cal);
    CHECK(a.ledger == b.ledger);
    const auto again = run_backtest(c, data, cal, a.ledger);
    CHECK(again.ledger == a.ledger);
}

TEST_CASE("theta error correction is optional") {
    auto c = short_config();
    c.eval_end = {2014, 3};
    c.theta_error_correction = true;
    const auto r = run_backtest(c, testing::synthetic(), ReleaseCalendar::defaults());
    CHECK(r.report.find("full", 60, "theta_1p_corrected") != nullptr);
    CHECK(r.report.find("full", 0, "theta_2p_corrected") != nullptr);
}

TEST_CASE("report rejects quarters without truth") {
    ForecastLedger ledger;
    ledger.append({{2014, 1}, 0, "1", Variant::simple, 0.5});
    auto c = short_config();
    CHECK_THROWS_AS(build_report(ledger, testing::quarterly({1.0}, {2013, 1}), c), Error);
}

TEST_CASE("failures carry quarter and day") {
    auto data = testing::synthetic();
    data.monthly.erase("ICE");
    auto c = short_config();
    c.eval_end = c.eval_start;
    try {
        (void)run_backtest(c, data, ReleaseCalendar::defaults());
        FAIL("expected an error");
    } catch (const Error& e) {
        const std::string what = e.what();
        CHECK(what.find("quarter 2014Q1 day 0") != std::string::npos);
        CHECK(what.find("model 1") != std::string::npos);
    }
}

}
