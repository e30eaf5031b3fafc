#include "helpers.hpp"
#include "oracles.hpp"

#include "nowcast/error.hpp"
#include "nowcast/theta.hpp"

#include <doctest.h>

using namespace nowcast;

namespace {

const std::vector<double> kFixture{0.4, 0.9, -0.2, 0.6, 1.1, 0.3, 0.5, 0.8};

}  // namespace

TEST_SUITE("theta") {

TEST_CASE("constant series") {
    const std::vector<double> c(10, 0.7);
    const auto f = theta::theta_fit(c);
    CHECK(f.a0 == doctest::Approx(0.7));
    CHECK(std::abs(f.b0) < 1e-14);
    for (double v : f.theta2_series) CHECK(v == doctest::Approx(0.7));
    CHECK(f.ses_state == doctest::Approx(0.7));
    CHECK(theta::theta_forecast(f, 1) == doctest::Approx(0.7));
    CHECK(theta::theta_forecast(f, 2) == doctest::Approx(0.7));
}

TEST_CASE("exact line is reconstructed by the theta 2 series") {
    std::vector<double> y(12);
    for (std::size_t t = 0; t < y.size(); ++t) y[t] = 1.5 - 0.25 * static_cast<double>(t);
    const auto f = theta::theta_fit(y);
    CHECK(f.a2 == doctest::Approx(-1.5));
    CHECK(f.b2 == doctest::Approx(0.25));
    for (std::size_t t = 0; t < y.size(); ++t) CHECK(std::abs(f.theta2_series[t] - y[t]) <= 1e-10);
}

TEST_CASE("SES state and forecast match the hand recursion") {
    const auto f = theta::theta_fit(kFixture);
    const auto ref = oracle::ols(oracle::Matrix{{0}, {1}, {2}, {3}, {4}, {5}, {6}, {7}}, kFixture, true);
    std::vector<double> theta2;
    for (std::size_t t = 0; t < kFixture.size(); ++t) {
        theta2.push_back(-ref.beta[0] - ref.beta[1] * static_cast<double>(t) + 2.0 * kFixture[t]);
    }
    const auto s = oracle::ses(theta2, 0.3);
    CHECK(std::abs(f.ses_state - s.back()) <= 1e-12);
    for (int h : {1, 2}) {
        const double line = ref.beta[0] + ref.beta[1] * static_cast<double>(8 + h - 1);
        CHECK(std::abs(theta::theta_forecast(f, h) - 0.5 * (line + s.back())) <= 1e-12);
    }
}

TEST_CASE("horizon difference is half the slope") {
    const auto f = theta::theta_fit(kFixture);
    CHECK(theta::theta_forecast(f, 2) - theta::theta_forecast(f, 1) == doctest::Approx(0.5 * f.b0).epsilon(1e-12));
}

TEST_CASE("translation equivariance") {
    auto shifted = kFixture;
    for (auto& v : shifted) v += 3.0;
    const auto a = theta::theta_fit(kFixture);
    const auto b = theta::theta_fit(shifted);
    for (int h : {1, 2}) {
        CHECK(theta::theta_forecast(b, h) == doctest::Approx(theta::theta_forecast(a, h) + 3.0).epsilon(1e-12));
    }
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(theta::theta_fit(std::vector<double>{1, 2}), Error);
    CHECK_THROWS_AS(theta::theta_fit(kFixture, 0.0), Error);
    const auto f = theta::theta_fit(kFixture);
    CHECK_THROWS_AS(theta::theta_forecast(f, 0), Error);
    CHECK(theta::parse_theta_input("level") == theta::ThetaInput::level);
    CHECK_THROWS_AS(theta::parse_theta_input("log"), InputError);
}

TEST_CASE("benchmark horizon follows the GDP release") {
    const auto cal = ReleaseCalendar::defaults();
    const QuarterIndex t{2010, 2};
    const auto early = theta::theta_nowcast(take_snapshot(testing::synthetic(), cal, t, 30));
    CHECK(early.model == "theta_2p");
    CHECK(early.horizon == 2);
    const auto late = theta::theta_nowcast(take_snapshot(testing::synthetic(), cal, t, 60));
    CHECK(late.model == "theta_1p");
    CHECK(late.horizon == 1);

    const auto snap = take_snapshot(testing::synthetic(), cal, t, 60);
    const auto& gdp = snap.quarterly("GDP_QOQ");
    std::vector<double> history;
    for (QuarterIndex q{1996, 1}; q <= gdp.last(); ++q) history.push_back(gdp.at(q));
    CHECK(late.value == doctest::Approx(theta::theta_forecast(theta::theta_fit(history), 1)).epsilon(1e-14));
}

TEST_CASE("level mode forecasts the level and converts it to growth") {
    const auto cal = ReleaseCalendar::defaults();
    const auto snap = take_snapshot(testing::synthetic(), cal, QuarterIndex{2012, 3}, 90);
    const auto nc = theta::theta_nowcast(snap, theta::ThetaInput::level);
    const auto& gdp = snap.quarterly("GDP");
    std::vector<double> history;
    for (QuarterIndex q{1996, 1}; q <= gdp.last(); ++q) history.push_back(gdp.at(q));
    const double level = theta::theta_forecast(theta::theta_fit(history), 1);
    CHECK(nc.value == doctest::Approx((level / gdp.at(gdp.last()) - 1.0) * 100.0).epsilon(1e-12));
}

TEST_CASE("error correction uses the benchmark's own prior forecast") {
    const auto cal = ReleaseCalendar::defaults();
    const QuarterIndex t{2010, 2};
    const auto snap = take_snapshot(testing::synthetic(), cal, t, 60);
    auto nc = theta::theta_nowcast(snap);
    ForecastLedger ledger;
    theta::theta_error_correct(nc, ledger, snap);
    CHECK_FALSE(nc.corrected.has_value());

    const double realized = snap.quarterly("GDP_QOQ").at(t - 1);
    ledger.append({t - 1, 60, "theta_1p", Variant::simple, realized - 0.2});
    theta::theta_error_correct(nc, ledger, snap);
    REQUIRE(nc.corrected.has_value());
    CHECK(*nc.corrected == doctest::Approx(nc.value + 0.2));
}

}
