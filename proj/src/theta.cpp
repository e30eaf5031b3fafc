#include "nowcast/theta.hpp"

#include "nowcast/ols.hpp"

#include <array>

namespace nowcast::theta {

ThetaFit theta_fit(std::span<const double> series, double gamma) {
    const std::size_t n = series.size();
    if (n < 3) throw Error("theta method needs at least 3 observations, got " + std::to_string(n));
    if (!(gamma > 0.0 && gamma <= 1.0)) throw Error("SES smoothing parameter must lie in (0, 1]");

    ols::DesignMatrix x({"trend"}, true);
    for (std::size_t t = 0; t < n; ++t) x.add_row(std::array<double, 1>{static_cast<double>(t)});
    const auto line = ols::fit(x, series);

    ThetaFit out;
    out.n = n;
    out.gamma = gamma;
    out.a0 = line.coefficients[0];
    out.b0 = line.coefficients[1];
    // (1 - 2) y = a2 + b2 (t - 1) is the same regression with the sign flipped.
    out.a2 = -out.a0;
    out.b2 = -out.b0;
    out.theta2_series.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        out.theta2_series[t] = out.a2 + out.b2 * static_cast<double>(t) + 2.0 * series[t];
    }
    double level = out.theta2_series[0];
    for (std::size_t t = 1; t < n; ++t) level = gamma * out.theta2_series[t] + (1.0 - gamma) * level;
    out.ses_state = level;
    return out;
}

double theta_forecast(const ThetaFit& fit, int h) {
    if (h < 1) throw Error("theta forecast horizon must be positive");
    const double line = fit.a0 + fit.b0 * static_cast<double>(fit.n + static_cast<std::size_t>(h) - 1);
    return 0.5 * (line + fit.ses_state);
}

std::string to_string(ThetaInput input) { return input == ThetaInput::level ? "level" : "growth"; }

ThetaInput parse_theta_input(std::string_view text) {
    if (text == "growth") return ThetaInput::growth;
    if (text == "level") return ThetaInput::level;
    throw InputError("unknown theta input '" + std::string(text) + "'; expected growth or level");
}

namespace {

std::vector<double> history(const QuarterlySeries& s, QuarterIndex from) {
    std::vector<double> out;
    if (s.empty()) return out;
    for (QuarterIndex q = std::max(from, s.start()); q <= s.last(); ++q) out.push_back(s.at(q));
    return out;
}

}  // namespace

ThetaNowcast theta_nowcast(const Snapshot& snapshot, ThetaInput input, QuarterIndex sample_start) {
    const QuarterIndex t = snapshot.quarter();
    const char* id = input == ThetaInput::level ? "GDP" : "GDP_QOQ";
    const auto& series = snapshot.quarterly(id);
    if (series.empty()) throw Error(std::string("theta benchmark: ") + id + " has no released quarters");
    const long h = t - series.last();
    if (h < 1) throw Error(std::string("theta benchmark: ") + id + " already released for " + t.str());

    ThetaNowcast out;
    out.horizon = static_cast<int>(h);
    out.model = "theta_" + std::to_string(h) + "p";
    const auto fit = theta_fit(history(series, sample_start));
    if (input == ThetaInput::growth) {
        out.value = theta_forecast(fit, out.horizon);
    } else {
        const double target = theta_forecast(fit, out.horizon);
        const double previous = h == 1 ? series.at(series.last()) : theta_forecast(fit, out.horizon - 1);
        if (previous == 0.0) throw Error("theta benchmark: zero GDP level, growth undefined");
        out.value = (target / previous - 1.0) * 100.0;
    }
    return out;
}

void theta_error_correct(ThetaNowcast& nowcast, const ForecastLedger& ledger, const Snapshot& snapshot) {
    nowcast.corrected = error_correct(ledger, nowcast.model, nowcast.value, snapshot);
}

}  // namespace nowcast::theta
