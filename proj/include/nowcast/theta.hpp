#pragma once

#include "nowcast/nowcast_models.hpp"
#include "nowcast/snapshot.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nowcast::theta {

inline constexpr double kGamma = 0.3;

struct ThetaFit {
    double a0 = 0.0;
    double b0 = 0.0;
    double a2 = 0.0;
    double b2 = 0.0;
    /// a2 + b2 (t - 1) + 2 y_t
    std::vector<double> theta2_series;
    /// Last smoothed value of theta2_series.
    double ses_state = 0.0;
    double gamma = kGamma;
    std::size_t n = 0;
};

/**
 * Straight line a0 + b0 (t - 1) fitted to the series by OLS, its mirror for
 * theta = 2 (a2 = -a0, b2 = -b0), and simple exponential smoothing of the
 * theta = 2 line started at its first value. Needs at least 3 observations.
 */
ThetaFit theta_fit(std::span<const double> series, double gamma = kGamma);

/// Average of the extrapolated line a0 + b0 (n + h - 1) and the SES level.
double theta_forecast(const ThetaFit& fit, int h);

enum class ThetaInput { growth, level };

[[nodiscard]] std::string to_string(ThetaInput input);
ThetaInput parse_theta_input(std::string_view text);

struct ThetaNowcast {
    /// "theta_1p" or "theta_2p".
    std::string model;
    int horizon = 1;
    double value = 0.0;
    std::optional<double> corrected;
};

/**
 * Theta benchmark for the snapshot's quarter, as q-o-q growth. The horizon is
 * the distance from the last released GDP quarter. In level mode the GDP
 * level is forecast and converted to growth.
 */
ThetaNowcast theta_nowcast(const Snapshot& snapshot, ThetaInput input = ThetaInput::growth,
                           QuarterIndex sample_start = QuarterIndex{1996, 1});

/// Adds the benchmark's own last verifiable error, as for the bridge models.
void theta_error_correct(ThetaNowcast& nowcast, const ForecastLedger& ledger, const Snapshot& snapshot);

}  // namespace nowcast::theta
