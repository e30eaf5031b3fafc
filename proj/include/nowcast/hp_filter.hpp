#pragma once

#include <span>
#include <vector>

namespace nowcast::hp {

/// Smoothing parameter for monthly data.
inline constexpr double kMonthlyLambda = 14400.0;

/// Trend/residual split of a series: trend + residuals reproduces the input.
struct TrendDecomposition {
    std::vector<double> trend;
    std::vector<double> residuals;
    double lambda = kMonthlyLambda;
};

/// First differences of a trend: g[k] = trend[k + 1] - trend[k].
using TrendGrowth = std::vector<double>;

/**
 * @brief Hodrick-Prescott trend.
 *
 * Minimizes sum (y - x)^2 + lambda * sum (second difference of x)^2, i.e.
 * solves (I + lambda D'D) x = y with D the (n-2) x n second-difference
 * operator. The system is pentadiagonal SPD and is solved by banded
 * Cholesky in O(n).
 *
 * Requires n >= 4, finite input and lambda > 0; throws nowcast::Error otherwise.
 */
TrendDecomposition hp_trend(std::span<const double> y, double lambda = kMonthlyLambda);

/// Requires a trend of length >= 2.
TrendGrowth trend_growth(const TrendDecomposition& dec);

}  // namespace nowcast::hp
