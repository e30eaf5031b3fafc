#pragma once

#include "nowcast/series.hpp"

#include <cstdint>

namespace nowcast::synth {

/// Model 1 coefficients used to generate GDP growth.
struct Model1Coefficients {
    double constant = 0.736;
    double sum = 0.497;
    double esi = 0.055;
    double ice = 0.310;
    double ipi = 0.068;
    double cem = 0.018;
};

struct SynthOptions {
    std::uint64_t seed = 7;
    /// Standard deviation of the GDP growth shock.
    double gdp_sigma = 0.3;
    /// Standard deviation of the shock to export/import volume growth.
    double trade_sigma = 0.5;
    /// Innovation standard deviation of the AR(1) cycle added to ICE.
    double ice_sigma = 1.0;
    double ice_rho = 0.8;
    QuarterIndex last{2019, 4};
    Model1Coefficients coefficients{};
};

/**
 * Synthetic indicator set from 1994-01 through the last month of `last`.
 *
 * Monthly indicators are affine in time except ESI and CEPR (sums of
 * sinusoids); ICE is an affine function of ESI plus a slow trend, chosen so
 * the ESI and ICE terms of model 1 cancel, plus an AR(1) cycle that moves GDP
 * through b_ice. Quarterly GDP growth (from 1995Q1)
 * satisfies
 *   g_t = c + b_sum (g_{t-1} + g_{t-2} + g_{t-3}) + b_esi ESI_c + b_ice ICE
 *         + b_ipi ipi + b_cem cem + sigma e_t
 * exactly for every quarter with three lags. The recursion is explosive, so
 * the path is the minimum-norm solution of the whole system around 0.5.
 * Export and import volumes grow y-o-y as
 *   1 + 0.8 nominal + (-0.1) deflator_{t-1} + 0.05 oil + trade_sigma e.
 */
Dataset synthesize(const SynthOptions& options = {});

}  // namespace nowcast::synth
