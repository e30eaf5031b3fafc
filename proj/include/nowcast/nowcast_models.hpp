#pragma once

#include "nowcast/ols.hpp"
#include "nowcast/quarterly_bridge.hpp"
#include "nowcast/snapshot.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace nowcast {

struct ModelSpec {
    int id = 1;
    std::vector<std::string> regressors;

    /// Ledger model label: "1".."6".
    [[nodiscard]] std::string label() const { return std::to_string(id); }
};

inline constexpr int kModelCount = 6;

/// The six bridge models, in order. Every model has an intercept.
const std::array<ModelSpec, kModelCount>& bridge_models();
const ModelSpec& model_spec(int id);

enum class Variant { simple, corrected, midpoint, released };

[[nodiscard]] std::string to_string(Variant v);
Variant parse_variant(std::string_view text);

/// Ledger model label of realized GDP growth rows.
inline constexpr const char* kActual = "actual";
/// Ledger model label of the two consensus medians (variants simple and corrected).
inline constexpr const char* kMedian = "median";
/// Day stored for realized rows, written as "-".
inline constexpr int kNoDay = -1;

struct NowcastRecord {
    QuarterIndex quarter;
    int day = 0;
    std::string model;
    Variant variant = Variant::simple;
    double value = 0.0;

    friend bool operator==(const NowcastRecord&, const NowcastRecord&) = default;
};

/**
 * @brief Append-only store of nowcasts and realized growths.
 *
 * At most one value per (quarter, day, model, variant). Re-appending an
 * identical record is a no-op; a different value for an existing key is an
 * error. Serialized as CSV "quarter,day,model,variant,value" sorted by key.
 */
class ForecastLedger {
public:
    void append(const NowcastRecord& record);
    void record_realized(QuarterIndex quarter, double value);

    [[nodiscard]] std::optional<double> find(QuarterIndex quarter, int day, const std::string& model,
                                             Variant variant) const;
    [[nodiscard]] std::optional<double> realized(QuarterIndex quarter) const;
    [[nodiscard]] std::vector<NowcastRecord> records() const;
    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }

    [[nodiscard]] std::string to_csv() const;
    static ForecastLedger parse_csv(std::string_view text);
    static ForecastLedger load(const std::string& path);
    void save(const std::string& path) const;

    friend bool operator==(const ForecastLedger&, const ForecastLedger&) = default;

private:
    using Key = std::tuple<long, int, std::string, Variant>;
    std::map<Key, double> entries_;
};

struct EstimationOptions {
    /// 0 for an expanding window, otherwise the number of most recent usable quarters.
    int window_quarters = 0;
};

struct ModelForecast {
    double value = 0.0;
    ols::RegressionFit fit;
};

/// OLS of released GDP growth on the model's regressors over every usable row before the target quarter.
ols::RegressionFit estimate_model(const ModelSpec& spec, const bridge::RegressorSet& regressors,
                                  const EstimationOptions& options = {});

/**
 * Fits `spec` on every row of `regressors` with released GDP growth and all
 * of the model's regressors, then predicts the target quarter's row.
 */
ModelForecast estimate_and_forecast(const ModelSpec& spec, const bridge::RegressorSet& regressors,
                                    const EstimationOptions& options = {});

/// Quarter whose error feeds the correction: the latest GDP growth released in the snapshot.
std::optional<QuarterIndex> reference_quarter(const Snapshot& snapshot);

/**
 * simple + (realized_r - forecast_r), where r is reference_quarter(snapshot)
 * and forecast_r the same model's simple forecast for r at the same day stage.
 * Empty when the ledger has no such forecast.
 */
std::optional<double> error_correct(const ForecastLedger& ledger, const std::string& model, double simple,
                                    const Snapshot& snapshot);

/// Middle order statistic; the mean of the two middle ones for an even count.
double median(std::vector<double> values);

struct ConsensusNowcast {
    QuarterIndex quarter;
    int day = 0;
    std::array<double, kModelCount> simple{};
    std::array<std::optional<double>, kModelCount> corrected{};
    std::array<ModelForecast, kModelCount> forecasts{};
    double median_simple = 0.0;
    /// Median of the simple forecasts pooled with every available corrected one.
    double median_corrected = 0.0;

    [[nodiscard]] std::optional<double> midpoint(int model_index) const;
    /// Records for the ledger: per-model simple/corrected/midpoint and both medians.
    [[nodiscard]] std::vector<NowcastRecord> records() const;
};

/// Runs all six models on the snapshot. A failing model aborts with its id in the message.
ConsensusNowcast consensus_nowcasts(const Snapshot& snapshot, const ForecastLedger& ledger,
                                    const bridge::BridgeOptions& bridge_options = {},
                                    const EstimationOptions& estimation = {});

/// Same, reusing already-built regressors for the snapshot.
ConsensusNowcast consensus_nowcasts(const Snapshot& snapshot, const bridge::RegressorSet& regressors,
                                    const ForecastLedger& ledger, const EstimationOptions& estimation = {});

}  // namespace nowcast
