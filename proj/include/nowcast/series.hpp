#pragma once

#include "nowcast/error.hpp"
#include "nowcast/periods.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nowcast {

enum class Unit { index, currency, percent };
enum class NoiseClass { smooth, noisy };
enum class Frequency { monthly, quarterly };

[[nodiscard]] std::string to_string(Unit u);
[[nodiscard]] std::string to_string(NoiseClass n);
[[nodiscard]] std::string to_string(Frequency f);
Unit parse_unit(std::string_view text);
NoiseClass parse_noise_class(std::string_view text);
Frequency parse_frequency(std::string_view text);

struct MonthlyMeta {
    Unit unit = Unit::index;
    NoiseClass noise = NoiseClass::smooth;
    friend bool operator==(const MonthlyMeta&, const MonthlyMeta&) = default;
};

struct QuarterlyMeta {
    friend bool operator==(const QuarterlyMeta&, const QuarterlyMeta&) = default;
};

/**
 * @brief Contiguous, finite-valued series indexed by Period.
 *
 * Stored as a start period plus values, which makes interior gaps
 * unrepresentable. An empty series keeps its start period so that a
 * snapshot truncated before the first observation is still well formed.
 */
template <class Period, class Meta>
class TimeSeries {
public:
    TimeSeries() = default;
    TimeSeries(std::string id, Meta meta, Period start, std::vector<double> values)
        : id_(std::move(id)), meta_(meta), start_(start), values_(std::move(values)) {
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!std::isfinite(values_[i])) {
                throw InputError("series " + id_ + ": non-finite value at " + (start_ + static_cast<long>(i)).str());
            }
        }
    }

    [[nodiscard]] const std::string& id() const noexcept { return id_; }
    [[nodiscard]] const Meta& meta() const noexcept { return meta_; }
    [[nodiscard]] Period start() const noexcept { return start_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] bool empty() const noexcept { return values_.empty(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

    /// Last observed period. Precondition: non-empty.
    [[nodiscard]] Period last() const {
        if (values_.empty()) throw Error("series " + id_ + " is empty");
        return start_ + static_cast<long>(values_.size() - 1);
    }

    [[nodiscard]] bool contains(Period p) const noexcept {
        const long k = p - start_;
        return k >= 0 && k < static_cast<long>(values_.size());
    }

    [[nodiscard]] std::optional<double> find(Period p) const noexcept {
        if (!contains(p)) return std::nullopt;
        return values_[static_cast<std::size_t>(p - start_)];
    }

    [[nodiscard]] double at(Period p) const {
        if (!contains(p)) throw Error("series " + id_ + " has no observation at " + p.str());
        return values_[static_cast<std::size_t>(p - start_)];
    }

    /// Copy holding only observations dated at or before `last_visible`.
    [[nodiscard]] TimeSeries truncated_through(Period last_visible) const {
        const long keep = std::max(0L, std::min<long>(static_cast<long>(values_.size()), last_visible - start_ + 1));
        return TimeSeries(id_, meta_, start_,
                          std::vector<double>(values_.begin(), values_.begin() + keep));
    }

    friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

private:
    std::string id_;
    Meta meta_{};
    Period start_{};
    std::vector<double> values_;
};

using MonthlySeries = TimeSeries<MonthIndex, MonthlyMeta>;
using QuarterlySeries = TimeSeries<QuarterIndex, QuarterlyMeta>;

/// Every series of a run, keyed by identifier.
struct Dataset {
    std::map<std::string, MonthlySeries> monthly;
    std::map<std::string, QuarterlySeries> quarterly;

    [[nodiscard]] bool has_monthly(const std::string& id) const { return monthly.count(id) != 0; }
    [[nodiscard]] bool has_quarterly(const std::string& id) const { return quarterly.count(id) != 0; }
    [[nodiscard]] const MonthlySeries& monthly_series(const std::string& id) const;
    [[nodiscard]] const QuarterlySeries& quarterly_series(const std::string& id) const;

    /// Adds every series of `other`; an identifier present in both is an error.
    void merge(Dataset other);

    friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// Metadata for one series identifier.
struct SeriesInfo {
    Frequency frequency = Frequency::monthly;
    MonthlyMeta meta{};
};

/**
 * @brief Series identifier -> frequency, unit and noise class.
 *
 * The default schema knows the indicator set of the bridge models: ESI, ICE,
 * IPI, CEM, CAR, ATM, EXGS, IMGS, EXG, IMG, CPI, OIL, CEPR (monthly) and GDP,
 * GDP_QOQ, EXP, IMP, DEF_EXP, DEF_IMP (quarterly).
 */
class SeriesSchema {
public:
    static SeriesSchema defaults();
    /// CSV rows "series_id,frequency,unit,noise_class"; '#' starts a comment.
    static SeriesSchema load(const std::string& path);
    static SeriesSchema parse(std::string_view text);

    void set(std::string id, SeriesInfo info) { entries_[std::move(id)] = info; }
    [[nodiscard]] const SeriesInfo* find(const std::string& id) const;
    [[nodiscard]] const std::map<std::string, SeriesInfo>& entries() const noexcept { return entries_; }

private:
    std::map<std::string, SeriesInfo> entries_;
};

}  // namespace nowcast
