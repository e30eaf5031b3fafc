#include "nowcast/nowcast_models.hpp"

#include "text_util.hpp"

#include <algorithm>
#include <charconv>

namespace nowcast {

namespace {

std::string day_text(int day) { return day == kNoDay ? "-" : std::to_string(day); }

int parse_day_field(std::string_view text, const std::string& where) {
    if (text == "-") return kNoDay;
    int v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw InputError(where + ": unparseable day '" + std::string(text) + "'");
    }
    day_slot(v);
    return v;
}

}  // namespace

const std::array<ModelSpec, kModelCount>& bridge_models() {
    using namespace bridge;
    static const std::array<ModelSpec, kModelCount> models{{
        {1, {kSum, kEsi, kIce, kIpi, kCem}},
        {2, {kSum, kEsi, kIce, kIpi, kCem, kExp, kImp}},
        {3, {kSum, kEsi, kCar, kIpi, kCem}},
        {4, {kSum, kEsi, kAtm, kIpi, kCem}},
        {5, {kSum, kEsi, kAtm, kIpi, kCem, kExp, kImp}},
        {6, {kSum, kEsi, kIce, kIpi, kCem, kCepr}},
    }};
    return models;
}

const ModelSpec& model_spec(int id) {
    if (id < 1 || id > kModelCount) throw InputError("unknown model " + std::to_string(id) + "; models are 1..6");
    return bridge_models()[static_cast<std::size_t>(id - 1)];
}

std::string to_string(Variant v) {
    switch (v) {
        case Variant::simple: return "simple";
        case Variant::corrected: return "corrected";
        case Variant::midpoint: return "midpoint";
        case Variant::released: return "released";
    }
    return "simple";
}

Variant parse_variant(std::string_view text) {
    if (text == "simple") return Variant::simple;
    if (text == "corrected") return Variant::corrected;
    if (text == "midpoint") return Variant::midpoint;
    if (text == "released") return Variant::released;
    throw InputError("unknown variant '" + std::string(text) + "'");
}

void ForecastLedger::append(const NowcastRecord& r) {
    if (!std::isfinite(r.value)) {
        throw Error("non-finite ledger value for " + r.quarter.str() + " day " + day_text(r.day) + " model " + r.model);
    }
    const Key key{r.quarter.ordinal(), r.day, r.model, r.variant};
    const auto [it, inserted] = entries_.emplace(key, r.value);
    if (!inserted && it->second != r.value) {
        throw Error("conflicting ledger record for " + r.quarter.str() + " day " + day_text(r.day) + " model " +
                    r.model + " " + to_string(r.variant) + ": " + detail::format_exact(it->second) + " vs " +
                    detail::format_exact(r.value));
    }
}

void ForecastLedger::record_realized(QuarterIndex quarter, double value) {
    append({quarter, kNoDay, kActual, Variant::released, value});
}

std::optional<double> ForecastLedger::find(QuarterIndex quarter, int day, const std::string& model,
                                           Variant variant) const {
    const auto it = entries_.find(Key{quarter.ordinal(), day, model, variant});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

std::optional<double> ForecastLedger::realized(QuarterIndex quarter) const {
    return find(quarter, kNoDay, kActual, Variant::released);
}

std::vector<NowcastRecord> ForecastLedger::records() const {
    std::vector<NowcastRecord> out;
    out.reserve(entries_.size());
    for (const auto& [key, value] : entries_) {
        const auto& [ordinal, day, model, variant] = key;
        out.push_back({QuarterIndex::from_ordinal(ordinal), day, model, variant, value});
    }
    return out;
}

std::string ForecastLedger::to_csv() const {
    std::string out = "quarter,day,model,variant,value\n";
    for (const auto& r : records()) {
        out += r.quarter.str() + "," + day_text(r.day) + "," + r.model + "," + to_string(r.variant) + "," +
               detail::format_exact(r.value) + "\n";
    }
    return out;
}

ForecastLedger ForecastLedger::parse_csv(std::string_view text) {
    ForecastLedger ledger;
    std::size_t row = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const auto line = detail::strip_comment(text.substr(pos, nl == std::string_view::npos ? nl : nl - pos));
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++row;
        if (line.empty()) continue;
        if (line.substr(0, 8) == "quarter,") continue;
        const std::string where = "ledger row " + std::to_string(row);
        const auto f = detail::split(line, ',');
        if (f.size() != 5) throw InputError(where + ": expected 5 fields");
        ledger.append({QuarterIndex::parse(f[0]), parse_day_field(f[1], where), std::string(f[2]),
                       parse_variant(f[3]), detail::parse_double(f[4], where)});
    }
    return ledger;
}

ForecastLedger ForecastLedger::load(const std::string& path) {
    try {
        return parse_csv(detail::read_file(path));
    } catch (const InputError& e) {
        const std::string what = e.what();
        if (what.find(path) != std::string::npos) throw;
        throw InputError("ledger '" + path + "': " + what);
    }
}

void ForecastLedger::save(const std::string& path) const { detail::write_file(path, to_csv()); }

ols::RegressionFit estimate_model(const ModelSpec& spec, const bridge::RegressorSet& regressors,
                                  const EstimationOptions& options) {
    const auto complete = [&](const bridge::RegressorRow& row) {
        return std::all_of(spec.regressors.begin(), spec.regressors.end(),
                           [&](const std::string& name) { return row.values.count(name) != 0; });
    };
    std::vector<const bridge::RegressorRow*> sample;
    for (const auto& row : regressors.rows) {
        if (row.quarter < regressors.target && row.gdp && complete(row)) sample.push_back(&row);
    }
    if (options.window_quarters > 0 && sample.size() > static_cast<std::size_t>(options.window_quarters)) {
        sample.erase(sample.begin(), sample.end() - options.window_quarters);
    }

    ols::DesignMatrix x(spec.regressors, true);
    std::vector<double> y;
    std::vector<double> cells(spec.regressors.size());
    for (const auto* row : sample) {
        for (std::size_t j = 0; j < cells.size(); ++j) cells[j] = row->values.at(spec.regressors[j]);
        x.add_row(cells);
        y.push_back(*row->gdp);
    }

    return ols::fit(x, y);
}

ModelForecast estimate_and_forecast(const ModelSpec& spec, const bridge::RegressorSet& regressors,
                                    const EstimationOptions& options) {
    ModelForecast out;
    out.fit = estimate_model(spec, regressors, options);
    const auto& target = regressors.at(regressors.target);
    for (const auto& name : spec.regressors) {
        if (target.values.count(name) == 0) {
            throw Error("regressor '" + name + "' is unavailable for " + regressors.target.str());
        }
    }
    out.value = ols::predict(out.fit, target.values);
    return out;
}

std::optional<QuarterIndex> reference_quarter(const Snapshot& snapshot) {
    if (!snapshot.has_quarterly("GDP_QOQ")) return std::nullopt;
    const auto& gdp = snapshot.quarterly("GDP_QOQ");
    if (gdp.empty() || gdp.last() >= snapshot.quarter()) return std::nullopt;
    return gdp.last();
}

std::optional<double> error_correct(const ForecastLedger& ledger, const std::string& model, double simple,
                                    const Snapshot& snapshot) {
    const auto r = reference_quarter(snapshot);
    if (!r) return std::nullopt;
    const auto prior = ledger.find(*r, snapshot.day(), model, Variant::simple);
    if (!prior) return std::nullopt;
    const double realized = snapshot.quarterly("GDP_QOQ").at(*r);
    return simple + (realized - *prior);
}

double median(std::vector<double> values) {
    if (values.empty()) throw Error("median of an empty list");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

std::optional<double> ConsensusNowcast::midpoint(int model_index) const {
    const auto i = static_cast<std::size_t>(model_index);
    if (!corrected[i]) return std::nullopt;
    return (simple[i] + *corrected[i]) / 2.0;
}

std::vector<NowcastRecord> ConsensusNowcast::records() const {
    std::vector<NowcastRecord> out;
    for (int i = 0; i < kModelCount; ++i) {
        const std::string label = bridge_models()[static_cast<std::size_t>(i)].label();
        out.push_back({quarter, day, label, Variant::simple, simple[static_cast<std::size_t>(i)]});
        if (const auto c = corrected[static_cast<std::size_t>(i)]) {
            out.push_back({quarter, day, label, Variant::corrected, *c});
            out.push_back({quarter, day, label, Variant::midpoint, *midpoint(i)});
        }
    }
    out.push_back({quarter, day, kMedian, Variant::simple, median_simple});
    out.push_back({quarter, day, kMedian, Variant::corrected, median_corrected});
    return out;
}

ConsensusNowcast consensus_nowcasts(const Snapshot& snapshot, const bridge::RegressorSet& regressors,
                                    const ForecastLedger& ledger, const EstimationOptions& estimation) {
    ConsensusNowcast out;
    out.quarter = snapshot.quarter();
    out.day = snapshot.day();
    std::vector<double> pooled;
    for (std::size_t i = 0; i < kModelCount; ++i) {
        const auto& spec = bridge_models()[i];
        try {
            out.forecasts[i] = estimate_and_forecast(spec, regressors, estimation);
        } catch (const Error& e) {
            throw Error("model " + spec.label() + ": " + e.what());
        }
        out.simple[i] = out.forecasts[i].value;
        out.corrected[i] = error_correct(ledger, spec.label(), out.simple[i], snapshot);
        pooled.push_back(out.simple[i]);
        if (out.corrected[i]) pooled.push_back(*out.corrected[i]);
    }
    out.median_simple = median(std::vector<double>(out.simple.begin(), out.simple.end()));
    out.median_corrected = median(pooled);
    return out;
}

ConsensusNowcast consensus_nowcasts(const Snapshot& snapshot, const ForecastLedger& ledger,
                                    const bridge::BridgeOptions& bridge_options,
                                    const EstimationOptions& estimation) {
    return consensus_nowcasts(snapshot, bridge::build_regressors(snapshot, bridge_options), ledger, estimation);
}

}  // namespace nowcast
