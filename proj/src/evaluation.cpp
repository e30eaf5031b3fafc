#include "nowcast/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <set>

namespace nowcast {

void BacktestConfig::validate() const {
    if (!(sample_start < eval_start)) {
        throw InputError("sample_start " + sample_start.str() + " must precede eval_start " + eval_start.str());
    }
    if (eval_end < eval_start) {
        throw InputError("eval_start " + eval_start.str() + " is after eval_end " + eval_end.str());
    }
    if (days.empty()) throw InputError("no day stages configured");
    std::set<int> seen;
    for (int d : days) {
        day_slot(d);
        if (!seen.insert(d).second) throw InputError("day " + std::to_string(d) + " listed twice");
    }
    if (window_quarters < 0) throw InputError("window_quarters must be 0 (expanding) or positive");
    if (!(hp_lambda > 0.0) || !std::isfinite(hp_lambda)) throw InputError("hp_lambda must be positive");
}

AccuracyMetrics accuracy(std::span<const double> errors) {
    if (errors.empty()) throw Error("accuracy of an empty error list");
    AccuracyMetrics m;
    m.n = errors.size();
    double sq = 0.0;
    double ab = 0.0;
    for (double e : errors) {
        sq += e * e;
        ab += std::abs(e);
    }
    m.mse = sq / static_cast<double>(m.n);
    m.rmse = std::sqrt(m.mse);
    m.mae = ab / static_cast<double>(m.n);
    return m;
}

std::vector<double> cumulative_abs_error(std::span<const double> errors) {
    std::vector<double> out;
    out.reserve(errors.size());
    double total = 0.0;
    for (double e : errors) {
        total += std::abs(e);
        out.push_back(total);
    }
    return out;
}

std::string estimator_name(const NowcastRecord& r) {
    if (r.model == kActual) return "";
    if (r.model == kMedian) return std::string(kMedian) + "_" + to_string(r.variant);
    if (r.model.rfind("theta_", 0) == 0) {
        return r.variant == Variant::simple ? r.model : r.model + "_" + to_string(r.variant);
    }
    return "model" + r.model + "_" + to_string(r.variant);
}

const ReportCell* AccuracyReport::find(const std::string& sample, int day, const std::string& estimator) const {
    for (const auto& c : cells) {
        if (c.sample == sample && c.day == day && c.estimator == estimator) return &c;
    }
    return nullptr;
}

namespace {

int estimator_rank(const std::string& name) {
    static const std::vector<std::string> fixed{"median_simple",      "median_corrected", "theta_2p",
                                                "theta_2p_corrected", "theta_1p",         "theta_1p_corrected"};
    const auto it = std::find(fixed.begin(), fixed.end(), name);
    if (it != fixed.end()) return static_cast<int>(it - fixed.begin());
    if (name.rfind("model", 0) == 0 && name.size() > 6) {
        const int id = name[5] - '0';
        const std::string variant = name.substr(7);
        const int v = variant == "simple" ? 0 : variant == "corrected" ? 1 : 2;
        return 10 + 3 * id + v;
    }
    return 1000;
}

struct SeriesCoverage {
    std::size_t observed = 0;
    std::size_t forecast = 0;
};

struct CellOutput {
    std::vector<NowcastRecord> records;
    std::optional<std::pair<QuarterIndex, double>> realized;
    std::map<std::string, SeriesCoverage> coverage;
    std::size_t checks = 0;
};

std::size_t audit_snapshot(const Snapshot& snap, const Dataset& data, const ReleaseCalendar& calendar) {
    const QuarterIndex t = snap.quarter();
    const int d = snap.day();
    std::size_t checks = 0;
    if (!(take_snapshot(data, calendar, t, d) == snap)) {
        throw Error("audit: snapshot for " + t.str() + " day " + std::to_string(d) + " is not reproducible");
    }
    ++checks;
    for (const auto& [id, s] : snap.data().monthly) {
        const auto& full = data.monthly_series(id);
        if (!s.empty()) {
            if (s.last() > calendar.last_visible_month(id, t, d)) {
                throw Error("audit: " + id + " visible through " + s.last().str() + " at " + t.str() + " day " +
                            std::to_string(d));
            }
            for (MonthIndex m = s.start(); m <= s.last(); ++m) {
                if (s.at(m) != full.at(m)) throw Error("audit: " + id + " differs from the dataset at " + m.str());
            }
        }
        ++checks;
    }
    for (const auto& [id, s] : snap.data().quarterly) {
        const auto& full = data.quarterly_series(id);
        if (!s.empty()) {
            if (s.last() > calendar.last_visible_quarter(id, t, d)) {
                throw Error("audit: " + id + " visible through " + s.last().str() + " at " + t.str() + " day " +
                            std::to_string(d));
            }
            for (QuarterIndex q = s.start(); q <= s.last(); ++q) {
                if (s.at(q) != full.at(q)) throw Error("audit: " + id + " differs from the dataset at " + q.str());
            }
        }
        ++checks;
    }
    return checks;
}

CellOutput run_cell(const BacktestConfig& config, const Dataset& data, const ReleaseCalendar& calendar,
                    const ForecastLedger& ledger, QuarterIndex t, int day) {
    CellOutput out;
    const Snapshot snap = take_snapshot(data, calendar, t, day);
    if (config.audit) out.checks += audit_snapshot(snap, data, calendar);

    bridge::BridgeOptions bopt;
    bopt.lambda = config.hp_lambda;
    bopt.sample_start = config.sample_start;
    const auto regressors = bridge::build_regressors(snap, bopt);
    for (const auto& [id, c] : regressors.completed) out.coverage[id] = {c.observed().size(), c.forecasts().size()};

    EstimationOptions eopt;
    eopt.window_quarters = config.window_quarters;
    const auto consensus = consensus_nowcasts(snap, regressors, ledger, eopt);
    out.records = consensus.records();

    auto th = theta::theta_nowcast(snap, config.theta_input, config.sample_start);
    out.records.push_back({t, day, th.model, Variant::simple, th.value});
    if (config.theta_error_correction) {
        theta::theta_error_correct(th, ledger, snap);
        if (th.corrected) out.records.push_back({t, day, th.model, Variant::corrected, *th.corrected});
    }

    if (const auto r = reference_quarter(snap)) out.realized = std::make_pair(*r, snap.quarterly("GDP_QOQ").at(*r));
    return out;
}

std::size_t audit_superset(const std::vector<std::pair<int, CellOutput>>& cells, QuarterIndex t) {
    std::size_t checks = 0;
    for (std::size_t k = 1; k < cells.size(); ++k) {
        const auto& [d0, before] = cells[k - 1];
        const auto& [d1, after] = cells[k];
        for (const auto& [id, cov] : before.coverage) {
            const auto it = after.coverage.find(id);
            if (it == after.coverage.end()) continue;
            if (it->second.observed < cov.observed || it->second.forecast > cov.forecast) {
                throw Error("audit: " + id + " at " + t.str() + " day " + std::to_string(d1) +
                            " uses less data than day " + std::to_string(d0));
            }
            ++checks;
        }
    }
    return checks;
}

}  // namespace

AccuracyReport build_report(const ForecastLedger& ledger, const QuarterlySeries& truth, const BacktestConfig& config) {
    struct Point {
        QuarterIndex quarter;
        double error;
    };
    std::map<std::pair<int, std::string>, std::vector<Point>> series;
    for (const auto& r : ledger.records()) {
        if (r.quarter < config.eval_start || r.quarter > config.eval_end) continue;
        if (std::find(config.days.begin(), config.days.end(), r.day) == config.days.end()) continue;
        const std::string name = estimator_name(r);
        if (name.empty()) continue;
        const auto actual = truth.find(r.quarter);
        if (!actual) throw Error("no realized GDP growth for " + r.quarter.str());
        series[{r.day, name}].push_back({r.quarter, *actual - r.value});
    }

    std::vector<std::pair<int, std::string>> keys;
    for (const auto& [key, points] : series) keys.push_back(key);
    std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        const int ra = estimator_rank(a.second);
        const int rb = estimator_rank(b.second);
        if (ra != rb) return ra < rb;
        return a.second < b.second;
    });

    AccuracyReport report;
    report.eval_start = config.eval_start;
    report.eval_end = config.eval_end;
    report.subsample_end = config.subsample_end;
    for (const char* sample : {"full", "subsample"}) {
        const bool sub = std::string(sample) == "subsample";
        for (const auto& key : keys) {
            std::vector<double> errors;
            for (const auto& p : series.at(key)) {
                if (!sub || p.quarter <= config.subsample_end) errors.push_back(p.error);
            }
            if (errors.empty()) continue;
            report.cells.push_back({sample, key.first, key.second, accuracy(errors)});
        }
    }
    for (const auto& key : keys) {
        const auto& points = series.at(key);
        double total = 0.0;
        for (const auto& p : points) {
            total += std::abs(p.error);
            report.cumulative.push_back({p.quarter, key.first, key.second, std::abs(p.error), total});
        }
    }
    return report;
}

BacktestResult run_backtest(const BacktestConfig& config_in, const Dataset& data, const ReleaseCalendar& calendar,
                            ForecastLedger ledger) {
    BacktestConfig config = config_in;
    config.validate();
    std::sort(config.days.begin(), config.days.end());

    const auto& truth = data.quarterly_series("GDP_QOQ");
    for (QuarterIndex q = config.eval_start; q <= config.eval_end; ++q) {
        if (!truth.contains(q)) throw InputError("dataset has no GDP_QOQ observation for " + q.str());
    }

    BacktestResult result;
    for (QuarterIndex t = config.eval_start; t <= config.eval_end; ++t) {
        std::vector<std::future<CellOutput>> futures;
        for (int day : config.days) {
            futures.push_back(std::async(config.parallel ? std::launch::async : std::launch::deferred,
                                         [&, t, day] { return run_cell(config, data, calendar, ledger, t, day); }));
        }
        std::vector<std::pair<int, CellOutput>> cells;
        for (std::size_t k = 0; k < futures.size(); ++k) {
            const int day = config.days[k];
            try {
                cells.emplace_back(day, futures[k].get());
            } catch (const Error& e) {
                for (std::size_t j = k + 1; j < futures.size(); ++j) futures[j].wait();
                throw Error("quarter " + t.str() + " day " + std::to_string(day) + ": " + e.what());
            }
        }
        for (const auto& [day, cell] : cells) {
            if (cell.realized) ledger.record_realized(cell.realized->first, cell.realized->second);
            for (const auto& r : cell.records) ledger.append(r);
            result.audit_checks += cell.checks;
        }
        if (config.audit) result.audit_checks += audit_superset(cells, t);
    }
    for (QuarterIndex q = config.eval_start; q <= config.eval_end; ++q) ledger.record_realized(q, truth.at(q));

    result.report = build_report(ledger, truth, config);
    result.ledger = std::move(ledger);
    return result;
}

}  // namespace nowcast
