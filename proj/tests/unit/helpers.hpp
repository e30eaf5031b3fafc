#pragma once

#include "nowcast/series.hpp"
#include "nowcast/synthetic.hpp"

#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace testing {

inline nowcast::MonthlySeries monthly(std::vector<double> values, nowcast::MonthIndex start = {2000, 1},
                                      nowcast::NoiseClass noise = nowcast::NoiseClass::smooth,
                                      const std::string& id = "X") {
    return nowcast::MonthlySeries(id, nowcast::MonthlyMeta{nowcast::Unit::index, noise}, start, std::move(values));
}

inline nowcast::QuarterlySeries quarterly(std::vector<double> values, nowcast::QuarterIndex start = {2000, 1},
                                          const std::string& id = "Q") {
    return nowcast::QuarterlySeries(id, {}, start, std::move(values));
}

inline std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
    std::normal_distribution<double> normal(0.0, scale);
    std::vector<double> v(n);
    for (auto& x : v) x = normal(rng);
    return v;
}

inline double rel_error(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

/// Synthetic dataset with the default options, built once per process.
inline const nowcast::Dataset& synthetic() {
    static const nowcast::Dataset data = nowcast::synth::synthesize();
    return data;
}

inline const nowcast::Dataset& noiseless() {
    static const nowcast::Dataset data = [] {
        nowcast::synth::SynthOptions o;
        o.gdp_sigma = 0.0;
        o.trade_sigma = 0.0;
        o.ice_sigma = 0.0;
        return nowcast::synth::synthesize(o);
    }();
    return data;
}

/// Fresh directory under the system temp path, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& name)
        : path_(std::filesystem::temp_directory_path() / ("nowcast_test_" + name)) {
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    [[nodiscard]] std::string file(const std::string& name) const { return (path_ / name).string(); }
    [[nodiscard]] const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

}  // namespace testing
