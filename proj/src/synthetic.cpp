#include "nowcast/synthetic.hpp"

#include <Eigen/Dense>
#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>

#include <cmath>
#include <functional>
#include <numbers>

namespace nowcast::synth {

namespace {

const MonthIndex kFirstMonth{1994, 1};
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double esi(double m) { return 100.0 + 3.0 * std::sin(kTwoPi * m / 40.0) + 0.5 * std::cos(kTwoPi * m / 17.0); }

}  // namespace

Dataset synthesize(const SynthOptions& options) {
    const QuarterIndex first_quarter = kFirstMonth.quarter();
    if (options.last < first_quarter + 12) throw InputError("synthetic data need at least three years");
    if (options.gdp_sigma < 0.0 || options.trade_sigma < 0.0 || options.ice_sigma < 0.0) {
        throw InputError("noise scales must be non-negative");
    }
    if (std::abs(options.ice_rho) >= 1.0) throw InputError("ice_rho must lie in (-1, 1)");
    const auto& b = options.coefficients;
    const long months = options.last.last_month() - kFirstMonth + 1;
    const long quarters = options.last - first_quarter + 1;

    boost::random::mt19937_64 rng(options.seed);
    boost::random::normal_distribution<double> normal(0.0, 1.0);

    std::vector<double> cycle(static_cast<std::size_t>(months));
    double state = 0.0;
    for (auto& c : cycle) {
        state = options.ice_rho * state + options.ice_sigma * normal(rng);
        c = state;
    }

    const SeriesSchema schema = SeriesSchema::defaults();
    Dataset data;
    const auto monthly = [&](const char* id, const std::function<double(double)>& f) {
        std::vector<double> v(static_cast<std::size_t>(months));
        for (long m = 0; m < months; ++m) v[static_cast<std::size_t>(m)] = f(static_cast<double>(m));
        data.monthly.emplace(id, MonthlySeries(id, schema.find(id)->meta, kFirstMonth, std::move(v)));
    };

    // ICE = k (ESI - 100) + trend with k = -b_esi / b_ice, so ESI drops out of model 1's right-hand side.
    const double k = -b.esi / b.ice;
    monthly("ESI", esi);
    monthly("ICE", [&](double m) {
        return k * (esi(m) - 100.0) - 5.0 + 0.002 * m + cycle[static_cast<std::size_t>(m)];
    });
    monthly("IPI", [](double m) { return 20.0 + 0.3 * m; });
    monthly("CEM", [](double m) { return 40.0 + 0.25 * m; });
    monthly("CAR", [](double m) { return 50.0 + 0.1 * m; });
    monthly("CPI", [](double m) { return 80.0 + 0.1 * m; });
    monthly("ATM", [](double m) { return (80.0 + 0.1 * m) * (200.0 + 0.5 * m) / 100.0; });
    monthly("OIL", [](double m) { return 30.0 + 0.15 * m; });
    monthly("CEPR", [](double m) { return 0.3 + 0.4 * std::sin(kTwoPi * m / 29.0); });
    monthly("EXGS", [](double m) { return 1000.0 + 4.0 * m; });
    monthly("IMGS", [](double m) { return 1100.0 + 3.5 * m; });
    monthly("EXG", [](double m) { return 0.7 * (1000.0 + 4.0 * m); });
    monthly("IMG", [](double m) { return 0.75 * (1100.0 + 3.5 * m); });

    const auto qmean = [&](const char* id, long qi) {
        const auto v = data.monthly.at(id).values();
        return (v[static_cast<std::size_t>(3 * qi)] + v[static_cast<std::size_t>(3 * qi + 1)] +
                v[static_cast<std::size_t>(3 * qi + 2)]) / 3.0;
    };
    const auto qyoy = [&](const char* id, long qi) { return (qmean(id, qi) / qmean(id, qi - 4) - 1.0) * 100.0; };

    // Unknown growths for quarters 4..quarters-1 (1995Q1 on); one equation per quarter with three lags.
    const long first_growth = 4;
    const long unknowns = quarters - first_growth;
    const long equations = unknowns - 3;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(equations, unknowns);
    Eigen::VectorXd rhs(equations);
    constexpr double kCentre = 0.5;
    for (long e = 0; e < equations; ++e) {
        const long qi = first_growth + 3 + e;
        const long col = qi - first_growth;
        a(e, col) = 1.0;
        for (int lag = 1; lag <= 3; ++lag) a(e, col - lag) = -b.sum;
        const double x = b.constant + b.esi * (qmean("ESI", qi) - 100.0) + b.ice * qmean("ICE", qi) +
                         b.ipi * qyoy("IPI", qi) + b.cem * qyoy("CEM", qi);
        rhs(e) = x + options.gdp_sigma * normal(rng) - kCentre * (1.0 - 3.0 * b.sum);
    }
    const Eigen::VectorXd growth = (a.completeOrthogonalDecomposition().solve(rhs)).array() + kCentre;

    const QuarterIndex gdp_start = first_quarter + first_growth;
    std::vector<double> g(growth.data(), growth.data() + growth.size());
    std::vector<double> level;
    double current = 100.0;
    for (double x : g) {
        current *= 1.0 + x / 100.0;
        level.push_back(current);
    }
    data.quarterly.emplace("GDP_QOQ", QuarterlySeries("GDP_QOQ", {}, gdp_start, g));
    data.quarterly.emplace("GDP", QuarterlySeries("GDP", {}, gdp_start, level));

    const auto quarterly_fn = [&](const std::function<double(double)>& f) {
        std::vector<double> v(static_cast<std::size_t>(quarters));
        for (long qi = 0; qi < quarters; ++qi) v[static_cast<std::size_t>(qi)] = f(static_cast<double>(qi));
        return v;
    };
    const auto def_exp = quarterly_fn([](double q) { return 90.0 + 0.3 * q + 2.0 * std::sin(kTwoPi * q / 11.0); });
    const auto def_imp = quarterly_fn([](double q) { return 95.0 + 0.25 * q + 1.5 * std::cos(kTwoPi * q / 13.0); });

    const auto volume = [&](const char* nominal, const std::vector<double>& def, double base) {
        std::vector<double> v(static_cast<std::size_t>(quarters));
        for (long qi = 0; qi < quarters; ++qi) {
            const auto i = static_cast<std::size_t>(qi);
            if (qi < 5) {
                v[i] = base + static_cast<double>(qi);
                continue;
            }
            const double def_growth = (def[i - 1] / def[i - 5] - 1.0) * 100.0;
            const double growth_qi =
                1.0 + 0.8 * qyoy(nominal, qi) - 0.1 * def_growth + 0.05 * qyoy("OIL", qi) +
                options.trade_sigma * normal(rng);
            v[i] = v[i - 4] * (1.0 + growth_qi / 100.0);
        }
        return v;
    };
    const auto exp = volume("EXGS", def_exp, 100.0);
    const auto imp = volume("IMGS", def_imp, 110.0);
    data.quarterly.emplace("EXP", QuarterlySeries("EXP", {}, first_quarter, exp));
    data.quarterly.emplace("IMP", QuarterlySeries("IMP", {}, first_quarter, imp));
    data.quarterly.emplace("DEF_EXP", QuarterlySeries("DEF_EXP", {}, first_quarter, def_exp));
    data.quarterly.emplace("DEF_IMP", QuarterlySeries("DEF_IMP", {}, first_quarter, def_imp));
    return data;
}

}  // namespace nowcast::synth
