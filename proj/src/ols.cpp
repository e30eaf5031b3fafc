#include "nowcast/ols.hpp"

#include "nowcast/error.hpp"

#include <Eigen/Dense>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace nowcast::ols {

DesignMatrix::DesignMatrix(std::vector<std::string> names, bool intercept)
    : names_(std::move(names)), intercept_(intercept) {
    std::set<std::string> seen;
    for (const auto& n : names_) {
        if (n == kIntercept && intercept_) throw Error("regressor name '" + n + "' is reserved for the intercept");
        if (!seen.insert(n).second) throw Error("duplicate regressor name '" + n + "'");
    }
    if (names_.empty() && !intercept_) throw Error("design matrix has no columns");
}

void DesignMatrix::add_row(std::span<const double> row) {
    if (row.size() != names_.size()) {
        throw Error("design row has " + std::to_string(row.size()) + " entries, expected " +
                    std::to_string(names_.size()));
    }
    for (std::size_t j = 0; j < row.size(); ++j) {
        if (!std::isfinite(row[j])) throw Error("non-finite value in regressor '" + names_[j] + "'");
    }
    data_.insert(data_.end(), row.begin(), row.end());
    ++row_count_;
}

std::size_t RegressionFit::index_of(const std::string& name) const {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw Error("fit has no coefficient '" + name + "'");
    return static_cast<std::size_t>(it - names.begin());
}

double RegressionFit::coefficient(const std::string& name) const { return coefficients[index_of(name)]; }

double RegressionFit::std_error(const std::string& name) const { return std_errors[index_of(name)]; }

double RegressionFit::p_value(std::size_t i) const {
    const double t = std::abs(t_stat(i));
    if (!std::isfinite(t)) return 0.0;
    const boost::math::students_t dist(n_obs - n_params);
    return 2.0 * boost::math::cdf(boost::math::complement(dist, t));
}

double RegressionFit::f_p_value() const {
    const int df1 = intercept ? n_params - 1 : n_params;
    if (df1 <= 0 || std::isnan(f_stat)) return std::numeric_limits<double>::quiet_NaN();
    if (!std::isfinite(f_stat)) return 0.0;
    const boost::math::fisher_f dist(df1, n_obs - n_params);
    return boost::math::cdf(boost::math::complement(dist, f_stat));
}

RegressionFit fit(const DesignMatrix& x, std::span<const double> y) {
    const auto n = static_cast<Eigen::Index>(x.rows());
    const auto k = static_cast<Eigen::Index>(x.columns());
    if (static_cast<std::size_t>(n) != y.size()) throw Error("dependent variable length does not match design rows");
    if (n <= k) {
        throw Error("OLS needs more observations than parameters (n=" + std::to_string(n) +
                    ", k=" + std::to_string(k) + ")");
    }
    for (double v : y) {
        if (!std::isfinite(v)) throw Error("non-finite value in dependent variable");
    }

    RegressionFit out;
    out.intercept = x.intercept();
    if (x.intercept()) out.names.push_back(kIntercept);
    out.names.insert(out.names.end(), x.names().begin(), x.names().end());

    Eigen::MatrixXd m(n, k);
    const Eigen::Index off = x.intercept() ? 1 : 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (x.intercept()) m(i, 0) = 1.0;
        for (Eigen::Index j = off; j < k; ++j) m(i, j) = x.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j - off));
    }
    const Eigen::Map<const Eigen::VectorXd> yv(y.data(), n);

    // Unit-norm columns make the rank threshold scale free.
    Eigen::VectorXd norms = m.colwise().norm().transpose();
    for (Eigen::Index j = 0; j < k; ++j) {
        if (norms(j) == 0.0) throw Error("rank-deficient design: column '" + out.names[j] + "' is identically zero");
    }
    const Eigen::MatrixXd scaled = m * norms.cwiseInverse().asDiagonal();

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(scaled);
    qr.setThreshold(1e-10);
    if (qr.rank() < k) {
        std::string cols;
        for (Eigen::Index j = qr.rank(); j < k; ++j) {
            if (!cols.empty()) cols += ", ";
            cols += "'" + out.names[static_cast<std::size_t>(qr.colsPermutation().indices()(j))] + "'";
        }
        throw Error("rank-deficient design: column(s) " + cols + " are collinear with the others");
    }

    const Eigen::VectorXd beta_scaled = qr.solve(yv);
    const Eigen::VectorXd beta = beta_scaled.cwiseQuotient(norms);
    const Eigen::VectorXd fitted = m * beta;
    const Eigen::VectorXd resid = yv - fitted;

    const double rss = resid.squaredNorm();
    const double tss = x.intercept() ? (yv.array() - yv.mean()).matrix().squaredNorm() : yv.squaredNorm();
    const double dof = static_cast<double>(n - k);
    const double s2 = rss / dof;

    // (X_s'X_s)^-1 = P R^-1 R^-T P'
    const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
    const Eigen::MatrixXd r_inv =
        r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
    const Eigen::VectorXd cov_diag_perm = (r_inv * r_inv.transpose()).diagonal();

    out.coefficients.assign(beta.data(), beta.data() + k);
    out.std_errors.assign(static_cast<std::size_t>(k), 0.0);
    for (Eigen::Index j = 0; j < k; ++j) {
        const auto col = qr.colsPermutation().indices()(j);
        out.std_errors[static_cast<std::size_t>(col)] = std::sqrt(s2 * cov_diag_perm(j)) / norms(col);
    }
    out.fitted.assign(fitted.data(), fitted.data() + n);
    out.residuals.assign(resid.data(), resid.data() + n);
    out.n_obs = static_cast<int>(n);
    out.n_params = static_cast<int>(k);

    out.r2 = tss > 0.0 ? 1.0 - rss / tss : (rss == 0.0 ? 1.0 : 0.0);
    const double df_total = static_cast<double>(n - (x.intercept() ? 1 : 0));
    out.adj_r2 = 1.0 - (1.0 - out.r2) * df_total / dof;
    out.resid_std_error = std::sqrt(s2);
    const double df_model = static_cast<double>(k - (x.intercept() ? 1 : 0));
    out.f_stat = df_model > 0 ? (out.r2 / df_model) / ((1.0 - out.r2) / dof)
                              : std::numeric_limits<double>::quiet_NaN();
    return out;
}

double predict(const RegressionFit& fit, const std::map<std::string, double>& row) {
    double value = 0.0;
    for (std::size_t i = 0; i < fit.names.size(); ++i) {
        if (fit.intercept && i == 0) {
            value += fit.coefficients[0];
            continue;
        }
        const auto it = row.find(fit.names[i]);
        if (it == row.end()) throw Error("prediction row is missing regressor '" + fit.names[i] + "'");
        value += fit.coefficients[i] * it->second;
    }
    return value;
}

std::string significance_stars(double p) {
    if (std::isnan(p)) return "";
    if (p < 0.01) return "***";
    if (p < 0.05) return "**";
    if (p < 0.1) return "*";
    return "";
}

std::string render_table(const std::vector<std::pair<std::string, RegressionFit>>& columns) {
    std::vector<std::string> rows;
    bool any_intercept = false;
    for (const auto& [label, f] : columns) {
        for (const auto& name : f.names) {
            if (name == kIntercept && f.intercept) {
                any_intercept = true;
                continue;
            }
            if (std::find(rows.begin(), rows.end(), name) == rows.end()) rows.push_back(name);
        }
    }
    if (any_intercept) rows.push_back(kIntercept);

    constexpr int kLabelWidth = 22;
    constexpr int kColWidth = 14;
    std::string out = fmt::format("{:<{}}", "", kLabelWidth);
    for (const auto& [label, f] : columns) out += fmt::format("{:>{}}", label, kColWidth);
    out += "\n";

    for (const auto& name : rows) {
        std::string coef_line = fmt::format("{:<{}}", name, kLabelWidth);
        std::string se_line = fmt::format("{:<{}}", "", kLabelWidth);
        for (const auto& [label, f] : columns) {
            const auto it = std::find(f.names.begin(), f.names.end(), name);
            if (it == f.names.end()) {
                coef_line += fmt::format("{:>{}}", "", kColWidth);
                se_line += fmt::format("{:>{}}", "", kColWidth);
                continue;
            }
            const auto i = static_cast<std::size_t>(it - f.names.begin());
            coef_line += fmt::format("{:>{}}", fmt::format("{:.3f}", f.coefficients[i]) +
                                                   fmt::format("{:<3}", significance_stars(f.p_value(i))),
                                     kColWidth);
            se_line += fmt::format("{:>{}}", fmt::format("({:.3f})   ", f.std_errors[i]), kColWidth);
        }
        out += coef_line + "\n" + se_line + "\n";
    }

    const auto stat_line = [&](const char* label, auto&& cell) {
        std::string line = fmt::format("{:<{}}", label, kLabelWidth);
        for (const auto& [l, f] : columns) line += fmt::format("{:>{}}", cell(f), kColWidth);
        out += line + "\n";
    };
    stat_line("Observations", [](const RegressionFit& f) { return fmt::format("{}   ", f.n_obs); });
    stat_line("R2", [](const RegressionFit& f) { return fmt::format("{:.3f}   ", f.r2); });
    stat_line("Adjusted R2", [](const RegressionFit& f) { return fmt::format("{:.3f}   ", f.adj_r2); });
    stat_line("Residual Std. Error", [](const RegressionFit& f) { return fmt::format("{:.3f}   ", f.resid_std_error); });
    stat_line("F statistic", [](const RegressionFit& f) {
        if (std::isnan(f.f_stat)) return std::string("-   ");
        return fmt::format("{:.1f}{:<3}", f.f_stat, significance_stars(f.f_p_value()));
    });
    out += "Note: *p<0.1; **p<0.05; ***p<0.01\n";
    return out;
}

}  // namespace nowcast::ols
