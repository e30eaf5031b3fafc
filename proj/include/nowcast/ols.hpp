#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace nowcast::ols {

/// Name used for the intercept column.
inline constexpr const char* kIntercept = "Constant";

/**
 * @brief Named regressor columns, row-major observations, optional intercept.
 *
 * Invariants checked on construction: unique names, finite entries and
 * rows of matching width. The intercept column is implicit.
 */
class DesignMatrix {
public:
    DesignMatrix(std::vector<std::string> names, bool intercept);

    void add_row(std::span<const double> row);

    [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }
    [[nodiscard]] bool intercept() const noexcept { return intercept_; }
    [[nodiscard]] std::size_t rows() const noexcept { return row_count_; }
    [[nodiscard]] std::size_t columns() const noexcept { return names_.size() + (intercept_ ? 1 : 0); }
    [[nodiscard]] double at(std::size_t row, std::size_t col) const { return data_[row * names_.size() + col]; }

private:
    std::vector<std::string> names_;
    bool intercept_;
    std::vector<double> data_;
    std::size_t row_count_ = 0;
};

struct RegressionFit {
    /// Parameter names; kIntercept first when present.
    std::vector<std::string> names;
    std::vector<double> coefficients;
    std::vector<double> std_errors;
    std::vector<double> fitted;
    std::vector<double> residuals;
    double r2 = 0.0;
    double adj_r2 = 0.0;
    double resid_std_error = 0.0;
    /// NaN for an intercept-only model.
    double f_stat = 0.0;
    int n_obs = 0;
    int n_params = 0;
    bool intercept = true;

    [[nodiscard]] double coefficient(const std::string& name) const;
    [[nodiscard]] double std_error(const std::string& name) const;
    [[nodiscard]] double t_stat(std::size_t i) const { return coefficients[i] / std_errors[i]; }
    /// Two-sided p-value from Student's t with n - k degrees of freedom.
    [[nodiscard]] double p_value(std::size_t i) const;
    [[nodiscard]] double f_p_value() const;

private:
    [[nodiscard]] std::size_t index_of(const std::string& name) const;
};

/**
 * @brief Ordinary least squares with classical inference.
 *
 * Solved through a column-pivoted Householder QR of the column-normalized
 * design. Standard errors come from s^2 (X'X)^-1 with s^2 = RSS / (n - k);
 * R^2 uses the centered total sum of squares when an intercept is present.
 *
 * Throws nowcast::Error when n <= k or when the design is rank deficient
 * (naming the columns that are linear combinations of the others).
 */
RegressionFit fit(const DesignMatrix& x, std::span<const double> y);

/// intercept + sum beta_i * x_i. Every fitted regressor must be supplied.
double predict(const RegressionFit& fit, const std::map<std::string, double>& row);

/// "***" for p < 0.01, "**" for p < 0.05, "*" for p < 0.1.
std::string significance_stars(double p);

/// Side-by-side text table: coefficient with stars, standard error beneath in
/// parentheses, then observations, R^2, adjusted R^2, residual std. error and F.
std::string render_table(const std::vector<std::pair<std::string, RegressionFit>>& columns);

}  // namespace nowcast::ols
