#include "nowcast/hp_filter.hpp"

#include "nowcast/banded_cholesky.hpp"
#include "nowcast/error.hpp"

#include <cmath>
#include <string>

namespace nowcast::hp {

SymmetricBandMatrix::SymmetricBandMatrix(std::size_t n, std::size_t bandwidth)
    : n_(n), p_(bandwidth), band_(n * (bandwidth + 1), 0.0) {}

double& SymmetricBandMatrix::lower(std::size_t i, std::size_t j) {
    return band_[i * (p_ + 1) + (i - j)];
}

double SymmetricBandMatrix::lower(std::size_t i, std::size_t j) const {
    return band_[i * (p_ + 1) + (i - j)];
}

void SymmetricBandMatrix::factorize() {
    for (std::size_t j = 0; j < n_; ++j) {
        const std::size_t k0 = j >= p_ ? j - p_ : 0;
        double diag = lower(j, j);
        for (std::size_t k = k0; k < j; ++k) diag -= lower(j, k) * lower(j, k);
        if (!(diag > 0.0)) throw Error("band matrix is not positive definite (pivot " + std::to_string(j) + ")");
        const double ljj = std::sqrt(diag);
        lower(j, j) = ljj;
        const std::size_t i_end = std::min(n_, j + p_ + 1);
        for (std::size_t i = j + 1; i < i_end; ++i) {
            const std::size_t ki = i >= p_ ? i - p_ : 0;
            double v = lower(i, j);
            for (std::size_t k = std::max(ki, k0); k < j; ++k) v -= lower(i, k) * lower(j, k);
            lower(i, j) = v / ljj;
        }
    }
    factorized_ = true;
}

std::vector<double> SymmetricBandMatrix::solve(std::span<const double> b) const {
    if (!factorized_) throw Error("band matrix solve before factorization");
    if (b.size() != n_) throw Error("band solve: right-hand side has wrong length");
    std::vector<double> x(b.begin(), b.end());
    // L z = b
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t k0 = i >= p_ ? i - p_ : 0;
        double v = x[i];
        for (std::size_t k = k0; k < i; ++k) v -= lower(i, k) * x[k];
        x[i] = v / lower(i, i);
    }
    // L^T x = z
    for (std::size_t ii = n_; ii-- > 0;) {
        const std::size_t k_end = std::min(n_, ii + p_ + 1);
        double v = x[ii];
        for (std::size_t k = ii + 1; k < k_end; ++k) v -= lower(k, ii) * x[k];
        x[ii] = v / lower(ii, ii);
    }
    return x;
}

TrendDecomposition hp_trend(std::span<const double> y, double lambda) {
    const std::size_t n = y.size();
    if (n < 4) throw Error("HP filter needs at least 4 observations, got " + std::to_string(n));
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw Error("HP filter lambda must be positive and finite");
    for (double v : y) {
        if (!std::isfinite(v)) throw Error("HP filter input contains a non-finite value");
    }

    // I + lambda * D'D, accumulated one second-difference row (1, -2, 1) at a time.
    SymmetricBandMatrix a(n, 2);
    for (std::size_t i = 0; i < n; ++i) a.lower(i, i) = 1.0;
    constexpr double kStencil[3] = {1.0, -2.0, 1.0};
    for (std::size_t r = 0; r + 2 < n; ++r) {
        for (std::size_t p = 0; p < 3; ++p) {
            for (std::size_t q = 0; q <= p; ++q) {
                a.lower(r + p, r + q) += lambda * kStencil[p] * kStencil[q];
            }
        }
    }
    a.factorize();

    TrendDecomposition dec;
    dec.lambda = lambda;
    dec.trend = a.solve(y);
    dec.residuals.resize(n);
    for (std::size_t i = 0; i < n; ++i) dec.residuals[i] = y[i] - dec.trend[i];
    return dec;
}

TrendGrowth trend_growth(const TrendDecomposition& dec) {
    const auto& x = dec.trend;
    if (x.size() < 2) throw Error("trend growth needs a trend of length >= 2");
    TrendGrowth g(x.size() - 1);
    for (std::size_t k = 1; k < x.size(); ++k) g[k - 1] = x[k] - x[k - 1];
    return g;
}

}  // namespace nowcast::hp
