#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nowcast::hp {

/**
 * @brief Symmetric positive-definite band matrix with in-place Cholesky solve.
 *
 * Only the lower band is stored: entry (i, i - d) for d = 0..bandwidth lives
 * at band_[i * (bandwidth + 1) + d]. Factorization and solves are O(n * p^2).
 */
class SymmetricBandMatrix {
public:
    SymmetricBandMatrix(std::size_t n, std::size_t bandwidth);

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] std::size_t bandwidth() const noexcept { return p_; }

    /// Lower-band element (i, j) with i - bandwidth <= j <= i.
    double& lower(std::size_t i, std::size_t j);
    [[nodiscard]] double lower(std::size_t i, std::size_t j) const;

    /// Replaces the stored band with its Cholesky factor L (A = L L^T).
    /// Throws if a pivot is not positive.
    void factorize();
    [[nodiscard]] bool factorized() const noexcept { return factorized_; }

    /// Solves A x = b using the factor; requires factorize().
    [[nodiscard]] std::vector<double> solve(std::span<const double> b) const;

private:
    std::size_t n_;
    std::size_t p_;
    std::vector<double> band_;
    bool factorized_ = false;
};

}  // namespace nowcast::hp
