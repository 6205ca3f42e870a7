#include "kappa/scores.hpp"

#include <cmath>
#include <string>

#include "kappa/errors.hpp"
#include "kappa/numeric.hpp"

namespace kappa {

void validate_observations(const ObservationVector& x, const char* name) {
    if (x.size() < 2) {
        throw InputError(std::string(name) + ": need at least 2 observations, got " +
                         std::to_string(x.size()));
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i])) {
            throw InputError(std::string(name) + ": non-finite value at index " +
                             std::to_string(i));
        }
    }
}

ScoreMatrix::ScoreMatrix(SquareMatrix<signed char> entries) : entries_(std::move(entries)) {
    std::size_t n = entries_.dim();
    if (n < 2) throw InputError("ScoreMatrix: dimension must be >= 2");
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
            signed char v = entries_(k, l);
            if (k == l) {
                if (v != 0) throw InputError("ScoreMatrix: nonzero diagonal");
            } else if (v != 1 && v != -1) {
                throw InputError("ScoreMatrix: off-diagonal entry not in {-1,+1}");
            }
        }
    }
}

ScoreMatrix score_matrix(const ObservationVector& x) {
    validate_observations(x, "x");
    std::size_t n = x.size();
    SquareMatrix<signed char> c(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
            if (k == l) continue;
            c(k, l) = x[k] >= x[l] ? 1 : -1;
        }
    }
    return ScoreMatrix(std::move(c));
}

CentredScoreMatrix centre(const ScoreMatrix& c) {
    std::size_t n = c.dim();
    double nm1 = static_cast<double>(n - 1);
    std::vector<double> rowMeans(n, 0.0), colMeans(n, 0.0);
    KahanSum total;
    for (std::size_t k = 0; k < n; ++k) {
        long rowSum = 0;
        for (std::size_t l = 0; l < n; ++l) rowSum += c(k, l);
        rowMeans[k] = static_cast<double>(rowSum) / nm1;
        total.add(static_cast<double>(rowSum));
    }
    for (std::size_t l = 0; l < n; ++l) {
        long colSum = 0;
        for (std::size_t k = 0; k < n; ++k) colSum += c(k, l);
        colMeans[l] = static_cast<double>(colSum) / nm1;
    }
    double grandMean = total.value() / (static_cast<double>(n) * nm1);

    SquareMatrix<double> e(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
            if (k == l) continue;  // diagonal stays exactly zero
            e(k, l) = static_cast<double>(c(k, l)) - rowMeans[k] - colMeans[l] + grandMean;
        }
    }
    return CentredScoreMatrix(std::move(e), std::move(rowMeans), std::move(colMeans), grandMean);
}

KernelMatrix kernel_product(const CentredScoreMatrix& kx, const CentredScoreMatrix& ky) {
    if (kx.dim() != ky.dim()) {
        throw InputError("kernel_product: dimension mismatch (" + std::to_string(kx.dim()) +
                         " vs " + std::to_string(ky.dim()) + ")");
    }
    std::size_t n = kx.dim();
    SquareMatrix<double> z(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
            z(k, l) = kx(k, l) * ky(k, l);
        }
    }
    return KernelMatrix(std::move(z));
}

}  // namespace kappa
