#pragma once

#include <cstddef>
#include <vector>

#include "kappa/matrix.hpp"

// Pairwise weak-order score matrices and their double-centred form.
//
// For observations x_1..x_N the hollow score matrix is
//     C[k][l] = +1 if x_k >= x_l,  -1 if x_k < x_l,  0 if k == l,
// so a tie scores +1 in both directions and C is antisymmetric off ties.
// Double centring subtracts row and column means (over the N-1 off-diagonal
// entries), adds back the grand mean (over the N^2-N off-diagonal entries),
// and re-zeroes the diagonal:
//     ktilde[k][l] = C[k][l] - rowMean[k] - colMean[l] + grandMean.
// The kernel matrix is the elementwise product of two centred matrices.

namespace kappa {

using ObservationVector = std::vector<double>;

class ScoreMatrix {
public:
    // Validates hollowness and {-1,+1} off-diagonal entries.
    explicit ScoreMatrix(SquareMatrix<signed char> entries);

    std::size_t dim() const { return entries_.dim(); }
    int operator()(std::size_t k, std::size_t l) const { return entries_(k, l); }
    const SquareMatrix<signed char>& entries() const { return entries_; }

private:
    SquareMatrix<signed char> entries_;
};

class CentredScoreMatrix {
public:
    CentredScoreMatrix(SquareMatrix<double> entries, std::vector<double> rowMeans,
                       std::vector<double> colMeans, double grandMean)
        : entries_(std::move(entries)),
          rowMeans_(std::move(rowMeans)),
          colMeans_(std::move(colMeans)),
          grandMean_(grandMean) {}

    std::size_t dim() const { return entries_.dim(); }
    double operator()(std::size_t k, std::size_t l) const { return entries_(k, l); }
    const SquareMatrix<double>& entries() const { return entries_; }
    const std::vector<double>& rowMeans() const { return rowMeans_; }
    const std::vector<double>& colMeans() const { return colMeans_; }
    double grandMean() const { return grandMean_; }

private:
    SquareMatrix<double> entries_;
    std::vector<double> rowMeans_;
    std::vector<double> colMeans_;
    double grandMean_;
};

class KernelMatrix {
public:
    explicit KernelMatrix(SquareMatrix<double> entries) : entries_(std::move(entries)) {}

    std::size_t dim() const { return entries_.dim(); }
    double operator()(std::size_t k, std::size_t l) const { return entries_(k, l); }
    const SquareMatrix<double>& entries() const { return entries_; }

private:
    SquareMatrix<double> entries_;
};

// Rejects N < 2 and non-finite values. Observation vectors feed every public
// entry point, so validation lives here.
void validate_observations(const ObservationVector& x, const char* name);

// C[k][l] = +1 if x_k >= x_l, -1 if x_k < x_l, 0 on the diagonal.
ScoreMatrix score_matrix(const ObservationVector& x);

// Row/column means over N-1 entries, grand mean over N^2-N, diagonal re-zeroed
// after centring. Off-diagonal entries land in [-4, 4] by construction; the
// observed maximum is ~1 for tie-free data (recorded, not enforced).
CentredScoreMatrix centre(const ScoreMatrix& c);

// Elementwise product; throws on dimension mismatch.
KernelMatrix kernel_product(const CentredScoreMatrix& kx, const CentredScoreMatrix& ky);

}  // namespace kappa
