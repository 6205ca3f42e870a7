#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "kappa/estimator.hpp"
#include "kappa/inference.hpp"
#include "kappa/matrix.hpp"
#include "kappa/scores.hpp"

// Pairwise correlation matrix over P margins. Each centred score matrix is
// computed once and reused across pairs (O(P N^2) construction), and every
// off-diagonal entry equals the univariate estimate on that pair bit for bit.
// No positive-semidefiniteness is guaranteed; the smallest eigenvalue is
// reported as a diagnostic only. No multiple-comparison correction is applied.

namespace kappa {

struct KappaMatrix {
    std::size_t dim = 0;    // P
    std::size_t n = 0;      // sample size
    SquareMatrix<double> entries;              // P x P, symmetric, unit diagonal
    std::vector<KappaEstimate> pairEstimates;  // indexed by pair_index(a, b, P)
    double minEigenvalue = 0.0;
    bool psd = true;
};

// Lexicographic index of the unordered pair (a, b), a < b, among P margins.
inline std::size_t pair_index(std::size_t a, std::size_t b, std::size_t p) {
    return a * p - a * (a + 1) / 2 + (b - a - 1);
}

struct PairTest {
    std::size_t a = 0;
    std::size_t b = 0;
    double tauHat = 0.0;
    TestResult wald;
    TestResult lrt;
    bool boundary = false;
};

// Throws DegenerateMarginError naming the offending column when one is
// constant. Column names are optional and used only in error messages.
KappaMatrix kappa_matrix(const std::vector<ObservationVector>& columns,
                         const std::vector<std::string>& names = {});

// Wald and LRT per off-diagonal pair. Entries with |tauHat| >= 1 - 1e-12 get
// the boundary policy: statistic capped at the largest finite double, p = 0,
// boundary flag set on both results.
std::vector<PairTest> matrix_tests(const KappaMatrix& m, std::size_t n,
                                   const VarianceModel& vm);

// -n sum_{a<b} log(1 - tau_ab^2), as printed; diverges on boundary entries.
double joint_quasi_loglik(const KappaMatrix& m, std::size_t n);

}  // namespace kappa
