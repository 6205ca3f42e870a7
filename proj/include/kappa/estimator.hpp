#pragma once

#include <cstddef>
#include <vector>

#include "kappa/scores.hpp"

// Point estimation. With Z = ktilde_x .* ktilde_y,
//   tauCov  = (N(N-1))^-1 sum_{k!=l} Z[k][l]
//   tauCorr = sum Z / sqrt(sum ktilde_x^2 * sum ktilde_y^2)
//           = tauCov / sqrt(sigmaX2 * sigmaY2),
// where sigmaX2, sigmaY2 are the mean squared centred scores per margin.
// gamma3 and gamma4 are the raw third and fourth power sums of Z over the
// off-diagonal, normalised by N(N-1). They are labeled moment diagnostics;
// they are not re-centred.

namespace kappa {

struct KappaEstimate {
    double tauCov = 0.0;
    double tauCorr = 0.0;
    std::size_t n = 0;
    double gamma3 = 0.0;
    double gamma4 = 0.0;
    double sigmaX2 = 0.0;
    double sigmaY2 = 0.0;
};

// H_n = mean of Z[n][l] over l != n: the plug-in estimate of the projection of
// the kernel onto observation n. mean(terms) equals tauCov exactly.
struct HajekProjection {
    std::vector<double> terms;
    double mean = 0.0;
};

double kappa_cov(const KernelMatrix& z);

// Throws DegenerateMarginError when a margin's centred scores are all zero
// (constant input vector); the error names the offending margin.
KappaEstimate kappa_corr(const CentredScoreMatrix& kx, const CentredScoreMatrix& ky,
                         const char* nameX = "x", const char* nameY = "y");

// Convenience: builds score matrices, centres, and estimates in one call.
KappaEstimate kappa_corr(const ObservationVector& x, const ObservationVector& y);

// (gamma3, gamma4): raw power sums of Z normalised by N(N-1).
std::pair<double, double> moments(const KernelMatrix& z);

HajekProjection hajek_terms(const ObservationVector& x, const ObservationVector& y);

}  // namespace kappa
