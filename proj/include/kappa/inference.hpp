#pragma once

#include <cstddef>

// Quasi-likelihood inference for H0: tau = 0.
//
// Variance model: Var(tauHat) = c (1 - tau^2) / denominator, denominator N or
// N-2 (both appear in the source material; default N because the test
// statistics use c/N). c defaults to 0.4456 and is meant to be re-calibrated
// by the simulate module; under the bundled sampling designs the measured
// constant depends on N (see simulate reports), so calibrate at the N you
// test at.
//
// Statistics:
//   W      = N tauHat^2 / c                   (Wald)
//   Lambda = 2N log(1/(1 - tauHat^2))         (likelihood ratio, as printed)
//   LambdaQ = (N/c)(2 tauHat atanh(tauHat) + log(1 - tauHat^2))
// LambdaQ is the dispersion-scaled quasi-likelihood ratio: twice the increment
// of the mean-variance quasi-likelihood divided by the dispersion c. It equals
// W + O(N tauHat^4 / c) and is the variant that is chi-square(1) calibrated
// when c is estimated from data; Lambda as printed carries no dispersion
// normalisation (its null scale is 2c, not 1).
// All p-values are chi-square(1) survival probabilities.

namespace kappa {

enum class VarianceDenominator { N, N_minus_2 };

struct VarianceModel {
    double c = 0.4456;
    VarianceDenominator denominator = VarianceDenominator::N;
};

enum class TestFamily { Wald, LRT };

struct TestResult {
    double statistic = 0.0;
    TestFamily family = TestFamily::Wald;
    int df = 1;
    double pValue = 1.0;
    double tauHat = 0.0;
    std::size_t n = 0;
    // Set when |tauHat| = 1: statistic is capped at the largest finite double
    // and pValue is 0, since the LRT form diverges on the boundary.
    bool boundary = false;
};

// -n log(1 - tau^2). Requires |tau| < 1.
double quasi_loglik(double tau, std::size_t n);

// Sample objective whose maximiser over tau is tauHat itself:
//   Q(tau) = n (2 tauHat atanh(tau) + log(1 - tau^2)),
// strictly concave on (-1,1) with dQ/dtau = 2n (tauHat - tau)/(1 - tau^2).
// At tauHat = 0 it reduces to -quasi_loglik(tau, n).
double sample_quasi_loglik(double tau, double tauHat, std::size_t n);

// I(tau) = 2n (1 + tau^2) / (1 - tau^2)^2; I(0) = 2n.
double observed_information(double tau, std::size_t n);

// sqrt(c (1 - tauHat^2) / denominator).
double standard_error(double tauHat, std::size_t n, const VarianceModel& vm);

TestResult wald_test(double tauHat, std::size_t n, const VarianceModel& vm);

// Statistic 2n log(1/(1 - tauHat^2)), as printed; no dispersion scaling.
TestResult lr_test(double tauHat, std::size_t n);

// Dispersion-scaled quasi-likelihood ratio LambdaQ (see header comment).
TestResult quasi_lr_test(double tauHat, std::size_t n, const VarianceModel& vm);

// Normal density at t times (1 + gamma3/6 s^3 + gamma4/24 s^4), s = (t-mu)/sigma.
// A moment diagnostic, not a likelihood; can go negative in the far tails.
double edgeworth_density(double t, double mu, double sigma, double gamma3, double gamma4);

// sigma^2(theta) = 1.5 c / (log h)^2. A constant-scalar approximation from
// numerical experimentation in the source material; exposed as a labeled
// diagnostic only and never used for p-values. Requires h > 0, h != 1.
double heuristic_wald_variance(double c, double h);

}  // namespace kappa
