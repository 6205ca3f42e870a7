#include "kappa/inference.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "kappa/errors.hpp"
#include "kappa/numeric.hpp"

namespace kappa {

namespace {

void require_interior(double tau, const char* where) {
    if (std::isnan(tau) || std::fabs(tau) >= 1.0) {
        throw InputError(std::string(where) + ": |tau| must be < 1, got " + std::to_string(tau));
    }
}

double denominator_value(std::size_t n, const VarianceModel& vm) {
    if (vm.denominator == VarianceDenominator::N_minus_2 && n <= 2) {
        throw InputError("variance denominator N-2 requires n >= 3");
    }
    return vm.denominator == VarianceDenominator::N ? static_cast<double>(n)
                                                    : static_cast<double>(n - 2);
}

void require_positive_c(const VarianceModel& vm) {
    if (!(vm.c > 0.0)) throw InputError("VarianceModel: c must be > 0");
}

}  // namespace

double quasi_loglik(double tau, std::size_t n) {
    require_interior(tau, "quasi_loglik");
    return -static_cast<double>(n) * std::log1p(-tau * tau);
}

double sample_quasi_loglik(double tau, double tauHat, std::size_t n) {
    require_interior(tau, "sample_quasi_loglik");
    return static_cast<double>(n) * (2.0 * tauHat * std::atanh(tau) + std::log1p(-tau * tau));
}

double observed_information(double tau, std::size_t n) {
    require_interior(tau, "observed_information");
    double d = 1.0 - tau * tau;
    return 2.0 * static_cast<double>(n) * (1.0 + tau * tau) / (d * d);
}

double standard_error(double tauHat, std::size_t n, const VarianceModel& vm) {
    require_positive_c(vm);
    if (std::isnan(tauHat) || std::fabs(tauHat) > 1.0) {
        throw InputError("standard_error: |tauHat| must be <= 1");
    }
    if (n < 3) throw InputError("standard_error: n must be >= 3");
    return std::sqrt(vm.c * (1.0 - tauHat * tauHat) / denominator_value(n, vm));
}

TestResult wald_test(double tauHat, std::size_t n, const VarianceModel& vm) {
    require_positive_c(vm);
    require_interior(tauHat, "wald_test");
    TestResult r;
    r.family = TestFamily::Wald;
    r.tauHat = tauHat;
    r.n = n;
    r.statistic = static_cast<double>(n) * tauHat * tauHat / vm.c;
    r.pValue = chi2_sf(r.statistic);
    return r;
}

TestResult lr_test(double tauHat, std::size_t n) {
    require_interior(tauHat, "lr_test");
    TestResult r;
    r.family = TestFamily::LRT;
    r.tauHat = tauHat;
    r.n = n;
    r.statistic = -2.0 * static_cast<double>(n) * std::log1p(-tauHat * tauHat);
    r.pValue = chi2_sf(r.statistic);
    return r;
}

TestResult quasi_lr_test(double tauHat, std::size_t n, const VarianceModel& vm) {
    require_positive_c(vm);
    require_interior(tauHat, "quasi_lr_test");
    TestResult r;
    r.family = TestFamily::LRT;
    r.tauHat = tauHat;
    r.n = n;
    // 2 [Q(tauHat) - Q(0)] / (2c) with Q the sample quasi-likelihood; the
    // bracket is tauHat^2/2 + O(tauHat^4), so the statistic is W + o(W).
    double bracket = 2.0 * tauHat * std::atanh(tauHat) + std::log1p(-tauHat * tauHat);
    r.statistic = static_cast<double>(n) * bracket / vm.c;
    if (r.statistic < 0.0) r.statistic = 0.0;  // roundoff guard near tauHat = 0
    r.pValue = chi2_sf(r.statistic);
    return r;
}

double edgeworth_density(double t, double mu, double sigma, double gamma3, double gamma4) {
    if (!(sigma > 0.0)) throw InputError("edgeworth_density: sigma must be > 0");
    double s = (t - mu) / sigma;
    double correction = 1.0 + gamma3 / 6.0 * s * s * s + gamma4 / 24.0 * s * s * s * s;
    return normal_pdf(s) / sigma * correction;
}

double heuristic_wald_variance(double c, double h) {
    if (!(c > 0.0)) throw InputError("heuristic_wald_variance: c must be > 0");
    if (!(h > 0.0) || h == 1.0) {
        throw InputError("heuristic_wald_variance: h must be positive and != 1");
    }
    double lh = std::log(h);
    return 1.5 * c / (lh * lh);
}

}  // namespace kappa
