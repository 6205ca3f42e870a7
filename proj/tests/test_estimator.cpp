#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "approx.hpp"
#include "kappa/errors.hpp"
#include "kappa/estimator.hpp"
#include "kappa/scores.hpp"
#include "oracle_brute.hpp"

using kappa::ObservationVector;

namespace {

struct FrozenCase {
    ObservationVector x, y;
    double tauCov, tauCorr, gamma3, gamma4;
    std::vector<double> hajek;
};

// Values computed once with an independent double-precision implementation
// and frozen at 17 digits.
const FrozenCase kFrozen[] = {
    {{1, 2, 3, 4},
     {1, 3, 2, 4},
     0.074074074074074098,
     0.28571428571428581,
     0.16552354823959764,
     0.16679367982522988,
     {0.25925925925925924, -0.1111111111111111, -0.1111111111111111, 0.25925925925925924}},
    {{1, 2, 3, 4, 5},
     {1, 3, 2, 5, 4},
     0.0,
     0.0,
     0.018749999999999999,
     0.0140625,
     {0.25, -0.125, -0.125, 0.0, 0.0}},
    {{3, 1, 2},
     {3, 1, 2},
     0.33333333333333331,
     1.0,
     0.33333333333333331,
     0.33333333333333331,
     {0.5, 0.5, 0.0}},
    {{1, 1, 2, 3},
     {2, 1, 1, 3},
     -0.027777777777777762,
     -0.11999999999999995,
     0.016868141289437592,
     0.024753872313671706,
     {-0.04629629629629626, 0.027777777777777717, -0.04629629629629626,
      -0.04629629629629628}},
    {{1, 2, 3, 4, 5, 6},
     {2, 1, 4, 3, 6, 5},
     -0.018666666666666682,
     -0.073684210526315838,
     -0.0024874666666666726,
     0.0058680320000000013,
     {0.023999999999999976, 0.023999999999999976, -0.10400000000000001,
      -0.10400000000000001, 0.023999999999999987, 0.023999999999999987}},
};

}  // namespace

TEST_CASE("estimates match frozen independent values") {
    for (const FrozenCase& fc : kFrozen) {
        CAPTURE(fc.x[0]);
        kappa::KappaEstimate e = kappa::kappa_corr(fc.x, fc.y);
        CHECK_NEAR(e.tauCov, fc.tauCov, 1e-15);
        CHECK_NEAR(e.tauCorr, fc.tauCorr, 1e-15);
        CHECK_NEAR(e.gamma3, fc.gamma3, 1e-15);
        CHECK_NEAR(e.gamma4, fc.gamma4, 1e-15);
        kappa::HajekProjection h = kappa::hajek_terms(fc.x, fc.y);
        REQUIRE(h.terms.size() == fc.hajek.size());
        for (std::size_t k = 0; k < fc.hajek.size(); ++k)
            CHECK_NEAR(h.terms[k], fc.hajek[k], 1e-14);
        CHECK_NEAR(h.mean, fc.tauCov, 1e-14);
    }
}

TEST_CASE("estimates agree with the loop oracle on random data") {
    std::mt19937 gen(555);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> levels(0, 3);
    for (int rep = 0; rep < 60; ++rep) {
        std::size_t n = 3 + std::size_t(gen() % 28);
        ObservationVector x(n), y(n);
        bool tied = rep % 3 == 0;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = tied ? double(levels(gen)) : u(gen);
            y[i] = tied ? double(levels(gen)) : u(gen);
        }
        oracle::BruteResult ref = oracle::brute_tau(x, y);
        if (ref.sigmaX2 == 0 || ref.sigmaY2 == 0) continue;  // constant margin
        kappa::KappaEstimate e = kappa::kappa_corr(x, y);
        CHECK_NEAR(e.tauCov, ref.tauCov, 1e-13);
        CHECK_NEAR(e.tauCorr, ref.tauCorr, 1e-13);
        CHECK_NEAR(e.gamma3, ref.gamma3, 1e-13);
        CHECK_NEAR(e.gamma4, ref.gamma4, 1e-13);
        CHECK_NEAR(e.sigmaX2, ref.sigmaX2, 1e-13);
        CHECK_NEAR(e.sigmaY2, ref.sigmaY2, 1e-13);
        kappa::HajekProjection h = kappa::hajek_terms(x, y);
        for (std::size_t k = 0; k < n; ++k) CHECK_NEAR(h.terms[k], ref.hajek[k], 1e-13);
    }
}

TEST_CASE("projection terms average to tauCov exactly") {
    std::mt19937 gen(777);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 10; ++rep) {
        std::size_t n = 5 + std::size_t(gen() % 45);
        ObservationVector x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = u(gen);
            y[i] = u(gen);
        }
        kappa::HajekProjection h = kappa::hajek_terms(x, y);
        kappa::KappaEstimate e = kappa::kappa_corr(x, y);
        CHECK_NEAR(h.mean, e.tauCov, 1e-12);
    }
}

TEST_CASE("fully concordant pair has every projection term positive") {
    ObservationVector x = {1, 2, 3, 4, 5};
    kappa::HajekProjection h = kappa::hajek_terms(x, x);
    for (double t : h.terms) CHECK(t > 0.0);
}

TEST_CASE("estimator is symmetric in its arguments") {
    ObservationVector x = {0.1, 0.9, -0.4, 0.3, 0.3, -1.7};
    ObservationVector y = {2.0, -0.5, 0.8, 0.8, 1.1, 0.0};
    kappa::KappaEstimate a = kappa::kappa_corr(x, y);
    kappa::KappaEstimate b = kappa::kappa_corr(y, x);
    CHECK(a.tauCov == b.tauCov);
    CHECK(a.tauCorr == b.tauCorr);
    CHECK(a.gamma3 == b.gamma3);
    CHECK(a.gamma4 == b.gamma4);
}

TEST_CASE("self correlation is 1 and antitone correlation is -1") {
    ObservationVector x = {0.2, 1.4, -0.7, 3.3, 0.9, -2.1, 0.5};
    ObservationVector neg(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) neg[i] = -x[i];
    CHECK_NEAR(kappa::kappa_corr(x, x).tauCorr, 1.0, 1e-14);
    CHECK_NEAR(kappa::kappa_corr(x, neg).tauCorr, -1.0, 1e-14);
}

TEST_CASE("degenerate margin raises an error naming the column") {
    ObservationVector flat = {2.0, 2.0, 2.0, 2.0};
    ObservationVector live = {1.0, 2.0, 3.0, 4.0};
    CHECK_THROWS_WITH_AS(kappa::kappa_corr(flat, live),
                         doctest::Contains("x"), kappa::DegenerateMarginError);
    try {
        kappa::CentredScoreMatrix kf = kappa::centre(kappa::score_matrix(flat));
        kappa::CentredScoreMatrix kl = kappa::centre(kappa::score_matrix(live));
        kappa::kappa_corr(kl, kf, "alpha", "beta");
        FAIL("expected DegenerateMarginError");
    } catch (const kappa::DegenerateMarginError& e) {
        CHECK(e.margin() == "beta");
    }
}

TEST_CASE("fourth moment diagnostic is nonnegative") {
    std::mt19937 gen(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        std::size_t n = 4 + std::size_t(gen() % 30);
        ObservationVector x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = u(gen);
            y[i] = u(gen);
        }
        CHECK(kappa::kappa_corr(x, y).gamma4 >= 0.0);
    }
}

TEST_CASE("kappa_cov on constant-sign kernels") {
    std::size_t n = 6;
    kappa::SquareMatrix<double> plus(n), minus(n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
            plus(k, l) = k == l ? 0.0 : 1.0;
            minus(k, l) = k == l ? 0.0 : -1.0;
        }
    CHECK_NEAR(kappa::kappa_cov(kappa::KernelMatrix(plus)), 1.0, 1e-15);
    CHECK_NEAR(kappa::kappa_cov(kappa::KernelMatrix(minus)), -1.0, 1e-15);
}
