#include <doctest.h>

#include <cmath>
#include <vector>

#include "approx.hpp"
#include "kappa/embeddings.hpp"
#include "kappa/errors.hpp"
#include "kappa/numeric.hpp"

TEST_CASE("logit embedding equals the paired-comparison identity") {
    // tau = 2 pi - 1 with pi = logistic(t) collapses to tanh(t/2).
    for (double t = -6.0; t <= 6.0001; t += 0.25) {
        double p = 1.0 / (1.0 + std::exp(-t));
        CHECK_NEAR(kappa::m_logit(t), kappa::tau_from_pairwise_prob(p), 1e-12);
        CHECK_NEAR(kappa::m_logit(t), std::tanh(t / 2.0), 1e-15);
    }
}

TEST_CASE("probit embedding equals the paired-comparison identity") {
    for (double t = -6.0; t <= 6.0001; t += 0.25) {
        double p = kappa::normal_cdf(t);
        CHECK_NEAR(kappa::m_probit(t), kappa::tau_from_pairwise_prob(p), 1e-12);
    }
    CHECK_NEAR(kappa::m_probit(1.959963984540054), 0.95, 1e-4);
}

TEST_CASE("embeddings are odd and strictly increasing into (-1, 1)") {
    for (kappa::EmbeddingFamily fam :
         {kappa::EmbeddingFamily::Logit, kappa::EmbeddingFamily::Probit}) {
        kappa::EmbeddingMap m = kappa::make_embedding(fam);
        double prev = -1.0;
        for (double t = -8.0; t <= 8.0001; t += 0.125) {
            double v = m.forward(t);
            CHECK(v > -1.0);
            CHECK(v < 1.0);
            CHECK(v > prev);
            CHECK_NEAR(m.forward(-t), -v, 1e-14);
            prev = v;
        }
        CHECK(m.forward(0.0) == 0.0);
    }
}

TEST_CASE("slopes at zero match the analytic values and a finite difference") {
    kappa::EmbeddingMap logit = kappa::make_embedding(kappa::EmbeddingFamily::Logit);
    kappa::EmbeddingMap probit = kappa::make_embedding(kappa::EmbeddingFamily::Probit);
    CHECK_NEAR(logit.slopeAtZero, 0.5, 1e-15);
    CHECK_NEAR(probit.slopeAtZero, 2.0 / std::sqrt(2.0 * 3.14159265358979323846), 1e-15);
    double h = 1e-6;
    CHECK_NEAR((logit.forward(h) - logit.forward(-h)) / (2 * h), logit.slopeAtZero, 1e-9);
    CHECK_NEAR((probit.forward(h) - probit.forward(-h)) / (2 * h), probit.slopeAtZero, 1e-9);
}

TEST_CASE("logit embedding is within a cubic of the identity/2 near zero") {
    // tanh(t/2) = t/2 - t^3/24 + ...
    for (double t = -0.5; t <= 0.5001; t += 0.05) {
        CHECK(std::fabs(kappa::m_logit(t) - t / 2.0) <= std::fabs(t * t * t) / 20.0 + 1e-15);
    }
}

TEST_CASE("pairwise probability domain is enforced") {
    CHECK_NEAR(kappa::tau_from_pairwise_prob(0.0), -1.0, 0.0);
    CHECK_NEAR(kappa::tau_from_pairwise_prob(1.0), 1.0, 0.0);
    CHECK_NEAR(kappa::tau_from_pairwise_prob(0.5), 0.0, 0.0);
    CHECK_THROWS_AS(kappa::tau_from_pairwise_prob(-0.01), kappa::InputError);
    CHECK_THROWS_AS(kappa::tau_from_pairwise_prob(1.01), kappa::InputError);
}

TEST_CASE("surface maps a vector of linear predictors elementwise") {
    std::vector<double> lp = {-2.0, -0.5, 0.0, 0.5, 2.0};
    std::vector<double> s = kappa::kappa_surface(lp, kappa::EmbeddingFamily::Logit);
    REQUIRE(s.size() == lp.size());
    for (std::size_t i = 0; i < lp.size(); ++i) CHECK_NEAR(s[i], kappa::m_logit(lp[i]), 0.0);
    std::vector<double> sp = kappa::kappa_surface(lp, kappa::EmbeddingFamily::Probit);
    for (std::size_t i = 0; i < lp.size(); ++i) CHECK_NEAR(sp[i], kappa::m_probit(lp[i]), 0.0);
}
