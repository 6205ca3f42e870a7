#pragma once

#include <functional>
#include <vector>

// Monotone embeddings of paired-comparison models into the correlation scale
// via tau = 2 pi - 1, where pi is the probability that one item beats the
// other:
//   logit  family: m(t) = 2 / (1 + e^-t) - 1 = tanh(t/2), slope 1/2 at 0
//   probit family: m(t) = 2 Phi(t) - 1,       slope 2/sqrt(2 pi) at 0
// (some statements of the probit slope drop the factor 2; the function itself
// forces 2/sqrt(2 pi), and that is the value tested). Both maps are odd,
// strictly increasing, and send the real line into (-1, 1).

namespace kappa {

enum class EmbeddingFamily { Logit, Probit };

struct EmbeddingMap {
    EmbeddingFamily family = EmbeddingFamily::Logit;
    std::function<double(double)> forward;
    double slopeAtZero = 0.0;
};

double m_logit(double t);
double m_probit(double t);

// tau = 2p - 1; rejects p outside [0, 1].
double tau_from_pairwise_prob(double p);

EmbeddingMap make_embedding(EmbeddingFamily family);

// Maps fitted linear predictors onto the correlation scale through the chosen
// family; the comparison surface for externally fitted paired-comparison models.
std::vector<double> kappa_surface(const std::vector<double>& linearPredictors,
                                  EmbeddingFamily family);

}  // namespace kappa
