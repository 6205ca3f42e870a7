#include "kappa/embeddings.hpp"

#include <cmath>

#include "kappa/errors.hpp"
#include "kappa/numeric.hpp"

namespace kappa {

double m_logit(double t) {
    if (std::isnan(t)) throw InputError("m_logit: t must be finite");
    return std::tanh(0.5 * t);
}

double m_probit(double t) {
    if (std::isnan(t)) throw InputError("m_probit: t must be finite");
    return 2.0 * normal_cdf(t) - 1.0;
}

double tau_from_pairwise_prob(double p) {
    if (std::isnan(p) || p < 0.0 || p > 1.0) {
        throw InputError("tau_from_pairwise_prob: p must lie in [0, 1]");
    }
    return 2.0 * p - 1.0;
}

EmbeddingMap make_embedding(EmbeddingFamily family) {
    EmbeddingMap m;
    m.family = family;
    if (family == EmbeddingFamily::Logit) {
        m.forward = [](double t) { return m_logit(t); };
        m.slopeAtZero = 0.5;
    } else {
        m.forward = [](double t) { return m_probit(t); };
        m.slopeAtZero = 2.0 / std::sqrt(2.0 * 3.14159265358979323846);
    }
    return m;
}

std::vector<double> kappa_surface(const std::vector<double>& linearPredictors,
                                  EmbeddingFamily family) {
    EmbeddingMap m = make_embedding(family);
    std::vector<double> out;
    out.reserve(linearPredictors.size());
    for (double t : linearPredictors) out.push_back(m.forward(t));
    return out;
}

}  // namespace kappa
