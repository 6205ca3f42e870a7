#include "kappa/estimator.hpp"

#include <cmath>
#include <utility>

#include "kappa/errors.hpp"
#include "kappa/numeric.hpp"

namespace kappa {

double kappa_cov(const KernelMatrix& z) {
    std::size_t n = z.dim();
    KahanSum s;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
            if (k != l) s.add(z(k, l));
    return s.value() / (static_cast<double>(n) * static_cast<double>(n - 1));
}

KappaEstimate kappa_corr(const CentredScoreMatrix& kx, const CentredScoreMatrix& ky,
                         const char* nameX, const char* nameY) {
    if (kx.dim() != ky.dim()) throw InputError("kappa_corr: dimension mismatch");
    std::size_t n = kx.dim();
    double pairs = static_cast<double>(n) * static_cast<double>(n - 1);

    KahanSum num, sx, sy, g3, g4;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
            if (k == l) continue;
            double a = kx(k, l), b = ky(k, l);
            double z = a * b;
            num.add(z);
            sx.add(a * a);
            sy.add(b * b);
            g3.add(z * z * z);
            g4.add(z * z * z * z);
        }
    }
    if (sx.value() == 0.0) throw DegenerateMarginError(nameX);
    if (sy.value() == 0.0) throw DegenerateMarginError(nameY);

    KappaEstimate est;
    est.n = n;
    est.tauCov = num.value() / pairs;
    est.tauCorr = num.value() / std::sqrt(sx.value() * sy.value());
    est.sigmaX2 = sx.value() / pairs;
    est.sigmaY2 = sy.value() / pairs;
    est.gamma3 = g3.value() / pairs;
    est.gamma4 = g4.value() / pairs;
    return est;
}

KappaEstimate kappa_corr(const ObservationVector& x, const ObservationVector& y) {
    validate_observations(x, "x");
    validate_observations(y, "y");
    if (x.size() != y.size()) throw InputError("kappa_corr: margins differ in length");
    CentredScoreMatrix kx = centre(score_matrix(x));
    CentredScoreMatrix ky = centre(score_matrix(y));
    return kappa_corr(kx, ky);
}

std::pair<double, double> moments(const KernelMatrix& z) {
    std::size_t n = z.dim();
    double pairs = static_cast<double>(n) * static_cast<double>(n - 1);
    KahanSum g3, g4;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
            if (k == l) continue;
            double v = z(k, l);
            g3.add(v * v * v);
            g4.add(v * v * v * v);
        }
    }
    return {g3.value() / pairs, g4.value() / pairs};
}

HajekProjection hajek_terms(const ObservationVector& x, const ObservationVector& y) {
    validate_observations(x, "x");
    validate_observations(y, "y");
    if (x.size() != y.size()) throw InputError("hajek_terms: margins differ in length");
    if (x.size() < 3) throw InputError("hajek_terms: need at least 3 observations");

    CentredScoreMatrix kx = centre(score_matrix(x));
    CentredScoreMatrix ky = centre(score_matrix(y));
    std::size_t n = x.size();

    HajekProjection h;
    h.terms.resize(n);
    KahanSum total;
    for (std::size_t k = 0; k < n; ++k) {
        KahanSum row;
        for (std::size_t l = 0; l < n; ++l) {
            if (l == k) continue;
            row.add(kx(k, l) * ky(k, l));
        }
        h.terms[k] = row.value() / static_cast<double>(n - 1);
        total.add(h.terms[k]);
    }
    h.mean = total.value() / static_cast<double>(n);
    return h;
}

}  // namespace kappa
