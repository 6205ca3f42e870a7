#include "kappa/multivariate.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <utility>

#include "kappa/errors.hpp"

namespace kappa {

namespace {

constexpr double kBoundaryCut = 1.0 - 1e-12;

TestResult boundary_result(TestFamily family, double tauHat, std::size_t n) {
    TestResult r;
    r.family = family;
    r.tauHat = tauHat;
    r.n = n;
    r.statistic = std::numeric_limits<double>::max();
    r.pValue = 0.0;
    r.boundary = true;
    return r;
}

}  // namespace

KappaMatrix kappa_matrix(const std::vector<ObservationVector>& columns,
                         const std::vector<std::string>& names) {
    std::size_t p = columns.size();
    if (p < 2) throw InputError("kappa_matrix: need at least 2 columns");
    std::size_t n = columns[0].size();
    auto column_label = [&](std::size_t i) {
        return i < names.size() ? names[i] : "column " + std::to_string(i);
    };
    for (std::size_t i = 0; i < p; ++i) {
        if (columns[i].size() != n) {
            throw InputError("kappa_matrix: column length mismatch at " + column_label(i));
        }
        validate_observations(columns[i], column_label(i).c_str());
    }

    // Per-column cache: centred score matrices computed once.
    std::vector<CentredScoreMatrix> centred;
    centred.reserve(p);
    for (std::size_t i = 0; i < p; ++i) centred.push_back(centre(score_matrix(columns[i])));

    KappaMatrix m;
    m.dim = p;
    m.n = n;
    m.entries = SquareMatrix<double>(p, 0.0);
    m.pairEstimates.resize(p * (p - 1) / 2);
    for (std::size_t i = 0; i < p; ++i) m.entries(i, i) = 1.0;

    for (std::size_t a = 0; a < p; ++a) {
        for (std::size_t b = a + 1; b < p; ++b) {
            KappaEstimate est = kappa_corr(centred[a], centred[b], column_label(a).c_str(),
                                           column_label(b).c_str());
            m.entries(a, b) = est.tauCorr;
            m.entries(b, a) = est.tauCorr;
            m.pairEstimates[pair_index(a, b, p)] = est;
        }
    }

    Eigen::MatrixXd s(p, p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) s(i, j) = m.entries(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s, Eigen::EigenvaluesOnly);
    m.minEigenvalue = eig.eigenvalues().minCoeff();
    m.psd = m.minEigenvalue >= -1e-10 * std::max(1.0, eig.eigenvalues().maxCoeff());
    return m;
}

std::vector<PairTest> matrix_tests(const KappaMatrix& m, std::size_t n,
                                   const VarianceModel& vm) {
    std::vector<PairTest> out;
    out.reserve(m.dim * (m.dim - 1) / 2);
    for (std::size_t a = 0; a < m.dim; ++a) {
        for (std::size_t b = a + 1; b < m.dim; ++b) {
            PairTest t;
            t.a = a;
            t.b = b;
            t.tauHat = m.entries(a, b);
            if (std::fabs(t.tauHat) >= kBoundaryCut) {
                t.boundary = true;
                t.wald = boundary_result(TestFamily::Wald, t.tauHat, n);
                t.lrt = boundary_result(TestFamily::LRT, t.tauHat, n);
            } else {
                t.wald = wald_test(t.tauHat, n, vm);
                t.lrt = lr_test(t.tauHat, n);
            }
            out.push_back(t);
        }
    }
    return out;
}

double joint_quasi_loglik(const KappaMatrix& m, std::size_t n) {
    double total = 0.0;
    for (std::size_t a = 0; a < m.dim; ++a) {
        for (std::size_t b = a + 1; b < m.dim; ++b) {
            double tau = m.entries(a, b);
            if (std::fabs(tau) >= 1.0) return std::numeric_limits<double>::infinity();
            total -= static_cast<double>(n) * std::log1p(-tau * tau);
        }
    }
    return total;
}

}  // namespace kappa
