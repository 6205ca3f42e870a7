#include "kappa/regression.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "kappa/numeric.hpp"

namespace kappa {

namespace {

// Rank of the unweighted contrast Gram matrix; tolerance relative to the
// largest eigenvalue.
std::size_t gram_rank(const ContrastDesign& d) {
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(d.p, d.p);
    for (std::size_t c = 0; c < d.pairs.size(); ++c) {
        Eigen::Map<const Eigen::VectorXd> dx(d.delta(c), d.p);
        g.selfadjointView<Eigen::Lower>().rankUpdate(dx);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g);
    double cut = eig.eigenvalues().maxCoeff() * static_cast<double>(d.p) * 1e-12;
    if (cut <= 0.0) return 0;
    return static_cast<std::size_t>((eig.eigenvalues().array() > cut).count());
}

std::vector<double> etas(const ContrastDesign& d, const std::vector<double>& theta,
                         bool enforceFeasible) {
    std::vector<double> eta(d.pairs.size(), 0.0);
    for (std::size_t c = 0; c < d.pairs.size(); ++c) {
        const double* dx = d.delta(c);
        double e = 0.0;
        for (std::size_t j = 0; j < d.p; ++j) e += dx[j] * theta[j];
        if (enforceFeasible && std::fabs(e) >= 1.0) {
            throw FeasibilityError(d.pairs[c].first, d.pairs[c].second, e);
        }
        eta[c] = e;
    }
    return eta;
}

void check_theta(const ContrastDesign& d, const std::vector<double>& theta, const char* where) {
    if (theta.size() != d.p) {
        throw InputError(std::string(where) + ": theta has length " +
                         std::to_string(theta.size()) + ", expected " + std::to_string(d.p));
    }
    for (double v : theta) {
        if (!std::isfinite(v)) throw InputError(std::string(where) + ": non-finite theta");
    }
}

// Sample objective f = barrier - data term, from precomputed etas.
double sample_objective(const ContrastDesign& d, const std::vector<double>& eta) {
    KahanSum f;
    for (std::size_t c = 0; c < eta.size(); ++c) {
        f.add(d.weight[c] * (-std::log1p(-eta[c] * eta[c]) - d.z[c] * eta[c]));
    }
    return f.value();
}

// Gradient of f: sum w (2 eta/(1-eta^2) - z) dx.
void sample_gradient(const ContrastDesign& d, const std::vector<double>& eta,
                     std::vector<double>& g) {
    std::fill(g.begin(), g.end(), 0.0);
    for (std::size_t c = 0; c < eta.size(); ++c) {
        double e = eta[c];
        double coef = d.weight[c] * (2.0 * e / (1.0 - e * e) - d.z[c]);
        const double* dx = d.delta(c);
        for (std::size_t j = 0; j < d.p; ++j) g[j] += coef * dx[j];
    }
}

Eigen::MatrixXd hessian_at(const ContrastDesign& d, const std::vector<double>& eta) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d.p, d.p);
    for (std::size_t c = 0; c < eta.size(); ++c) {
        double e = eta[c];
        double den = 1.0 - e * e;
        double coef = 2.0 * d.weight[c] * (1.0 + e * e) / (den * den);
        if (coef == 0.0) continue;
        Eigen::Map<const Eigen::VectorXd> dx(d.delta(c), d.p);
        h.selfadjointView<Eigen::Lower>().rankUpdate(dx, coef);
    }
    return h.selfadjointView<Eigen::Lower>();
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

ContrastDesign build_design(const std::vector<double>& X, std::size_t n, std::size_t p,
                            const ObservationVector& y, const std::vector<double>& weights) {
    if (n < 2) throw InputError("build_design: need at least 2 observations");
    if (p < 1) throw InputError("build_design: need at least 1 predictor");
    if (X.size() != n * p) throw InputError("build_design: X size does not match n x p");
    for (double v : X) {
        if (!std::isfinite(v)) throw InputError("build_design: non-finite covariate");
    }
    validate_observations(y, "y");
    if (y.size() != n) throw InputError("build_design: y length does not match X rows");

    std::size_t npairs = n * (n - 1) / 2;
    if (!weights.empty() && weights.size() != npairs) {
        throw InputError("build_design: weights must have one entry per unordered pair");
    }
    for (double w : weights) {
        if (!(w >= 0.0)) throw InputError("build_design: weights must be >= 0");
    }

    CentredScoreMatrix ky = centre(score_matrix(y));
    double defaultWeight = 2.0 / (static_cast<double>(n) * static_cast<double>(n - 1));

    ContrastDesign d;
    d.n = n;
    d.p = p;
    d.pairs.reserve(npairs);
    d.deltaX.reserve(npairs * p);
    d.z.reserve(npairs);
    d.weight.reserve(npairs);
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j, ++c) {
            d.pairs.emplace_back(i, j);
            for (std::size_t k = 0; k < p; ++k) d.deltaX.push_back(X[i * p + k] - X[j * p + k]);
            d.z.push_back(0.5 * (ky(i, j) - ky(j, i)));
            d.weight.push_back(weights.empty() ? defaultWeight : weights[c]);
        }
    }
    d.rank = gram_rank(d);
    d.fullRank = d.rank == p;
    return d;
}

double objective(const ContrastDesign& d, const std::vector<double>& theta) {
    check_theta(d, theta, "objective");
    std::vector<double> eta = etas(d, theta, true);
    KahanSum s;
    for (std::size_t c = 0; c < eta.size(); ++c) {
        s.add(-d.weight[c] * std::log1p(-eta[c] * eta[c]));
    }
    return s.value();
}

std::vector<double> gradient(const ContrastDesign& d, const std::vector<double>& theta) {
    check_theta(d, theta, "gradient");
    std::vector<double> eta = etas(d, theta, true);
    std::vector<double> g(d.p, 0.0);
    for (std::size_t c = 0; c < eta.size(); ++c) {
        double e = eta[c];
        double coef = 2.0 * d.weight[c] * e / (1.0 - e * e);
        const double* dx = d.delta(c);
        for (std::size_t j = 0; j < d.p; ++j) g[j] += coef * dx[j];
    }
    return g;
}

SquareMatrix<double> hessian(const ContrastDesign& d, const std::vector<double>& theta) {
    check_theta(d, theta, "hessian");
    std::vector<double> eta = etas(d, theta, true);
    Eigen::MatrixXd h = hessian_at(d, eta);
    SquareMatrix<double> out(d.p, 0.0);
    for (std::size_t i = 0; i < d.p; ++i)
        for (std::size_t j = 0; j < d.p; ++j) out(i, j) = h(i, j);
    return out;
}

std::vector<double> estimating_equation_residual(const ContrastDesign& d,
                                                 const std::vector<double>& theta,
                                                 bool scaleByC, double c) {
    check_theta(d, theta, "estimating_equation_residual");
    if (scaleByC && !(c > 0.0)) throw InputError("estimating_equation_residual: c must be > 0");
    std::vector<double> eta = etas(d, theta, true);
    std::vector<double> r(d.p, 0.0);
    double zscale = scaleByC ? 1.0 / c : 1.0;
    for (std::size_t k = 0; k < eta.size(); ++k) {
        double e = eta[k];
        double coef = d.weight[k] * (2.0 * e / (1.0 - e * e) - zscale * d.z[k]);
        const double* dx = d.delta(k);
        for (std::size_t j = 0; j < d.p; ++j) r[j] += coef * dx[j];
    }
    return r;
}

RegressionFit fit(const ContrastDesign& d, const FitOptions& options) {
    std::vector<double> theta = options.initialTheta;
    if (theta.empty()) theta.assign(d.p, 0.0);
    check_theta(d, theta, "fit");
    if (!(options.tol > 0.0)) throw InputError("fit: tol must be > 0");

    std::vector<double> eta = etas(d, theta, true);  // initial point must be feasible
    std::vector<double> g(d.p, 0.0);
    RegressionFit out;
    out.spanRestricted = !d.fullRank;

    double f = sample_objective(d, eta);
    sample_gradient(d, eta, g);
    double gnorm = norm2(g);

    std::size_t iter = 0;
    for (; iter < options.maxIter && gnorm > options.tol; ++iter) {
        Eigen::MatrixXd h = hessian_at(d, eta);
        Eigen::Map<const Eigen::VectorXd> gv(g.data(), d.p);

        // Minimum-norm Newton direction; eigendecomposition keeps the
        // rank-deficient case (flat directions of the design) well defined.
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
        double cut = eig.eigenvalues().maxCoeff() * static_cast<double>(d.p) * 1e-14;
        Eigen::VectorXd inv = eig.eigenvalues();
        for (Eigen::Index i = 0; i < inv.size(); ++i) {
            inv[i] = inv[i] > cut && inv[i] > 0.0 ? 1.0 / inv[i] : 0.0;
        }
        Eigen::VectorXd dir =
            -(eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose() * gv);

        double slope = dir.dot(gv);  // directional derivative of f
        if (slope >= 0.0) break;     // gradient orthogonal to the curvature span

        // Largest step keeping every |eta| < 1, shortened to 0.99 of it.
        double alphaBound = std::numeric_limits<double>::infinity();
        std::vector<double> deta(d.pairs.size(), 0.0);
        for (std::size_t c = 0; c < d.pairs.size(); ++c) {
            const double* dx = d.delta(c);
            double de = 0.0;
            for (std::size_t j = 0; j < d.p; ++j) de += dx[j] * dir[j];
            deta[c] = de;
            if (de > 0.0) {
                alphaBound = std::min(alphaBound, (1.0 - eta[c]) / de);
            } else if (de < 0.0) {
                alphaBound = std::min(alphaBound, (1.0 + eta[c]) / -de);
            }
        }
        double alpha = std::min(1.0, 0.99 * alphaBound);

        // Armijo backtracking on f.
        std::vector<double> thetaTrial(d.p), etaTrial(d.pairs.size());
        double fTrial = f;
        bool accepted = false;
        for (int halving = 0; halving < 60; ++halving) {
            for (std::size_t j = 0; j < d.p; ++j) thetaTrial[j] = theta[j] + alpha * dir[j];
            bool feasible = true;
            for (std::size_t c = 0; c < d.pairs.size(); ++c) {
                etaTrial[c] = eta[c] + alpha * deta[c];
                if (std::fabs(etaTrial[c]) >= 1.0) {
                    feasible = false;
                    break;
                }
            }
            if (feasible) {
                fTrial = sample_objective(d, etaTrial);
                if (fTrial <= f + 1e-4 * alpha * slope) {
                    accepted = true;
                    break;
                }
            }
            alpha *= 0.5;
        }
        if (!accepted) break;

        theta.swap(thetaTrial);
        eta.swap(etaTrial);
        f = fTrial;
        sample_gradient(d, eta, g);
        gnorm = norm2(g);
        out.trace.push_back({f, gnorm, alpha});
    }

    out.theta = theta;
    out.iterations = iter;
    out.converged = gnorm <= options.tol;
    out.fitObjective = f;
    out.gradientNorm = gnorm;
    out.residualNorm = gnorm;

    KahanSum barrier;
    double maxAbsEta = 0.0;
    for (std::size_t c = 0; c < eta.size(); ++c) {
        barrier.add(-d.weight[c] * std::log1p(-eta[c] * eta[c]));
        maxAbsEta = std::max(maxAbsEta, std::fabs(eta[c]));
    }
    out.objective = barrier.value();
    out.feasibilityMargin = 1.0 - maxAbsEta;

    Eigen::MatrixXd h = hessian_at(d, eta);
    out.hessian = SquareMatrix<double>(d.p, 0.0);
    for (std::size_t i = 0; i < d.p; ++i)
        for (std::size_t j = 0; j < d.p; ++j) out.hessian(i, j) = h(i, j);
    return out;
}

}  // namespace kappa
