#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "kappa/errors.hpp"
#include "kappa/matrix.hpp"
#include "kappa/scores.hpp"

// Pairwise-contrast regression with identity link: eta = (X_n - X_n')' theta
// on the open feasible set { theta : |eta| < 1 for every contrast }.
//
// The response enters through z = ktilde_y, the centred score of y for the
// pair. The fitted theta solves the estimating equations
//     sum w 2 eta/(1 - eta^2) dx  =  sum w z dx,
// which are the stationarity conditions of the strictly convex sample objective
//     f(theta) = sum w log(1/(1 - eta^2)) - sum w z eta
// (barrier part minus data term). [OP] objective below returns the barrier part
// alone; the solver minimizes f, whose gradient is the estimating-equation
// residual and whose curvature is the barrier Hessian
//     H(theta) = sum 2 w (1 + eta^2)/(1 - eta^2)^2 dx dx',
// positive definite on the span of the contrasts.
//
// Contrasts are stored unordered (i < j) with the two ordered weights summed
// and z antisymmetrised, z = (z_ij - z_ji)/2; this reproduces the ordered-pair
// objective, gradient, and Hessian exactly (eta is odd and log(1-eta^2) even in
// the contrast sign) at half the work. With a tie-free response the stored z
// equals ktilde_y[i][j] itself.

namespace kappa {

class FeasibilityError : public NumericalError {
public:
    FeasibilityError(std::size_t a, std::size_t b, double eta)
        : NumericalError("infeasible theta: |eta| >= 1 at pair (" + std::to_string(a) + ", " +
                         std::to_string(b) + "), eta = " + std::to_string(eta)),
          a_(a),
          b_(b) {}
    std::size_t pairA() const { return a_; }
    std::size_t pairB() const { return b_; }

private:
    std::size_t a_, b_;
};

struct ContrastDesign {
    std::size_t n = 0;  // observations
    std::size_t p = 0;  // predictors
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (i, j), i < j
    std::vector<double> deltaX;  // pairs.size() x p, row-major: X_i - X_j
    std::vector<double> z;       // antisymmetrised response score per pair
    std::vector<double> weight;  // total weight of the unordered pair (>= 0)
    bool fullRank = false;       // deltaX rows span all of R^p
    std::size_t rank = 0;

    const double* delta(std::size_t c) const { return deltaX.data() + c * p; }
};

// X is row-major N x P. Optional weights: one entry per unordered pair in
// lexicographic (i < j) order, each the total (both orders summed) weight of
// that pair; default uniform 2/(N(N-1)).
ContrastDesign build_design(const std::vector<double>& X, std::size_t n, std::size_t p,
                            const ObservationVector& y,
                            const std::vector<double>& weights = {});

// Barrier value sum w log(1/(1 - eta^2)) >= 0. Throws FeasibilityError with
// the violating pair when |eta| >= 1.
double objective(const ContrastDesign& d, const std::vector<double>& theta);

// Barrier gradient sum 2 w eta/(1 - eta^2) dx.
std::vector<double> gradient(const ContrastDesign& d, const std::vector<double>& theta);

// Barrier curvature sum 2 w (1 + eta^2)/(1 - eta^2)^2 dx dx' (symmetric P x P).
SquareMatrix<double> hessian(const ContrastDesign& d, const std::vector<double>& theta);

// Left-hand minus right-hand side of the estimating equations. scaleByC
// divides the data side by c (the convention in which 2 eta/(1-eta^2) = z/c).
std::vector<double> estimating_equation_residual(const ContrastDesign& d,
                                                 const std::vector<double>& theta,
                                                 bool scaleByC = false, double c = 0.4456);

struct FitOptions {
    double tol = 1e-8;       // on the estimating-equation residual norm
    std::size_t maxIter = 100;
    std::vector<double> initialTheta;  // empty = origin (always feasible)
};

struct IterationRecord {
    double objective = 0.0;  // sample objective f
    double gradientNorm = 0.0;
    double stepSize = 0.0;
};

struct RegressionFit {
    std::vector<double> theta;
    double objective = 0.0;     // barrier value at theta
    double fitObjective = 0.0;  // sample objective f at theta
    double gradientNorm = 0.0;  // estimating-equation residual norm at theta
    double residualNorm = 0.0;  // same quantity, kept under its other name
    SquareMatrix<double> hessian;
    std::size_t iterations = 0;
    bool converged = false;
    double feasibilityMargin = 0.0;  // 1 - max |eta| at theta
    bool spanRestricted = false;     // rank-deficient design, minimum-norm steps
    std::vector<IterationRecord> trace;
};

// Damped Newton: direction solves H d = -grad f; step limited by the
// fraction-to-boundary rule (0.99 of the largest feasible step), then Armijo
// backtracking (constant 1e-4). Every accepted iterate is strictly feasible.
RegressionFit fit(const ContrastDesign& d, const FitOptions& options = {});

}  // namespace kappa
