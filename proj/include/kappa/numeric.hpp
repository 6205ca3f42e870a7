#pragma once

#include <cmath>
#include <cstddef>

#include "kappa/errors.hpp"

namespace kappa {

// Compensated (Kahan) accumulator. Reductions over O(N^2) kernel entries and
// over Monte Carlo replicates go through this so results do not depend on
// summation order beyond the documented traversal.
class KahanSum {
public:
    void add(double v) {
        double y = v - comp_;
        double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Standard normal CDF via the complementary error function.
// |error| < 1e-15 relative over the double range, well inside the 1e-10 target.
inline double normal_cdf(double t) {
    return 0.5 * std::erfc(-t / std::sqrt(2.0));
}

// Standard normal density.
inline double normal_pdf(double t) {
    static const double inv_sqrt_2pi = 0.3989422804014326779;
    return inv_sqrt_2pi * std::exp(-0.5 * t * t);
}

// Survival function of chi-square with one degree of freedom:
// P(X > x) = 2(1 - Phi(sqrt(x))) = erfc(sqrt(x/2)).
inline double chi2_sf(double x) {
    if (std::isnan(x) || x < 0.0) throw InputError("chi2_sf: x must be >= 0");
    return std::erfc(std::sqrt(0.5 * x));
}

}  // namespace kappa
