#pragma once

#include <stdexcept>
#include <string>

namespace kappa {

// Invalid caller input: bad dimensions, non-finite values, unknown columns,
// malformed files. CLI maps these to exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure: degenerate margins, infeasible points, non-convergence.
// CLI maps these to exit code 3.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// A margin whose centred scores are identically zero (constant vector);
// correlation is undefined for it. Carries the margin label.
class DegenerateMarginError : public NumericalError {
public:
    explicit DegenerateMarginError(const std::string& margin)
        : NumericalError("degenerate margin '" + margin +
                         "': all centred scores are zero (constant values)"),
          margin_(margin) {}
    const std::string& margin() const { return margin_; }

private:
    std::string margin_;
};

}  // namespace kappa
