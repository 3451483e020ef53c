#pragma once

#include <stdexcept>
#include <string>

namespace spinvqe {

// Thrown when a state stopped satisfying a runtime invariant (e.g. lost
// normalization before sampling).
class StateInvariantError : public std::runtime_error {
public:
    explicit StateInvariantError(const std::string& what)
        : std::runtime_error(what) {}
};

// Thrown when a problem size exceeds what a solver is built for.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& what)
        : std::runtime_error(what) {}
};

// Thrown by iterative eigensolvers that ran out of restarts. Carries the
// best estimate found so far.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best_estimate,
                     double residual)
        : std::runtime_error(what),
          best_estimate(best_estimate),
          residual(residual) {}

    double best_estimate;
    double residual;
};

// Thrown when the optimizer hits a non-finite cost value.
class OptimizerAbort : public std::runtime_error {
public:
    explicit OptimizerAbort(const std::string& what)
        : std::runtime_error(what) {}
};

}  // namespace spinvqe
