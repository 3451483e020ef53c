#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "spinvqe/ansatz.hpp"
#include "spinvqe/expectation.hpp"

namespace spinvqe {

enum class OptMethod { NelderMead, Spsa, GradientDescent };

struct OptimizerConfig {
    OptMethod method = OptMethod::NelderMead;
    int max_iters = 4000;
    double ftol = 1e-6;
    std::uint64_t seed = 0;
    // no-improvement window for the tolerance stop; 0 picks a
    // method-appropriate default (50 deterministic, max_iters/4 for SPSA)
    int stall_window = 0;

    // Nelder-Mead
    double nm_simplex_step = 0.25;

    // SPSA: steps of scheduled length along the estimated descent direction
    double spsa_step0 = 0.4;
    double spsa_c = 0.2;
    double spsa_alpha = 0.602;
    double spsa_gamma = 0.101;
    double spsa_stability_frac = 0.1;  // A = frac * max_iters
    double spsa_avg_frac = 0.2;        // tail fraction averaged into result

    // gradient descent (L-BFGS)
    int lbfgs_memory = 10;
    double gd_gtol = 1e-10;
};

struct IterationRecord {
    int iter = 0;
    AnsatzParams params;
    EnergyEstimate energy;
    double best_energy = 0.0;  // running minimum of recorded energies
    double cumulative_s = 0.0;
};

enum class StopReason { Tolerance, MaxIters, Stall };

struct OptimizationTrace {
    std::vector<IterationRecord> iterations;
    bool converged = false;
    StopReason stop_reason = StopReason::MaxIters;
    long long cost_evaluations = 0;
};

struct MinimizeResult {
    AnsatzParams best_params;
    EnergyEstimate best_energy;
    OptimizationTrace trace;
};

using CostHandle = std::function<EnergyEstimate(const AnsatzParams&)>;
using GradientHandle =
    std::function<std::vector<double>(const AnsatzParams&)>;

// Minimizes the cost from the given start. The gradient handle is required
// for GradientDescent and ignored otherwise. Throws OptimizerAbort on a
// non-finite cost value.
MinimizeResult minimize(const OptimizerConfig& config, const CostHandle& cost,
                        const AnsatzParams& initial,
                        const GradientHandle& gradient = nullptr);

// Exact dF/d(theta) of the energy <psi|H_T|psi> for the XXZ chain, computed
// by reverse sweep: undo one layer at a time and take
// 2 Im <lambda|H_half|phi> with lambda = (suffix circuit)^dag H psi.
// Output order matches AnsatzParams::flatten().
std::vector<double> exact_energy_gradient(const AnsatzParams& params,
                                          double delta, int L);

}  // namespace spinvqe
