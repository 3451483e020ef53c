#pragma once

#include <cstdint>
#include <functional>

#include "spinvqe/ansatz.hpp"
#include "spinvqe/hamiltonian.hpp"
#include "spinvqe/statevector.hpp"

namespace spinvqe {

struct EnergyEstimate {
    double value = 0.0;
    double std_error = 0.0;    // 0 on the exact path
    long long shots_used = 0;  // 0 on the exact path
    double wall_time_s = 0.0;
};

struct ShotBudget {
    int shots_per_group = 1024;
    std::uint64_t seed = 0;
};

enum class EstimatorMode { Exact, Sampled };

// Re<psi|H|psi> via the matrix-free matvec.
EnergyEstimate exact_energy(const StateVector& psi,
                            const PauliHamiltonian& h);

// Rotates a copy of the state into each axis group's eigenbasis
// (X: Hadamard per qubit; Y: S-dagger then Hadamard; Z: nothing), draws
// shots_per_group bitstrings per group and averages the +-coeff eigenvalues
// per term. Groups whose coefficients are all zero are skipped.
EnergyEstimate sampled_energy(const StateVector& psi,
                              const PauliHamiltonian& h,
                              const ShotBudget& budget);

// Deterministic per-stream seed derivation (splitmix64 over seed ^ stream).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// F(gammas, betas) = <psi(params)|H_T|psi(params)> with a per-call derived
// sampling seed so repeated evaluation sequences are reproducible.
class CostFunction {
public:
    CostFunction(PauliHamiltonian h, double delta, int n_sites,
                 EstimatorMode mode, ShotBudget budget = {});

    EnergyEstimate operator()(const AnsatzParams& params);

    // prepares the state once and runs the chosen estimator, reporting the
    // split between the two stages
    struct TimedEstimate {
        EnergyEstimate estimate;
        double state_prep_s = 0.0;
        double estimate_s = 0.0;
    };
    TimedEstimate evaluate_timed(const AnsatzParams& params);

    long long evaluations() const { return evals_; }
    EstimatorMode mode() const { return mode_; }
    const PauliHamiltonian& hamiltonian() const { return h_; }
    double delta() const { return delta_; }
    int n_sites() const { return n_sites_; }
    void reset_eval_counter(long long value = 0) { evals_ = value; }

private:
    PauliHamiltonian h_;
    double delta_;
    int n_sites_;
    EstimatorMode mode_;
    ShotBudget budget_;
    long long evals_ = 0;
};

}  // namespace spinvqe
