#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "spinvqe/statevector.hpp"

namespace spinvqe {

// Layer angles of the alternating circuit, one (gamma, beta) pair per level.
struct AnsatzParams {
    std::vector<double> gammas;
    std::vector<double> betas;

    int p() const { return static_cast<int>(gammas.size()); }

    // Flat view in application order (gamma_1, beta_1, ..., gamma_p, beta_p).
    std::vector<double> flatten() const;
    static AnsatzParams unflatten(const std::vector<double>& x);
};

enum class InitStrategy { Zeros, UniformRandom };

// Zeros, or each angle uniform in [-0.1, 0.1] from the seeded generator.
AnsatzParams init_params(int p, InitStrategy strategy, std::uint64_t seed = 0);

// exp(-i theta (SxSx + SySy + delta SzSz)) on one bond, in closed form:
// |00>,|11> pick up e^{-i theta delta/4}, the triplet component
// e^{-i theta (2-delta)/4} and the singlet e^{+i theta (2+delta)/4}.
TwoQubitGate bond_gate(double theta, double delta);

// Prepares |psi(gammas, betas)> on L qubits: Bell-pair start, then per level
// the H2 layer (bonds (1,2),(3,4),...) with gamma_k followed by the H1 layer
// (bonds (2,3),(4,5),...) with beta_k. L must be even.
StateVector apply_ansatz(const AnsatzParams& params, double delta, int L);

// Applies one bond layer in place; parity 0 = H2 bonds, 1 = H1 bonds.
void apply_bond_layer(StateVector& psi, double theta, double delta,
                      int parity);

nlohmann::json params_to_json(const AnsatzParams& params, double delta,
                              std::uint64_t seed);
AnsatzParams params_from_json(const nlohmann::json& j);

}  // namespace spinvqe
