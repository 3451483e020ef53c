#include "spinvqe/ansatz.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace spinvqe {

std::vector<double> AnsatzParams::flatten() const {
    std::vector<double> x;
    x.reserve(2 * gammas.size());
    for (std::size_t k = 0; k < gammas.size(); ++k) {
        x.push_back(gammas[k]);
        x.push_back(betas[k]);
    }
    return x;
}

AnsatzParams AnsatzParams::unflatten(const std::vector<double>& x) {
    if (x.size() % 2 != 0 || x.empty()) {
        throw std::invalid_argument("unflatten: need an even-length vector");
    }
    AnsatzParams p;
    p.gammas.reserve(x.size() / 2);
    p.betas.reserve(x.size() / 2);
    for (std::size_t k = 0; k < x.size(); k += 2) {
        p.gammas.push_back(x[k]);
        p.betas.push_back(x[k + 1]);
    }
    return p;
}

AnsatzParams init_params(int p, InitStrategy strategy, std::uint64_t seed) {
    if (p < 1) {
        throw std::invalid_argument("init_params: p must be >= 1");
    }
    AnsatzParams out;
    out.gammas.assign(p, 0.0);
    out.betas.assign(p, 0.0);
    if (strategy == InitStrategy::UniformRandom) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unif(-0.1, 0.1);
        for (auto& g : out.gammas) g = unif(rng);
        for (auto& b : out.betas) b = unif(rng);
    }
    return out;
}

TwoQubitGate bond_gate(double theta, double delta) {
    if (!std::isfinite(theta) || !std::isfinite(delta)) {
        throw std::invalid_argument("bond_gate: non-finite input");
    }
    const cplx phase_d = std::polar(1.0, -theta * delta / 4.0);
    const cplx phase_t = std::polar(1.0, -theta * (2.0 - delta) / 4.0);
    const cplx phase_s = std::polar(1.0, theta * (2.0 + delta) / 4.0);
    TwoQubitGate g;
    g.m[0] = phase_d;
    g.m[15] = phase_d;
    g.m[5] = (phase_t + phase_s) / 2.0;
    g.m[10] = (phase_t + phase_s) / 2.0;
    g.m[6] = (phase_t - phase_s) / 2.0;
    g.m[9] = (phase_t - phase_s) / 2.0;
    return g;
}

void apply_bond_layer(StateVector& psi, double theta, double delta,
                      int parity) {
    const int L = psi.n_qubits();
    const TwoQubitGate g = bond_gate(theta, delta);
    // parity 0: bonds on sites (1,2),(3,4),... -> qubits (0,1),(2,3),...
    // parity 1: bonds on sites (2,3),(4,5),... -> qubits (1,2),(3,4),...
    for (int q = parity == 0 ? 0 : 1; q + 1 < L; q += 2) {
        psi.apply_two_qubit(g, q, q + 1);
    }
}

StateVector apply_ansatz(const AnsatzParams& params, double delta, int L) {
    if (params.p() < 1 || params.betas.size() != params.gammas.size()) {
        throw std::invalid_argument("apply_ansatz: malformed parameters");
    }
    StateVector psi = StateVector::bell_pairs(L);
    for (int k = 0; k < params.p(); ++k) {
        apply_bond_layer(psi, params.gammas[static_cast<std::size_t>(k)],
                         delta, 0);
        apply_bond_layer(psi, params.betas[static_cast<std::size_t>(k)],
                         delta, 1);
    }
    return psi;
}

nlohmann::json params_to_json(const AnsatzParams& params, double delta,
                              std::uint64_t seed) {
    return nlohmann::json{
        {"p", params.p()},       {"gammas", params.gammas},
        {"betas", params.betas}, {"delta", delta},
        {"seed", seed},
    };
}

AnsatzParams params_from_json(const nlohmann::json& j) {
    AnsatzParams p;
    p.gammas = j.at("gammas").get<std::vector<double>>();
    p.betas = j.at("betas").get<std::vector<double>>();
    if (p.gammas.size() != p.betas.size() ||
        static_cast<int>(p.gammas.size()) != j.at("p").get<int>()) {
        throw std::invalid_argument("params_from_json: inconsistent sizes");
    }
    return p;
}

}  // namespace spinvqe
