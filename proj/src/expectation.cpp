#include "spinvqe/expectation.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "spinvqe/errors.hpp"

namespace spinvqe {

namespace {

double now_s() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

const OneQubitGate kHadamard{{cplx{1.0 / std::numbers::sqrt2, 0.0},
                              cplx{1.0 / std::numbers::sqrt2, 0.0},
                              cplx{1.0 / std::numbers::sqrt2, 0.0},
                              cplx{-1.0 / std::numbers::sqrt2, 0.0}}};

const OneQubitGate kSDagger{{cplx{1.0, 0.0}, cplx{0.0, 0.0}, cplx{0.0, 0.0},
                             cplx{0.0, -1.0}}};

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

EnergyEstimate exact_energy(const StateVector& psi,
                            const PauliHamiltonian& h) {
    const double t0 = now_s();
    const StateVector hv = apply_hamiltonian(h, psi);
    EnergyEstimate e;
    e.value = psi.inner(hv).real();
    e.wall_time_s = now_s() - t0;
    return e;
}

EnergyEstimate sampled_energy(const StateVector& psi,
                              const PauliHamiltonian& h,
                              const ShotBudget& budget) {
    if (budget.shots_per_group < 1) {
        throw std::invalid_argument("sampled_energy: shots must be >= 1");
    }
    if (std::abs(psi.norm() - 1.0) > 1e-6) {
        throw StateInvariantError("sampled_energy: state is not normalized");
    }
    const double t0 = now_s();
    const MeasurementGroups groups = measurement_groups(h);
    const int m = budget.shots_per_group;
    EnergyEstimate e;
    double var_of_mean = 0.0;
    for (int gi = 0; gi < 3; ++gi) {
        const auto& terms = groups.groups[static_cast<std::size_t>(gi)];
        bool live = false;
        for (const auto& t : terms) live = live || t.coeff != 0.0;
        if (!live) continue;

        StateVector rotated = psi;
        const Axis axis = static_cast<Axis>(gi);
        if (axis == Axis::X) {
            for (int q = 0; q < rotated.n_qubits(); ++q) {
                rotated.apply_one_qubit(kHadamard, q);
            }
        } else if (axis == Axis::Y) {
            for (int q = 0; q < rotated.n_qubits(); ++q) {
                rotated.apply_one_qubit(kSDagger, q);
            }
            for (int q = 0; q < rotated.n_qubits(); ++q) {
                rotated.apply_one_qubit(kHadamard, q);
            }
        }
        const auto shots = rotated.sample_bitstrings(
            m, derive_seed(budget.seed, static_cast<std::uint64_t>(gi)));

        // per-shot group value: sum over terms of coeff * (+-1)(+-1)
        double sum = 0.0;
        double sumsq = 0.0;
        for (const auto s : shots) {
            double v = 0.0;
            for (const auto& t : terms) {
                const int ba = static_cast<int>(
                    (s >> (t.site_a - 1)) & 1ULL);
                const int bb = static_cast<int>(
                    (s >> (t.site_b - 1)) & 1ULL);
                v += (ba == bb ? t.coeff : -t.coeff);
            }
            sum += v;
            sumsq += v * v;
        }
        const double mean = sum / m;
        e.value += mean;
        e.shots_used += m;
        if (m > 1) {
            const double var = (sumsq - m * mean * mean) / (m - 1);
            var_of_mean += std::max(var, 0.0) / m;
        }
    }
    e.std_error = std::sqrt(var_of_mean);
    e.wall_time_s = now_s() - t0;
    return e;
}

CostFunction::CostFunction(PauliHamiltonian h, double delta, int n_sites,
                           EstimatorMode mode, ShotBudget budget)
    : h_(std::move(h)),
      delta_(delta),
      n_sites_(n_sites),
      mode_(mode),
      budget_(budget) {}

CostFunction::TimedEstimate CostFunction::evaluate_timed(
    const AnsatzParams& params) {
    TimedEstimate out;
    const double t0 = now_s();
    const StateVector psi = apply_ansatz(params, delta_, n_sites_);
    out.state_prep_s = now_s() - t0;
    if (mode_ == EstimatorMode::Exact) {
        out.estimate = exact_energy(psi, h_);
    } else {
        ShotBudget b = budget_;
        b.seed = derive_seed(budget_.seed,
                             static_cast<std::uint64_t>(evals_) + 1000);
        out.estimate = sampled_energy(psi, h_, b);
    }
    out.estimate_s = out.estimate.wall_time_s;
    out.estimate.wall_time_s = now_s() - t0;
    ++evals_;
    return out;
}

EnergyEstimate CostFunction::operator()(const AnsatzParams& params) {
    return evaluate_timed(params).estimate;
}

}  // namespace spinvqe
