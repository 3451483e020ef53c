#include "spinvqe/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace spinvqe {

namespace {

PauliHamiltonian chain(int n_sites, double jx, double jy, double jz,
                       Boundary boundary, std::string model) {
    if (n_sites < 2) {
        throw std::invalid_argument("chain: need at least 2 sites");
    }
    if (!std::isfinite(jx) || !std::isfinite(jy) || !std::isfinite(jz)) {
        throw std::invalid_argument("chain: non-finite coupling");
    }
    PauliHamiltonian h;
    h.n_sites = n_sites;
    h.boundary = boundary;
    h.couplings = {jx, jy, jz};
    h.model = std::move(model);
    const int bonds = boundary == Boundary::Open ? n_sites - 1 : n_sites;
    h.terms.reserve(3 * static_cast<std::size_t>(bonds));
    for (int i = 1; i <= bonds; ++i) {
        const int a = i;
        const int b = i == n_sites ? 1 : i + 1;
        // spin operators are sigma/2, so each S.S summand carries J/4
        h.terms.push_back({jx / 4.0, Axis::X, a, b});
        h.terms.push_back({jy / 4.0, Axis::Y, a, b});
        h.terms.push_back({jz / 4.0, Axis::Z, a, b});
    }
    return h;
}

}  // namespace

PauliHamiltonian isotropic_chain(int n_sites, double j, Boundary boundary) {
    return chain(n_sites, j, j, j, boundary, "isotropic");
}

PauliHamiltonian xxz_chain(int n_sites, double delta, Boundary boundary) {
    return chain(n_sites, 1.0, 1.0, delta, boundary, "xxz");
}

std::pair<PauliHamiltonian, PauliHamiltonian> split_even_odd(
    const PauliHamiltonian& h) {
    if (h.n_sites % 2 != 0) {
        throw std::invalid_argument("split_even_odd: L must be even");
    }
    if (h.boundary != Boundary::Open) {
        throw std::invalid_argument(
            "split_even_odd: the alternating split has no wrap bond; "
            "use an open chain");
    }
    PauliHamiltonian h1 = h;
    PauliHamiltonian h2 = h;
    h1.terms.clear();
    h2.terms.clear();
    for (const auto& t : h.terms) {
        // Bell-pair bonds start on odd sites: (1,2), (3,4), ...
        if (t.site_a % 2 == 1) {
            h2.terms.push_back(t);
        } else {
            h1.terms.push_back(t);
        }
    }
    return {h1, h2};
}

StateVector apply_hamiltonian(const PauliHamiltonian& h,
                              const StateVector& v) {
    if (h.n_sites != v.n_qubits()) {
        throw std::invalid_argument("apply_hamiltonian: dimension mismatch");
    }
    StateVector w(v.n_qubits());
    auto out = w.amplitudes();
    auto in = v.amplitudes();
    std::fill(out.begin(), out.end(), cplx{0.0, 0.0});
    const std::size_t n = in.size();
    for (const auto& t : h.terms) {
        if (t.coeff == 0.0) continue;
        const std::uint64_t ma = std::uint64_t{1} << (t.site_a - 1);
        const std::uint64_t mb = std::uint64_t{1} << (t.site_b - 1);
        const std::uint64_t mask = ma | mb;
        switch (t.axis) {
            case Axis::Z:
                // Z|0> = +|0>, Z|1> = -|1>; diagonal sign is parity of the
                // two bits.
                for (std::size_t k = 0; k < n; ++k) {
                    const bool eq = ((k & ma) != 0) == ((k & mb) != 0);
                    out[k] += (eq ? t.coeff : -t.coeff) * in[k];
                }
                break;
            case Axis::X:
                for (std::size_t k = 0; k < n; ++k) {
                    out[k] += t.coeff * in[k ^ mask];
                }
                break;
            case Axis::Y:
                // YY flips both bits; the phase is -1 when the source bits
                // are equal and +1 otherwise.
                for (std::size_t k = 0; k < n; ++k) {
                    const std::size_t k2 = k ^ mask;
                    const bool eq = ((k2 & ma) != 0) == ((k2 & mb) != 0);
                    out[k] += (eq ? -t.coeff : t.coeff) * in[k2];
                }
                break;
        }
    }
    return w;
}

MeasurementGroups measurement_groups(const PauliHamiltonian& h) {
    MeasurementGroups g;
    for (const auto& t : h.terms) {
        g.groups[static_cast<int>(t.axis)].push_back(t);
    }
    return g;
}

nlohmann::json PauliHamiltonian::to_json() const {
    return nlohmann::json{
        {"model", model},
        {"L", n_sites},
        {"couplings", couplings},
        {"boundary", boundary == Boundary::Open ? "open" : "periodic"},
    };
}

}  // namespace spinvqe
