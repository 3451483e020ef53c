#include "oracles.hpp"

#include <lapacke.h>

#include <cmath>
#include <random>

#include "spinvqe/expectation.hpp"

namespace oracles {

namespace {

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix out;
    out.dim = a.dim * b.dim;
    out.a.assign(out.dim * out.dim, cplx{0.0, 0.0});
    for (std::size_t ra = 0; ra < a.dim; ++ra) {
        for (std::size_t ca = 0; ca < a.dim; ++ca) {
            const cplx va = a.at(ra, ca);
            if (va == cplx{0.0, 0.0}) continue;
            for (std::size_t rb = 0; rb < b.dim; ++rb) {
                for (std::size_t cb = 0; cb < b.dim; ++cb) {
                    out.at(ra * b.dim + rb, ca * b.dim + cb) =
                        va * b.at(rb, cb);
                }
            }
        }
    }
    return out;
}

DenseMatrix pauli2(spinvqe::Axis axis) {
    DenseMatrix m;
    m.dim = 2;
    m.a.assign(4, cplx{0.0, 0.0});
    switch (axis) {
        case spinvqe::Axis::X:
            m.at(0, 1) = 1.0;
            m.at(1, 0) = 1.0;
            break;
        case spinvqe::Axis::Y:
            m.at(0, 1) = cplx{0.0, -1.0};
            m.at(1, 0) = cplx{0.0, 1.0};
            break;
        case spinvqe::Axis::Z:
            m.at(0, 0) = 1.0;
            m.at(1, 1) = -1.0;
            break;
    }
    return m;
}

DenseMatrix identity2() {
    DenseMatrix m;
    m.dim = 2;
    m.a = {1.0, 0.0, 0.0, 1.0};
    return m;
}

}  // namespace

DenseMatrix dense_from_kron(const spinvqe::PauliHamiltonian& h) {
    const std::size_t dim = std::size_t{1} << h.n_sites;
    DenseMatrix out;
    out.dim = dim;
    out.a.assign(dim * dim, cplx{0.0, 0.0});
    for (const auto& t : h.terms) {
        // qubit L-1 is the leading kron factor, qubit 0 the trailing one
        DenseMatrix acc;
        acc.dim = 1;
        acc.a = {cplx{1.0, 0.0}};
        for (int q = h.n_sites - 1; q >= 0; --q) {
            const bool hit = q == t.site_a - 1 || q == t.site_b - 1;
            acc = kron(acc, hit ? pauli2(t.axis) : identity2());
        }
        for (std::size_t i = 0; i < out.a.size(); ++i) {
            out.a[i] += t.coeff * acc.a[i];
        }
    }
    return out;
}

std::vector<cplx> mat_vec(const DenseMatrix& m, const std::vector<cplx>& v) {
    std::vector<cplx> out(m.dim, cplx{0.0, 0.0});
    for (std::size_t r = 0; r < m.dim; ++r) {
        cplx s = 0.0;
        for (std::size_t c = 0; c < m.dim; ++c) {
            s += m.at(r, c) * v[c];
        }
        out[r] = s;
    }
    return out;
}

std::array<cplx, 16> expm4(const std::array<cplx, 16>& a) {
    auto mul = [](const std::array<cplx, 16>& x,
                  const std::array<cplx, 16>& y) {
        std::array<cplx, 16> out{};
        for (int i = 0; i < 4; ++i) {
            for (int k = 0; k < 4; ++k) {
                const cplx v = x[4 * i + k];
                if (v == cplx{0.0, 0.0}) continue;
                for (int j = 0; j < 4; ++j) {
                    out[4 * i + j] += v * y[4 * k + j];
                }
            }
        }
        return out;
    };

    double nrm = 0.0;
    for (const auto& v : a) nrm += std::abs(v);
    int squarings = 0;
    double scale = 1.0;
    while (nrm * scale > 0.5) {
        scale *= 0.5;
        ++squarings;
    }

    std::array<cplx, 16> scaled{};
    for (int i = 0; i < 16; ++i) scaled[i] = a[i] * scale;

    std::array<cplx, 16> result{};
    for (int i = 0; i < 4; ++i) result[5 * i] = 1.0;
    std::array<cplx, 16> term = result;
    for (int k = 1; k <= 30; ++k) {
        term = mul(term, scaled);
        for (auto& v : term) v /= static_cast<double>(k);
        double tn = 0.0;
        for (const auto& v : term) tn += std::abs(v);
        for (int i = 0; i < 16; ++i) result[i] += term[i];
        if (tn < 1e-18) break;
    }
    for (int s = 0; s < squarings; ++s) result = mul(result, result);
    return result;
}

double free_fermion_xy_energy(int n_sites) {
    std::vector<double> diag(static_cast<std::size_t>(n_sites), 0.0);
    std::vector<double> off(static_cast<std::size_t>(n_sites - 1), 0.5);
    const lapack_int info = LAPACKE_dstev(
        LAPACK_COL_MAJOR, 'N', static_cast<lapack_int>(n_sites),
        diag.data(), off.data(), nullptr, 1);
    if (info != 0) {
        throw std::runtime_error("free_fermion_xy_energy: dstev failed");
    }
    double e = 0.0;
    for (const double v : diag) {
        if (v < 0.0) e += v;
    }
    return e;
}

std::vector<double> finite_difference_gradient(
    const spinvqe::AnsatzParams& params, double delta, int n_sites,
    double h) {
    const spinvqe::PauliHamiltonian ht = spinvqe::xxz_chain(n_sites, delta);
    auto energy = [&](const std::vector<double>& x) {
        const auto p = spinvqe::AnsatzParams::unflatten(x);
        return spinvqe::exact_energy(spinvqe::apply_ansatz(p, delta, n_sites),
                                     ht)
            .value;
    };
    const std::vector<double> x0 = params.flatten();
    std::vector<double> grad(x0.size());
    for (std::size_t i = 0; i < x0.size(); ++i) {
        std::vector<double> xp = x0;
        std::vector<double> xm = x0;
        xp[i] += h;
        xm[i] -= h;
        grad[i] = (energy(xp) - energy(xm)) / (2.0 * h);
    }
    return grad;
}

spinvqe::StateVector random_state(int n_qubits, std::uint64_t seed) {
    spinvqe::StateVector psi(n_qubits);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (auto& a : psi.amplitudes()) a = cplx{gauss(rng), gauss(rng)};
    const double nrm = psi.norm();
    for (auto& a : psi.amplitudes()) a /= nrm;
    return psi;
}

spinvqe::TwoQubitGate random_two_qubit_gate(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    // exp(-i H) of a random Hermitian H is unitary
    std::array<cplx, 16> herm{};
    for (int r = 0; r < 4; ++r) {
        herm[5 * r] = gauss(rng);
        for (int c = r + 1; c < 4; ++c) {
            const cplx v{gauss(rng), gauss(rng)};
            herm[4 * r + c] = v;
            herm[4 * c + r] = std::conj(v);
        }
    }
    std::array<cplx, 16> mih{};
    for (int i = 0; i < 16; ++i) mih[i] = cplx{0.0, -1.0} * herm[i];
    spinvqe::TwoQubitGate g;
    g.m = expm4(mih);
    return g;
}

}  // namespace oracles
