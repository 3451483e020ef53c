#include "spinvqe/statevector.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "spinvqe/errors.hpp"

namespace spinvqe {

double TwoQubitGate::unitarity_defect() const {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < 4; ++k) {
                s += m[4 * i + k] * std::conj(m[4 * j + k]);
            }
            if (i == j) s -= 1.0;
            worst = std::max(worst, std::abs(s));
        }
    }
    return worst;
}

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > 30) {
        throw std::invalid_argument("StateVector: n_qubits out of range");
    }
    amps_.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector StateVector::bell_pairs(int n_qubits) {
    if (n_qubits < 2 || n_qubits % 2 != 0) {
        throw std::invalid_argument(
            "bell_pairs: n_qubits must be even and >= 2");
    }
    StateVector psi(n_qubits);
    psi.amps_[0] = 0.0;
    const int pairs = n_qubits / 2;
    const double a = 1.0 / std::sqrt(2.0);
    // Nonzero amplitudes live on indices whose pair bits are 01 or 10.
    for (std::uint64_t combo = 0; combo < (std::uint64_t{1} << pairs);
         ++combo) {
        std::uint64_t k = 0;
        double v = 1.0;
        for (int i = 0; i < pairs; ++i) {
            if ((combo >> i) & 1) {
                k |= std::uint64_t{2} << (2 * i);  // high bit of pair set
                v *= -a;
            } else {
                k |= std::uint64_t{1} << (2 * i);  // low bit of pair set
                v *= a;
            }
        }
        psi.amps_[k] = v;
    }
    return psi;
}

double StateVector::norm() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

void StateVector::apply_one_qubit(const OneQubitGate& g, int q) {
    if (q < 0 || q >= n_qubits_) {
        throw std::invalid_argument("apply_one_qubit: qubit out of range");
    }
    const std::size_t step = std::size_t{1} << q;
    const std::size_t block = step << 1;
    const std::size_t n = amps_.size();
    for (std::size_t base = 0; base < n; base += block) {
        for (std::size_t off = 0; off < step; ++off) {
            const std::size_t i0 = base + off;
            const std::size_t i1 = i0 + step;
            const cplx a = amps_[i0];
            const cplx b = amps_[i1];
            amps_[i0] = g.m[0] * a + g.m[1] * b;
            amps_[i1] = g.m[2] * a + g.m[3] * b;
        }
    }
}

void StateVector::apply_two_qubit(const TwoQubitGate& g, int q_a, int q_b) {
    if (q_a == q_b || q_a < 0 || q_b < 0 || q_a >= n_qubits_ ||
        q_b >= n_qubits_) {
        throw std::invalid_argument("apply_two_qubit: bad qubit pair");
    }
    const std::size_t ma = std::size_t{1} << q_a;
    const std::size_t mb = std::size_t{1} << q_b;
    const int lo = std::min(q_a, q_b);
    const int hi = std::max(q_a, q_b);
    const std::size_t s_lo = std::size_t{1} << lo;
    const std::size_t s_hi = std::size_t{1} << hi;
    const std::size_t n = amps_.size();
    for (std::size_t base = 0; base < n; base += (s_hi << 1)) {
        for (std::size_t mid = base; mid < base + s_hi; mid += (s_lo << 1)) {
            for (std::size_t off = 0; off < s_lo; ++off) {
                const std::size_t k00 = mid + off;
                const cplx v0 = amps_[k00];            // a=0 b=0
                const cplx v1 = amps_[k00 + ma];       // a=1 b=0
                const cplx v2 = amps_[k00 + mb];       // a=0 b=1
                const cplx v3 = amps_[k00 + ma + mb];  // a=1 b=1
                amps_[k00] = g.m[0] * v0 + g.m[1] * v1 + g.m[2] * v2 +
                             g.m[3] * v3;
                amps_[k00 + ma] = g.m[4] * v0 + g.m[5] * v1 + g.m[6] * v2 +
                                  g.m[7] * v3;
                amps_[k00 + mb] = g.m[8] * v0 + g.m[9] * v1 + g.m[10] * v2 +
                                  g.m[11] * v3;
                amps_[k00 + ma + mb] = g.m[12] * v0 + g.m[13] * v1 +
                                       g.m[14] * v2 + g.m[15] * v3;
            }
        }
    }
}

std::vector<std::uint64_t> StateVector::sample_bitstrings(
    int shots, std::uint64_t seed) const {
    if (shots < 1) {
        throw std::invalid_argument("sample_bitstrings: shots must be >= 1");
    }
    const double nrm = norm();
    if (std::abs(nrm - 1.0) > 1e-6) {
        throw StateInvariantError(
            "sample_bitstrings: state is not normalized");
    }
    std::vector<double> cdf(amps_.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < amps_.size(); ++k) {
        acc += std::norm(amps_[k]);
        cdf[k] = acc;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, acc);
    std::vector<std::uint64_t> out(static_cast<std::size_t>(shots));
    for (auto& s : out) {
        const double u = unif(rng);
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        s = static_cast<std::uint64_t>(
            std::min<std::ptrdiff_t>(it - cdf.begin(),
                                     static_cast<std::ptrdiff_t>(cdf.size()) - 1));
    }
    return out;
}

double StateVector::subsystem_entropy(int cut) const {
    if (cut < 1 || cut >= n_qubits_) {
        throw std::invalid_argument("subsystem_entropy: cut out of range");
    }
    // The amplitude buffer, read column-major, is the 2^cut x 2^(N-cut)
    // matrix M with row index = low bits. Eigenvalues of the Gram matrix
    // on the smaller side are the squared singular values.
    const std::size_t rows = std::size_t{1} << cut;
    const std::size_t cols = amps_.size() / rows;
    const bool use_rows = rows <= cols;
    const std::size_t d = use_rows ? rows : cols;
    std::vector<cplx> gram(d * d, cplx{0.0, 0.0});
    if (use_rows) {
        // G = M M^dag: G[i][j] = sum_c M(i,c) conj(M(j,c))
        for (std::size_t c = 0; c < cols; ++c) {
            const cplx* col = amps_.data() + c * rows;
            for (std::size_t i = 0; i < rows; ++i) {
                const cplx mi = col[i];
                if (mi == cplx{0.0, 0.0}) continue;
                for (std::size_t j = 0; j < rows; ++j) {
                    gram[i * rows + j] += mi * std::conj(col[j]);
                }
            }
        }
    } else {
        // G = M^dag M: G[c][c'] = sum_r conj(M(r,c)) M(r,c')
        for (std::size_t c = 0; c < cols; ++c) {
            for (std::size_t c2 = 0; c2 < cols; ++c2) {
                cplx s = 0.0;
                const cplx* a = amps_.data() + c * rows;
                const cplx* b = amps_.data() + c2 * rows;
                for (std::size_t r = 0; r < rows; ++r) {
                    s += std::conj(a[r]) * b[r];
                }
                gram[c * cols + c2] = s;
            }
        }
    }
    std::vector<double> evals(d);
    const int info = LAPACKE_zheevd(
        LAPACK_ROW_MAJOR, 'N', 'U', static_cast<lapack_int>(d),
        reinterpret_cast<lapack_complex_double*>(gram.data()),
        static_cast<lapack_int>(d), evals.data());
    if (info != 0) {
        throw std::runtime_error("subsystem_entropy: zheevd failed");
    }
    double s = 0.0;
    for (double lam : evals) {
        if (lam > 1e-14) s -= lam * std::log(lam);
    }
    return s;
}

cplx StateVector::inner(const StateVector& other) const {
    if (other.n_qubits_ != n_qubits_) {
        throw std::invalid_argument("inner: dimension mismatch");
    }
    cplx s = 0.0;
    for (std::size_t k = 0; k < amps_.size(); ++k) {
        s += std::conj(amps_[k]) * other.amps_[k];
    }
    return s;
}

}  // namespace spinvqe
