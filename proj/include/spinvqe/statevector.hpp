#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace spinvqe {

using cplx = std::complex<double>;

// 4x4 unitary acting on an ordered qubit pair (q_a, q_b).
// Local basis index b encodes bit(q_a) as b&1 and bit(q_b) as b&2,
// matrix is row-major: out[i] = sum_j m[4*i+j] * in[j].
struct TwoQubitGate {
    std::array<cplx, 16> m{};

    // max |U U^dag - I| entry
    double unitarity_defect() const;
};

struct OneQubitGate {
    std::array<cplx, 4> m{};  // row-major 2x2, index = bit(q)
};

// Dense 2^N state over an N-qubit chain. Qubit i addresses bit i of the
// basis index (little-endian); chain site s (1-based) lives on qubit s-1.
// Spin convention: |0> = up, |1> = down.
class StateVector {
public:
    // |00...0>
    explicit StateVector(int n_qubits);

    // Singlet pairs on qubits (0,1), (2,3), ...: each pair carries
    // +1/sqrt2 on local index 1 and -1/sqrt2 on local index 2.
    // n_qubits must be even and >= 2.
    static StateVector bell_pairs(int n_qubits);

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amps_.size(); }

    std::span<const cplx> amplitudes() const { return amps_; }
    std::span<cplx> amplitudes() { return amps_; }
    cplx amp(std::size_t k) const { return amps_[k]; }

    double norm() const;

    void apply_one_qubit(const OneQubitGate& g, int q);
    void apply_two_qubit(const TwoQubitGate& g, int q_a, int q_b);

    // M i.i.d. draws of basis indices from |amps|^2; deterministic per seed.
    // Requires | ||psi|| - 1 | <= 1e-6.
    std::vector<std::uint64_t> sample_bitstrings(int shots,
                                                 std::uint64_t seed) const;

    // von Neumann entropy (nats) of qubits 0..cut-1, cut in 1..N-1.
    double subsystem_entropy(int cut) const;

    // <this|other>
    cplx inner(const StateVector& other) const;

private:
    int n_qubits_;
    std::vector<cplx> amps_;
};

}  // namespace spinvqe
