#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "spinvqe/errors.hpp"
#include "spinvqe/statevector.hpp"

using namespace spinvqe;

namespace {

TwoQubitGate identity_gate() {
    TwoQubitGate g;
    for (int i = 0; i < 4; ++i) g.m[5 * i] = 1.0;
    return g;
}

TwoQubitGate swap_gate() {
    TwoQubitGate g;
    g.m[0] = 1.0;
    g.m[15] = 1.0;
    g.m[6] = 1.0;  // |10> <-> |01|
    g.m[9] = 1.0;
    return g;
}

double total_variation(const StateVector& psi,
                       const std::vector<std::uint64_t>& samples) {
    std::map<std::uint64_t, double> freq;
    for (const auto s : samples) {
        freq[s] += 1.0 / static_cast<double>(samples.size());
    }
    double tv = 0.0;
    for (std::size_t k = 0; k < psi.dim(); ++k) {
        const double p = std::norm(psi.amp(k));
        const auto it = freq.find(k);
        const double q = it == freq.end() ? 0.0 : it->second;
        tv += std::abs(p - q);
    }
    return tv / 2.0;
}

}  // namespace

TEST_SUITE_BEGIN("statevector");

TEST_CASE("bell pairs n=2 matches the frozen singlet amplitudes") {
    const StateVector psi = StateVector::bell_pairs(2);
    const double a = 1.0 / std::numbers::sqrt2;
    CHECK(psi.amp(0) == cplx{0.0, 0.0});
    CHECK(psi.amp(1).real() == doctest::Approx(a).epsilon(1e-15));
    CHECK(psi.amp(2).real() == doctest::Approx(-a).epsilon(1e-15));
    CHECK(psi.amp(3) == cplx{0.0, 0.0});
    CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("bell pairs rejects odd or too-small sizes") {
    CHECK_THROWS_AS(StateVector::bell_pairs(3), std::invalid_argument);
    CHECK_THROWS_AS(StateVector::bell_pairs(0), std::invalid_argument);
}

TEST_CASE("identity gate leaves amplitudes bit-exact") {
    StateVector psi = oracles::random_state(4, 11);
    const StateVector before = psi;
    psi.apply_two_qubit(identity_gate(), 1, 3);
    for (std::size_t k = 0; k < psi.dim(); ++k) {
        CHECK(psi.amp(k) == before.amp(k));
    }
}

TEST_CASE("swap on a singlet flips only the global sign") {
    StateVector psi = StateVector::bell_pairs(2);
    psi.apply_two_qubit(swap_gate(), 0, 1);
    const double a = 1.0 / std::numbers::sqrt2;
    CHECK(psi.amp(1).real() == doctest::Approx(-a).epsilon(1e-15));
    CHECK(psi.amp(2).real() == doctest::Approx(a).epsilon(1e-15));
}

TEST_CASE("U then U-dagger returns the original state") {
    StateVector psi = oracles::random_state(5, 23);
    const StateVector before = psi;
    const TwoQubitGate g = oracles::random_two_qubit_gate(7);
    TwoQubitGate gdag;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            gdag.m[4 * r + c] = std::conj(g.m[4 * c + r]);
        }
    }
    psi.apply_two_qubit(g, 3, 1);
    psi.apply_two_qubit(gdag, 3, 1);
    for (std::size_t k = 0; k < psi.dim(); ++k) {
        CHECK(std::abs(psi.amp(k) - before.amp(k)) < 1e-12);
    }
}

TEST_CASE("gate application rejects bad qubit pairs") {
    StateVector psi(3);
    CHECK_THROWS_AS(psi.apply_two_qubit(identity_gate(), 1, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(psi.apply_two_qubit(identity_gate(), 0, 3),
                    std::invalid_argument);
}

TEST_CASE("norm is preserved across 100 random gates") {
    StateVector psi = oracles::random_state(6, 31);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const int qa = static_cast<int>(rng() % 6);
        int qb = static_cast<int>(rng() % 6);
        if (qb == qa) qb = (qb + 1) % 6;
        psi.apply_two_qubit(
            oracles::random_two_qubit_gate(1000 + static_cast<unsigned>(i)),
            qa, qb);
    }
    CHECK(std::abs(psi.norm() - 1.0) < 1e-10);
}

TEST_CASE("gates on disjoint pairs commute") {
    const TwoQubitGate g1 = oracles::random_two_qubit_gate(41);
    const TwoQubitGate g2 = oracles::random_two_qubit_gate(42);
    StateVector a = oracles::random_state(5, 77);
    StateVector b = a;
    a.apply_two_qubit(g1, 0, 2);
    a.apply_two_qubit(g2, 4, 1);
    b.apply_two_qubit(g2, 4, 1);
    b.apply_two_qubit(g1, 0, 2);
    for (std::size_t k = 0; k < a.dim(); ++k) {
        CHECK(std::abs(a.amp(k) - b.amp(k)) < 1e-12);
    }
}

TEST_CASE("sampling a basis state always returns that index") {
    StateVector psi(4);  // |0000>
    for (const auto s : psi.sample_bitstrings(64, 3)) {
        CHECK(s == 0);
    }
}

TEST_CASE("singlet sampling is balanced at large M") {
    const StateVector psi = StateVector::bell_pairs(2);
    const auto samples = psi.sample_bitstrings(100000, 12345);
    double p1 = 0.0;
    for (const auto s : samples) {
        CHECK((s == 1 || s == 2));
        if (s == 1) p1 += 1.0;
    }
    p1 /= static_cast<double>(samples.size());
    CHECK(std::abs(p1 - 0.5) < 0.01);
}

TEST_CASE("fixed seed reproduces the sample sequence") {
    const StateVector psi = oracles::random_state(4, 9);
    const auto a = psi.sample_bitstrings(500, 777);
    const auto b = psi.sample_bitstrings(500, 777);
    CHECK(a == b);
}

TEST_CASE("sampling an unnormalized state is rejected") {
    StateVector psi(3);
    psi.amplitudes()[0] = 2.0;
    CHECK_THROWS_AS(psi.sample_bitstrings(10, 1), StateInvariantError);
}

TEST_CASE("empirical distribution tightens with more shots") {
    const StateVector psi = oracles::random_state(4, 2024);
    const double tv_small = total_variation(psi, psi.sample_bitstrings(1000, 5));
    const double tv_large =
        total_variation(psi, psi.sample_bitstrings(100000, 5));
    CHECK(tv_large < tv_small);
}

TEST_CASE("entropy of a product state is zero") {
    StateVector psi(5);
    for (int cut = 1; cut < 5; ++cut) {
        CHECK(psi.subsystem_entropy(cut) == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("bell-pair entropy alternates ln2 / 0") {
    const StateVector psi = StateVector::bell_pairs(6);
    for (int cut = 1; cut < 6; ++cut) {
        const double expected = cut % 2 == 1 ? std::log(2.0) : 0.0;
        CHECK(psi.subsystem_entropy(cut) ==
              doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("Schmidt symmetry: block entropy equals complement entropy") {
    // S(qubits 0..cut-1) == S(qubits cut..N-1); the right block becomes a
    // leading block after reversing the qubit order.
    const int n = 6;
    const StateVector psi = oracles::random_state(n, 4711);
    StateVector reversed(n);
    for (std::size_t k = 0; k < psi.dim(); ++k) {
        std::size_t rk = 0;
        for (int q = 0; q < n; ++q) {
            if (k & (std::size_t{1} << q)) {
                rk |= std::size_t{1} << (n - 1 - q);
            }
        }
        reversed.amplitudes()[rk] = psi.amp(k);
    }
    for (int cut = 1; cut < n; ++cut) {
        CHECK(std::abs(psi.subsystem_entropy(cut) -
                       reversed.subsystem_entropy(n - cut)) < 1e-10);
    }
}

TEST_CASE("entropy profile is reflection symmetric for mirrored circuits") {
    // exchange-symmetric gates laid out symmetrically about the chain
    // center produce a reflection-symmetric state, so s(cut) = s(N - cut)
    auto symmetric_gate = [](std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::array<cplx, 16> herm{};
        for (int r = 0; r < 4; ++r) {
            herm[5 * r] = gauss(rng);
            for (int c = r + 1; c < 4; ++c) {
                const cplx v{gauss(rng), gauss(rng)};
                herm[4 * r + c] = v;
                herm[4 * c + r] = std::conj(v);
            }
        }
        // symmetrize under the qubit swap (local indices 1 <-> 2)
        constexpr int swap_map[4] = {0, 2, 1, 3};
        std::array<cplx, 16> sym{};
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                sym[4 * r + c] = 0.5 * (herm[4 * r + c] +
                                        herm[4 * swap_map[r] + swap_map[c]]);
            }
        }
        std::array<cplx, 16> gen{};
        for (int i = 0; i < 16; ++i) gen[i] = cplx{0.0, -1.0} * sym[i];
        TwoQubitGate g;
        g.m = oracles::expm4(gen);
        return g;
    };
    StateVector psi = StateVector::bell_pairs(6);
    const TwoQubitGate g1 = symmetric_gate(15);
    const TwoQubitGate g2 = symmetric_gate(16);
    psi.apply_two_qubit(g1, 0, 1);
    psi.apply_two_qubit(g1, 4, 5);  // mirror image of (0,1)
    psi.apply_two_qubit(g2, 2, 3);  // self-mirrored center bond
    for (int cut = 1; cut < 6; ++cut) {
        CHECK(std::abs(psi.subsystem_entropy(cut) -
                       psi.subsystem_entropy(6 - cut)) < 1e-10);
    }
}

TEST_CASE("entropy cut bounds are checked") {
    const StateVector psi(4);
    CHECK_THROWS_AS(psi.subsystem_entropy(0), std::invalid_argument);
    CHECK_THROWS_AS(psi.subsystem_entropy(4), std::invalid_argument);
}

TEST_SUITE_END();
