#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "spinvqe/statevector.hpp"

namespace spinvqe {

enum class Axis { X, Y, Z };

enum class Boundary { Open, Periodic };

// One S^a_i S^a_j summand with its energy coefficient (J_a/4 for spin-1/2).
// Sites are 1-based chain positions; bonds are nearest-neighbor, with the
// periodic wrap stored as (L, 1).
struct PauliTerm {
    double coeff;
    Axis axis;
    int site_a;
    int site_b;
};

struct PauliHamiltonian {
    int n_sites = 0;
    Boundary boundary = Boundary::Open;
    std::array<double, 3> couplings{};  // (J_x, J_y, J_z)
    std::string model = "xxz";
    std::vector<PauliTerm> terms;

    nlohmann::json to_json() const;
};

// H_T = J sum_i S_i . S_{i+1}, open chain by default (L-1 bonds).
PauliHamiltonian isotropic_chain(int n_sites, double j = 1.0,
                                 Boundary boundary = Boundary::Open);

// J_x = J_y = 1 sets the energy scale, J_z = delta.
PauliHamiltonian xxz_chain(int n_sites, double delta,
                           Boundary boundary = Boundary::Open);

// Even/odd bond split for the alternating ansatz. Requires an open chain
// with even L. Returns (H1, H2): H2 holds the Bell-pair bonds
// (1,2),(3,4),...,(L-1,L); H1 holds (2,3),(4,5),...,(L-2,L-1).
std::pair<PauliHamiltonian, PauliHamiltonian> split_even_odd(
    const PauliHamiltonian& h);

// Matrix-free H|v>; the result is unnormalized.
StateVector apply_hamiltonian(const PauliHamiltonian& h,
                              const StateVector& v);

// Terms bucketed by axis. Terms inside one bucket mutually commute.
struct MeasurementGroups {
    std::array<std::vector<PauliTerm>, 3> groups;  // X, Y, Z

    const std::vector<PauliTerm>& group(Axis a) const {
        return groups[static_cast<int>(a)];
    }
};

MeasurementGroups measurement_groups(const PauliHamiltonian& h);

}  // namespace spinvqe
