#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spinvqe/hamiltonian.hpp"
#include "spinvqe/statevector.hpp"

namespace spinvqe {

struct SpectrumResult {
    double e0 = 0.0;
    std::optional<StateVector> ground_vector;
    enum class Method { Dense, Lanczos } method = Method::Dense;
    double residual_norm = 0.0;  // ||H v - e0 v||
};

inline constexpr int kDenseMaxSites = 12;
inline constexpr int kLanczosMaxSites = 24;

// Materializes the (real symmetric) matrix and takes the lowest eigenpair.
// L <= 12; larger systems raise CapacityError.
SpectrumResult dense_ground_state(const PauliHamiltonian& h);

struct LanczosOptions {
    int krylov_dim = 200;
    int max_restarts = 20;
    double tol = 1e-8;
    std::uint64_t seed = 1;
    bool want_vector = true;
};

// Matrix-free Lanczos with full reorthogonalization, restarted from the
// current Ritz vector until ||Hv - e0 v|| < tol * max(1, |e0|). Raises
// ConvergenceError (carrying the best estimate) if the restart cap is hit.
SpectrumResult lanczos_ground_state(const PauliHamiltonian& h,
                                    const LanczosOptions& opts = {});

// dense for L <= 12, Lanczos otherwise
SpectrumResult ground_state_auto(const PauliHamiltonian& h,
                                 std::uint64_t seed = 1);

// Reference-energy table: one row per solved model, stored as CSV with
// columns model,L,delta,boundary,e0,residual.
struct GoldenRow {
    std::string model;
    int n_sites;
    double delta;
    std::string boundary;
    double e0;
    double residual;
};

void write_golden_csv(const std::string& path,
                      const std::vector<GoldenRow>& rows);
std::vector<GoldenRow> read_golden_csv(const std::string& path);

// Looks up a row by model, size and (for xxz) delta.
std::optional<GoldenRow> find_golden(const std::vector<GoldenRow>& rows,
                                     const std::string& model, int n_sites,
                                     double delta);

}  // namespace spinvqe
