#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "spinvqe/eigensolver.hpp"
#include "spinvqe/optimizer.hpp"

namespace spinvqe {

// One VQE job. String fields keep the CLI/JSON mapping direct.
struct RunConfig {
    std::string model = "isotropic";  // isotropic | xxz
    int n_sites = 8;
    double delta = 1.0;  // xxz anisotropy; forced to 1 for isotropic
    int p = 0;           // layer count, 0 = L/2
    std::string mode = "exact";  // exact | sampled
    int shots = 1024;            // per measurement group
    std::string method = "auto";  // auto | nelder-mead | spsa | gradient-descent
    int max_iters = 0;    // 0 = method default
    double ftol = 0.0;    // 0 = mode default (1e-6 exact, 1e-3 sampled)
    int stall_window = 0; // 0 = method default
    std::string init = "random";  // random | zeros
    std::uint64_t seed = 1;
    int max_restarts = 3;
    bool polish = true;           // exact mode: L-BFGS refinement after NM
    double target_rel_error = 0.0;  // extra restart trigger when ED known
    int ed_reference_max_sites = 16;  // larger L: summary has no reference
    std::string output_dir;

    nlohmann::json to_json() const;
    static RunConfig from_json(const nlohmann::json& j);

    // throws std::invalid_argument on inconsistent settings
    void validate() const;

    int effective_p() const { return p > 0 ? p : n_sites / 2; }
    double effective_delta() const { return model == "isotropic" ? 1.0 : delta; }
    OptMethod effective_method() const;
};

struct RunResult {
    AnsatzParams best_params;
    double final_energy_exact = 0.0;
    EnergyEstimate final_estimate;  // from the optimizer's own estimator
    std::optional<double> e0_reference;
    std::optional<double> rel_error;
    double bell_baseline = 0.0;
    bool converged = false;
    StopReason stop_reason = StopReason::MaxIters;
    int restarts_used = 0;
    long long iterations = 0;
    long long cost_evaluations = 0;
    long long total_shots = 0;
    OptimizationTrace trace;  // winning attempt, polish appended
    double optimize_s = 0.0;
    double state_prep_s = 0.0;
    double estimate_s = 0.0;
    double total_s = 0.0;

    nlohmann::json summary_json(const RunConfig& config) const;
};

// Runs one VQE job with the configured restart policy: retry (fresh seeded
// init) while the final exact energy sits above the Bell-pair baseline, or
// above the optional target relative error, up to max_restarts times.
// Persists trace.jsonl / summary.json / params.json / effective_config.json
// into output_dir when set.
RunResult run_vqe(const RunConfig& config);

// Energy of the Bell-pair start state under h.
double bell_baseline(const PauliHamiltonian& h);

struct SweepPoint {
    double delta = 0.0;
    bool ok = false;
    std::string error;
    double e_vqe = 0.0;
    double e_ed = 0.0;
    double rel_err = 0.0;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    double r2 = 0.0;
    int failures = 0;
};

// One run per delta grid point (xxz model), each with a seed derived from
// (config.seed, point index); points run on a small worker pool. Writes
// sweep.csv and sweep_summary.json into output_dir when set.
SweepResult run_sweep(double delta_min, double delta_max, double step,
                      const RunConfig& config, int workers = 2);

struct BenchRow {
    int n_sites = 0;
    std::string mode;
    bool skipped = false;
    double mean_eval_s = 0.0;
    double state_prep_s = 0.0;
    double estimate_s = 0.0;
    double mean_estimate = 0.0;
    int evals = 0;
};

// Times `evals` cost evaluations per (L, mode) with identical fixed params
// in both modes. Writes bench.csv into output_dir when set.
std::vector<BenchRow> run_bench(const std::vector<int>& sizes,
                                const RunConfig& config, int evals = 50);

// Reference grid behind the committed golden CSV: dense ED for the
// isotropic chain L = 2..12 and the xxz chain L = 2..12 at
// delta in {-1, -0.5, 0, 0.5, 1, 2.5}, open boundaries.
std::vector<GoldenRow> compute_golden_grid();

void write_sweep_csv(const std::string& path, const SweepResult& sweep);
void write_bench_csv(const std::string& path,
                     const std::vector<BenchRow>& rows);

}  // namespace spinvqe
