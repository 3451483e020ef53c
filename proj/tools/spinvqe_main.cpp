// Command-line front end: VQE runs, anisotropy sweeps, runtime benchmarks,
// exact-diagonalization references and state diagnostics.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "spinvqe/analysis.hpp"
#include "spinvqe/errors.hpp"
#include "spinvqe/run.hpp"

namespace {

using nlohmann::json;
using namespace spinvqe;

struct CliRunOptions {
    RunConfig config;
    std::string config_file;
};

void add_run_flags(CLI::App* cmd, CliRunOptions& opt) {
    cmd->add_option("--config", opt.config_file,
                    "JSON config file; explicit flags override it");
    cmd->add_option("--model", opt.config.model, "isotropic | xxz");
    cmd->add_option("-L,--sites", opt.config.n_sites, "chain length (even)");
    cmd->add_option("--delta", opt.config.delta, "xxz anisotropy");
    cmd->add_option("-p,--layers", opt.config.p,
                    "ansatz levels (0 = L/2)");
    cmd->add_option("--mode", opt.config.mode, "exact | sampled");
    cmd->add_option("--shots", opt.config.shots,
                    "samples per measurement group");
    cmd->add_option("--method", opt.config.method,
                    "auto | nelder-mead | spsa | gradient-descent");
    cmd->add_option("--max-iters", opt.config.max_iters,
                    "optimizer iteration cap (0 = method default)");
    cmd->add_option("--ftol", opt.config.ftol,
                    "relative tolerance (0 = mode default)");
    cmd->add_option("--init", opt.config.init, "random | zeros");
    cmd->add_option("--seed", opt.config.seed, "master seed");
    cmd->add_option("--restarts", opt.config.max_restarts,
                    "random restarts on failure");
    cmd->add_flag("--no-polish",
                  [&opt](std::int64_t) { opt.config.polish = false; },
                  "skip the exact-mode gradient refinement");
    cmd->add_option("--target-rel-error", opt.config.target_rel_error,
                    "restart until this relative error vs ED (0 = off)");
    cmd->add_option("-o,--out", opt.config.output_dir, "output directory");
}

// flags the user typed override values from --config
void merge_config_file(CLI::App* cmd, CliRunOptions& opt) {
    if (opt.config_file.empty()) return;
    std::ifstream is(opt.config_file);
    if (!is) {
        throw std::invalid_argument("cannot open config file " +
                                    opt.config_file);
    }
    json j = json::parse(is);
    RunConfig file_cfg = RunConfig::from_json(j);
    auto keep = [&](const std::string& flag) {
        return cmd->count(flag) > 0;
    };
    RunConfig merged = file_cfg;
    if (keep("--model")) merged.model = opt.config.model;
    if (keep("--sites")) merged.n_sites = opt.config.n_sites;
    if (keep("--delta")) merged.delta = opt.config.delta;
    if (keep("--layers")) merged.p = opt.config.p;
    if (keep("--mode")) merged.mode = opt.config.mode;
    if (keep("--shots")) merged.shots = opt.config.shots;
    if (keep("--method")) merged.method = opt.config.method;
    if (keep("--max-iters")) merged.max_iters = opt.config.max_iters;
    if (keep("--ftol")) merged.ftol = opt.config.ftol;
    if (keep("--init")) merged.init = opt.config.init;
    if (keep("--seed")) merged.seed = opt.config.seed;
    if (keep("--restarts")) merged.max_restarts = opt.config.max_restarts;
    if (keep("--no-polish")) merged.polish = opt.config.polish;
    if (keep("--target-rel-error")) {
        merged.target_rel_error = opt.config.target_rel_error;
    }
    if (keep("--out")) merged.output_dir = opt.config.output_dir;
    opt.config = merged;
}

int cmd_run(CLI::App* cmd, CliRunOptions& opt) {
    merge_config_file(cmd, opt);
    const RunResult res = run_vqe(opt.config);
    std::printf("final exact energy: %.10f\n", res.final_energy_exact);
    if (res.e0_reference) {
        std::printf("ED reference e0:    %.10f (rel error %.3e)\n",
                    *res.e0_reference, *res.rel_error);
    }
    std::printf("bell baseline:      %.10f\n", res.bell_baseline);
    std::printf("stop: %s after %lld iterations, %d restart(s), %.1f s\n",
                res.converged ? "converged" : "cap",
                res.iterations, res.restarts_used, res.total_s);
    if (!opt.config.output_dir.empty()) {
        std::printf("artifacts: %s\n", opt.config.output_dir.c_str());
    }
    return 0;
}

int cmd_sweep(CLI::App* cmd, CliRunOptions& opt, double dmin, double dmax,
              double step, int workers) {
    merge_config_file(cmd, opt);
    const SweepResult sweep = run_sweep(dmin, dmax, step, opt.config,
                                        workers);
    std::printf("sweep: %zu points, %d failed, R^2 = %.4f\n",
                sweep.points.size(), sweep.failures, sweep.r2);
    return 0;
}

int cmd_bench(CLI::App* cmd, CliRunOptions& opt,
              const std::vector<int>& sizes, int evals) {
    merge_config_file(cmd, opt);
    const auto rows = run_bench(sizes, opt.config, evals);
    for (const auto& r : rows) {
        if (r.skipped) {
            std::printf("L=%-3d %-8s skipped\n", r.n_sites, r.mode.c_str());
        } else {
            std::printf(
                "L=%-3d %-8s eval %.3e s (prep %.3e, estimate %.3e)\n",
                r.n_sites, r.mode.c_str(), r.mean_eval_s, r.state_prep_s,
                r.estimate_s);
        }
    }
    return 0;
}

int cmd_ed(const std::string& model, int L, double delta, bool periodic,
           const std::string& method, double tol, std::uint64_t seed,
           const std::string& out, const std::string& golden_out) {
    if (!golden_out.empty()) {
        const auto rows = compute_golden_grid();
        write_golden_csv(golden_out, rows);
        std::printf("wrote %zu reference rows to %s\n", rows.size(),
                    golden_out.c_str());
        return 0;
    }
    const Boundary boundary = periodic ? Boundary::Periodic
                                       : Boundary::Open;
    const PauliHamiltonian h = model == "isotropic"
                                   ? isotropic_chain(L, 1.0, boundary)
                                   : xxz_chain(L, delta, boundary);
    SpectrumResult res;
    if (method == "dense") {
        res = dense_ground_state(h);
    } else if (method == "lanczos") {
        LanczosOptions opts;
        opts.tol = tol;
        opts.seed = seed;
        res = lanczos_ground_state(h, opts);
    } else {
        res = ground_state_auto(h, seed);
    }
    std::printf("e0 = %.12f  (%s, residual %.2e)\n", res.e0,
                res.method == SpectrumResult::Method::Dense ? "dense"
                                                            : "lanczos",
                res.residual_norm);
    if (!out.empty()) {
        json j{{"model", model},
               {"L", L},
               {"delta", model == "isotropic" ? 1.0 : delta},
               {"boundary", periodic ? "periodic" : "open"},
               {"e0", res.e0},
               {"residual", res.residual_norm},
               {"method",
                res.method == SpectrumResult::Method::Dense ? "dense"
                                                            : "lanczos"}};
        std::ofstream os(out);
        os << j.dump(2) << "\n";
    }
    return 0;
}

int cmd_analyze(const std::string& params_file, const std::string& what,
                const std::string& correlation, int reference_site,
                const std::string& out_dir) {
    std::ifstream is(params_file);
    if (!is) {
        throw std::invalid_argument("cannot open params file " +
                                    params_file);
    }
    json j;
    try {
        j = json::parse(is);
    } catch (const json::exception& ex) {
        throw std::invalid_argument(std::string("corrupt params file: ") +
                                    ex.what());
    }
    AnsatzParams params;
    double delta = 1.0;
    int L = 0;
    try {
        params = params_from_json(j);
        delta = j.at("delta").get<double>();
        L = j.at("L").get<int>();
    } catch (const json::exception& ex) {
        throw std::invalid_argument(std::string("corrupt params file: ") +
                                    ex.what());
    }

    const StateVector psi = apply_ansatz(params, delta, L);
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    if (what == "entropy" || what == "both") {
        const EntropyProfile prof = entropy_profile(psi);
        write_entropy_csv((dir / "entropy.csv").string(), prof);
        std::printf("entropy profile (%d cuts) -> %s\n",
                    static_cast<int>(prof.values.size()),
                    (dir / "entropy.csv").c_str());
    }
    if (what == "correlation" || what == "both") {
        CorrelationKind kind = CorrelationKind::ZZ;
        if (correlation == "full-dot") kind = CorrelationKind::FullDot;
        else if (correlation == "xx") kind = CorrelationKind::XX;
        else if (correlation != "zz") {
            throw std::invalid_argument("unknown correlation kind: " +
                                        correlation);
        }
        const CorrelationProfile prof =
            correlation_function(psi, reference_site, kind);
        write_correlation_csv((dir / "correlation.csv").string(), prof);
        const DecayFit fit = decay_classification(prof);
        std::printf(
            "correlation (%zu distances) -> %s; comparative fit: %s "
            "(ss_exp %.4e vs ss_pow %.4e)\n",
            prof.values.size(), (dir / "correlation.csv").c_str(),
            fit.preferred == DecayFit::Preference::Exponential
                ? "exponential"
                : "power-law",
            fit.ss_exponential, fit.ss_power);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spin-chain VQE engine for Heisenberg/XXZ ground states"};
    app.require_subcommand(1);

    CliRunOptions run_opt;
    auto* run_cmd = app.add_subcommand("run", "one VQE optimization");
    add_run_flags(run_cmd, run_opt);

    CliRunOptions sweep_opt;
    double dmin = -1.0;
    double dmax = 1.0;
    double step = 0.1;
    int workers = 2;
    auto* sweep_cmd =
        app.add_subcommand("sweep", "VQE across a delta grid (xxz)");
    add_run_flags(sweep_cmd, sweep_opt);
    sweep_cmd->add_option("--delta-min", dmin, "grid start");
    sweep_cmd->add_option("--delta-max", dmax, "grid end");
    sweep_cmd->add_option("--step", step, "grid step (> 0)");
    sweep_cmd->add_option("--workers", workers, "worker threads");

    CliRunOptions bench_opt;
    std::vector<int> bench_sizes{4, 8, 12, 16};
    int bench_evals = 50;
    auto* bench_cmd = app.add_subcommand(
        "bench", "time cost evaluations in both estimator modes");
    add_run_flags(bench_cmd, bench_opt);
    bench_cmd->add_option("--L-list", bench_sizes,
                          "chain lengths to benchmark")
        ->delimiter(',');
    bench_cmd->add_option("--evals", bench_evals, "evaluations per row");

    std::string ed_model = "isotropic";
    int ed_L = 8;
    double ed_delta = 1.0;
    bool ed_periodic = false;
    std::string ed_method = "auto";
    double ed_tol = 1e-8;
    std::uint64_t ed_seed = 1;
    std::string ed_out;
    std::string golden_out;
    auto* ed_cmd =
        app.add_subcommand("ed", "exact-diagonalization reference");
    ed_cmd->add_option("--model", ed_model, "isotropic | xxz");
    ed_cmd->add_option("-L,--sites", ed_L, "chain length");
    ed_cmd->add_option("--delta", ed_delta, "xxz anisotropy");
    ed_cmd->add_flag("--periodic", ed_periodic,
                     "periodic wrap bond (ED only)");
    ed_cmd->add_option("--method", ed_method, "auto | dense | lanczos");
    ed_cmd->add_option("--tol", ed_tol, "Lanczos residual tolerance");
    ed_cmd->add_option("--seed", ed_seed, "Lanczos start seed");
    ed_cmd->add_option("-o,--out", ed_out, "write result JSON here");
    ed_cmd->add_option("--golden-out", golden_out,
                       "write the full reference grid CSV and exit");

    std::string an_params;
    std::string an_what = "both";
    std::string an_corr = "zz";
    int an_ref = 1;
    std::string an_out = ".";
    auto* an_cmd = app.add_subcommand(
        "analyze", "entropy/correlation diagnostics of saved parameters");
    an_cmd->add_option("--params", an_params, "params.json from a run")
        ->required();
    an_cmd->add_option("--what", an_what, "entropy | correlation | both");
    an_cmd->add_option("--correlation", an_corr, "zz | xx | full-dot");
    an_cmd->add_option("--reference-site", an_ref,
                       "correlation reference site (1-based)");
    an_cmd->add_option("-o,--out", an_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(run_cmd, run_opt);
        if (sweep_cmd->parsed()) {
            return cmd_sweep(sweep_cmd, sweep_opt, dmin, dmax, step,
                             workers);
        }
        if (bench_cmd->parsed()) {
            return cmd_bench(bench_cmd, bench_opt, bench_sizes, bench_evals);
        }
        if (ed_cmd->parsed()) {
            return cmd_ed(ed_model, ed_L, ed_delta, ed_periodic, ed_method,
                          ed_tol, ed_seed, ed_out, golden_out);
        }
        if (an_cmd->parsed()) {
            return cmd_analyze(an_params, an_what, an_corr, an_ref, an_out);
        }
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const StateInvariantError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const OptimizerAbort& ex) {
        std::cerr << "optimizer abort: " << ex.what() << "\n";
        return 3;
    } catch (const ConvergenceError& ex) {
        std::cerr << "no convergence: " << ex.what() << "\n";
        return 3;
    } catch (const CapacityError& ex) {
        std::cerr << "capacity: " << ex.what() << "\n";
        return 4;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
