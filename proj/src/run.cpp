#include "spinvqe/run.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <thread>

#include <nlohmann/json.hpp>

#include "spinvqe/analysis.hpp"
#include "spinvqe/errors.hpp"

namespace spinvqe {

namespace {

using nlohmann::json;

double now_s() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

std::string stop_reason_name(StopReason r) {
    switch (r) {
        case StopReason::Tolerance: return "tolerance";
        case StopReason::MaxIters: return "max-iter";
        case StopReason::Stall: return "stall";
    }
    return "unknown";
}

int default_max_iters(OptMethod m) {
    switch (m) {
        case OptMethod::NelderMead: return 4000;
        case OptMethod::Spsa: return 1000;
        case OptMethod::GradientDescent: return 500;
    }
    return 1000;
}

OptimizerConfig optimizer_config_for(const RunConfig& c, int attempt) {
    OptimizerConfig oc;
    oc.method = c.effective_method();
    oc.max_iters = c.max_iters > 0 ? c.max_iters
                                   : default_max_iters(oc.method);
    oc.ftol = c.ftol > 0.0 ? c.ftol : (c.mode == "exact" ? 1e-6 : 1e-3);
    oc.stall_window = c.stall_window;
    oc.seed = derive_seed(c.seed, 2000 + static_cast<std::uint64_t>(attempt));
    return oc;
}

void append_trace(OptimizationTrace& into, const OptimizationTrace& tail) {
    const int base_iter =
        into.iterations.empty() ? 0 : into.iterations.back().iter + 1;
    const double base_t =
        into.iterations.empty() ? 0.0 : into.iterations.back().cumulative_s;
    double best = into.iterations.empty()
                      ? std::numeric_limits<double>::infinity()
                      : into.iterations.back().best_energy;
    for (auto rec : tail.iterations) {
        rec.iter += base_iter;
        rec.cumulative_s += base_t;
        best = std::min(best, rec.energy.value);
        rec.best_energy = best;
        into.iterations.push_back(std::move(rec));
    }
    into.converged = tail.converged;
    into.stop_reason = tail.stop_reason;
    into.cost_evaluations += tail.cost_evaluations;
}

void write_trace_jsonl(const std::string& path,
                       const OptimizationTrace& trace) {
    std::ofstream os(path);
    if (!os) {
        throw std::runtime_error("cannot open " + path);
    }
    for (const auto& rec : trace.iterations) {
        json line{{"iter", rec.iter},
                  {"gammas", rec.params.gammas},
                  {"betas", rec.params.betas},
                  {"energy", rec.energy.value},
                  {"std_error", rec.energy.std_error},
                  {"shots", rec.energy.shots_used},
                  {"best_energy", rec.best_energy},
                  {"t_s", rec.cumulative_s}};
        os << line.dump() << "\n";
    }
}

}  // namespace

OptMethod RunConfig::effective_method() const {
    if (method == "auto") {
        return mode == "sampled" ? OptMethod::Spsa : OptMethod::NelderMead;
    }
    if (method == "nelder-mead") return OptMethod::NelderMead;
    if (method == "spsa") return OptMethod::Spsa;
    if (method == "gradient-descent") return OptMethod::GradientDescent;
    throw std::invalid_argument("unknown optimizer method: " + method);
}

void RunConfig::validate() const {
    if (model != "isotropic" && model != "xxz") {
        throw std::invalid_argument("model must be isotropic or xxz");
    }
    if (n_sites < 2 || n_sites % 2 != 0) {
        throw std::invalid_argument(
            "the alternating ansatz needs an even L >= 2");
    }
    if (effective_p() < 1) {
        throw std::invalid_argument("p must be >= 1");
    }
    if (mode != "exact" && mode != "sampled") {
        throw std::invalid_argument("mode must be exact or sampled");
    }
    if (mode == "sampled" && shots < 1) {
        throw std::invalid_argument("shots must be >= 1");
    }
    if (init != "random" && init != "zeros") {
        throw std::invalid_argument("init must be random or zeros");
    }
    if (max_restarts < 0) {
        throw std::invalid_argument("max_restarts must be >= 0");
    }
    (void)effective_method();
}

json RunConfig::to_json() const {
    return json{{"model", model},
                {"L", n_sites},
                {"delta", delta},
                {"p", p},
                {"mode", mode},
                {"shots", shots},
                {"method", method},
                {"max_iters", max_iters},
                {"ftol", ftol},
                {"stall_window", stall_window},
                {"init", init},
                {"seed", seed},
                {"max_restarts", max_restarts},
                {"polish", polish},
                {"target_rel_error", target_rel_error},
                {"ed_reference_max_sites", ed_reference_max_sites},
                {"output_dir", output_dir}};
}

RunConfig RunConfig::from_json(const json& j) {
    RunConfig c;
    c.model = j.value("model", c.model);
    c.n_sites = j.value("L", c.n_sites);
    c.delta = j.value("delta", c.delta);
    c.p = j.value("p", c.p);
    c.mode = j.value("mode", c.mode);
    c.shots = j.value("shots", c.shots);
    c.method = j.value("method", c.method);
    c.max_iters = j.value("max_iters", c.max_iters);
    c.ftol = j.value("ftol", c.ftol);
    c.stall_window = j.value("stall_window", c.stall_window);
    c.init = j.value("init", c.init);
    c.seed = j.value("seed", c.seed);
    c.max_restarts = j.value("max_restarts", c.max_restarts);
    c.polish = j.value("polish", c.polish);
    c.target_rel_error = j.value("target_rel_error", c.target_rel_error);
    c.ed_reference_max_sites =
        j.value("ed_reference_max_sites", c.ed_reference_max_sites);
    c.output_dir = j.value("output_dir", c.output_dir);
    return c;
}

double bell_baseline(const PauliHamiltonian& h) {
    return exact_energy(StateVector::bell_pairs(h.n_sites), h).value;
}

json RunResult::summary_json(const RunConfig& config) const {
    json result{{"final_energy_exact", final_energy_exact},
                {"estimate",
                 json{{"value", final_estimate.value},
                      {"std_error", final_estimate.std_error},
                      {"shots_used", final_estimate.shots_used}}},
                {"bell_baseline", bell_baseline},
                {"converged", converged},
                {"stop_reason", stop_reason_name(stop_reason)},
                {"iterations", iterations},
                {"cost_evaluations", cost_evaluations},
                {"total_shots", total_shots},
                {"restarts_used", restarts_used}};
    result["e0_reference"] =
        e0_reference ? json(*e0_reference) : json(nullptr);
    result["rel_error"] = rel_error ? json(*rel_error) : json(nullptr);
    return json{{"schema_version", 1},
                {"config", config.to_json()},
                {"result", result},
                {"timing", json{{"total_s", total_s},
                                {"optimize_s", optimize_s},
                                {"state_prep_s", state_prep_s},
                                {"estimate_s", estimate_s}}}};
}

RunResult run_vqe(const RunConfig& config) {
    config.validate();
    const double t_start = now_s();
    const int L = config.n_sites;
    const double delta = config.effective_delta();
    const int p = config.effective_p();

    const PauliHamiltonian h = config.model == "isotropic"
                                   ? isotropic_chain(L)
                                   : xxz_chain(L, config.delta);

    RunResult out;
    out.bell_baseline = bell_baseline(h);

    if (L <= config.ed_reference_max_sites) {
        out.e0_reference = ground_state_auto(h, derive_seed(config.seed, 7))
                               .e0;
    }

    const InitStrategy strategy = config.init == "zeros"
                                      ? InitStrategy::Zeros
                                      : InitStrategy::UniformRandom;
    const bool exact_mode = config.mode == "exact";

    GradientHandle gradient = [&, delta, L](const AnsatzParams& params) {
        return exact_energy_gradient(params, delta, L);
    };

    bool have_best = false;
    for (int attempt = 0; attempt <= config.max_restarts; ++attempt) {
        CostFunction cost(
            h, delta, L,
            exact_mode ? EstimatorMode::Exact : EstimatorMode::Sampled,
            ShotBudget{config.shots,
                       derive_seed(config.seed,
                                   3000 + static_cast<std::uint64_t>(
                                              attempt))});
        double prep_s = 0.0;
        double est_s = 0.0;
        CostHandle handle = [&cost, &prep_s,
                             &est_s](const AnsatzParams& params) {
            auto timed = cost.evaluate_timed(params);
            prep_s += timed.state_prep_s;
            est_s += timed.estimate_s;
            return timed.estimate;
        };

        const AnsatzParams initial = init_params(
            p, strategy,
            derive_seed(config.seed,
                        1000 + static_cast<std::uint64_t>(attempt)));
        OptimizerConfig oc = optimizer_config_for(config, attempt);
        MinimizeResult res = minimize(oc, handle, initial, gradient);

        if (exact_mode && config.polish &&
            oc.method == OptMethod::NelderMead) {
            OptimizerConfig pc = oc;
            pc.method = OptMethod::GradientDescent;
            pc.max_iters = 300;
            pc.ftol = std::min(oc.ftol, 1e-9);
            MinimizeResult polish =
                minimize(pc, handle, res.best_params, gradient);
            append_trace(res.trace, polish.trace);
            if (polish.best_energy.value <= res.best_energy.value) {
                res.best_params = polish.best_params;
                res.best_energy = polish.best_energy;
            }
        }

        const double final_exact =
            exact_energy(apply_ansatz(res.best_params, delta, L), h).value;

        const bool better = !have_best ||
                            final_exact < out.final_energy_exact;
        if (better) {
            have_best = true;
            out.best_params = res.best_params;
            out.final_energy_exact = final_exact;
            out.final_estimate = res.best_energy;
            out.converged = res.trace.converged;
            out.stop_reason = res.trace.stop_reason;
            out.iterations =
                static_cast<long long>(res.trace.iterations.size());
            out.cost_evaluations = res.trace.cost_evaluations;
            out.total_shots = 0;
            for (const auto& rec : res.trace.iterations) {
                out.total_shots += rec.energy.shots_used;
            }
            out.trace = std::move(res.trace);
        }
        out.restarts_used = attempt;
        out.state_prep_s += prep_s;
        out.estimate_s += est_s;

        const bool above_baseline =
            out.final_energy_exact > out.bell_baseline + 1e-9;
        bool above_target = false;
        if (config.target_rel_error > 0.0 && out.e0_reference) {
            const double rel =
                std::abs(out.final_energy_exact - *out.e0_reference) /
                std::abs(*out.e0_reference);
            above_target = rel > config.target_rel_error;
        }
        if (!above_baseline && !above_target) break;
    }

    if (out.e0_reference) {
        out.rel_error =
            std::abs(out.final_energy_exact - *out.e0_reference) /
            std::abs(*out.e0_reference);
    }
    out.optimize_s = now_s() - t_start;
    out.total_s = out.optimize_s;

    if (!config.output_dir.empty()) {
        std::filesystem::create_directories(config.output_dir);
        const std::filesystem::path dir(config.output_dir);
        write_trace_jsonl((dir / "trace.jsonl").string(), out.trace);
        {
            std::ofstream os(dir / "summary.json");
            os << out.summary_json(config).dump(2) << "\n";
        }
        {
            json pj = params_to_json(out.best_params, delta, config.seed);
            pj["L"] = L;
            pj["model"] = config.model;
            std::ofstream os(dir / "params.json");
            os << pj.dump(2) << "\n";
        }
        {
            std::ofstream os(dir / "effective_config.json");
            os << config.to_json().dump(2) << "\n";
        }
    }
    return out;
}

SweepResult run_sweep(double delta_min, double delta_max, double step,
                      const RunConfig& config, int workers) {
    if (step <= 0.0) {
        throw std::invalid_argument("sweep: step must be > 0");
    }
    if (delta_max < delta_min) {
        throw std::invalid_argument("sweep: empty delta range");
    }
    const int n_points =
        static_cast<int>(std::floor((delta_max - delta_min) / step + 1e-9)) +
        1;

    SweepResult sweep;
    sweep.points.assign(static_cast<std::size_t>(n_points), SweepPoint{});

    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n_points) break;
            SweepPoint& pt = sweep.points[static_cast<std::size_t>(i)];
            pt.delta = delta_min + step * i;
            try {
                RunConfig rc = config;
                rc.model = "xxz";
                rc.delta = pt.delta;
                rc.seed = derive_seed(config.seed,
                                      4000 + static_cast<std::uint64_t>(i));
                rc.output_dir.clear();
                const RunResult res = run_vqe(rc);
                pt.e_vqe = res.final_energy_exact;
                if (!res.e0_reference) {
                    throw CapacityError("no ED reference at this size");
                }
                pt.e_ed = *res.e0_reference;
                pt.rel_err = std::abs(pt.e_vqe - pt.e_ed) /
                             std::abs(pt.e_ed);
                pt.ok = true;
            } catch (const std::exception& ex) {
                pt.ok = false;
                pt.error = ex.what();
            }
        }
    };
    workers = std::max(1, workers);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers - 1));
    for (int t = 1; t < workers; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::vector<double> pred;
    std::vector<double> ref;
    for (const auto& pt : sweep.points) {
        if (!pt.ok) {
            ++sweep.failures;
            continue;
        }
        pred.push_back(pt.e_vqe);
        ref.push_back(pt.e_ed);
    }
    sweep.r2 = pred.size() >= 2 ? r_squared(pred, ref) : 0.0;

    if (!config.output_dir.empty()) {
        std::filesystem::create_directories(config.output_dir);
        const std::filesystem::path dir(config.output_dir);
        write_sweep_csv((dir / "sweep.csv").string(), sweep);
        json failures = json::array();
        for (const auto& pt : sweep.points) {
            if (!pt.ok) {
                failures.push_back(
                    json{{"delta", pt.delta}, {"error", pt.error}});
            }
        }
        json summary{{"schema_version", 1},
                     {"r2", sweep.r2},
                     {"n_points", n_points},
                     {"failures", failures},
                     {"config", config.to_json()}};
        std::ofstream os(dir / "sweep_summary.json");
        os << summary.dump(2) << "\n";
    }
    return sweep;
}

std::vector<BenchRow> run_bench(const std::vector<int>& sizes,
                                const RunConfig& config, int evals) {
    if (evals < 1) {
        throw std::invalid_argument("bench: evals must be >= 1");
    }
    std::vector<BenchRow> rows;
    for (const int L : sizes) {
        const int p = config.p > 0 ? config.p : L / 2;
        AnsatzParams params;
        try {
            params = init_params(p, InitStrategy::UniformRandom,
                                 derive_seed(config.seed,
                                             static_cast<std::uint64_t>(L)));
        } catch (const std::exception&) {
            params = AnsatzParams{};
        }
        for (const std::string mode : {"exact", "sampled"}) {
            BenchRow row;
            row.n_sites = L;
            row.mode = mode;
            row.evals = evals;
            try {
                if (L < 2 || L % 2 != 0 || L > 26) {
                    throw CapacityError("bench: unsupported L");
                }
                const PauliHamiltonian h =
                    config.model == "isotropic"
                        ? isotropic_chain(L)
                        : xxz_chain(L, config.delta);
                CostFunction cost(h, config.effective_delta(), L,
                                  mode == "exact" ? EstimatorMode::Exact
                                                  : EstimatorMode::Sampled,
                                  ShotBudget{config.shots,
                                             derive_seed(config.seed, 99)});
                double prep = 0.0;
                double est = 0.0;
                double total = 0.0;
                double sum = 0.0;
                for (int i = 0; i < evals; ++i) {
                    const auto timed = cost.evaluate_timed(params);
                    prep += timed.state_prep_s;
                    est += timed.estimate_s;
                    total += timed.estimate.wall_time_s;
                    sum += timed.estimate.value;
                }
                row.mean_eval_s = total / evals;
                row.state_prep_s = prep / evals;
                row.estimate_s = est / evals;
                row.mean_estimate = sum / evals;
            } catch (const std::exception&) {
                row.skipped = true;
            }
            rows.push_back(std::move(row));
        }
    }
    if (!config.output_dir.empty()) {
        std::filesystem::create_directories(config.output_dir);
        write_bench_csv(
            (std::filesystem::path(config.output_dir) / "bench.csv")
                .string(),
            rows);
    }
    return rows;
}

std::vector<GoldenRow> compute_golden_grid() {
    std::vector<GoldenRow> rows;
    std::map<std::pair<int, long long>, SpectrumResult> cache;
    auto solve = [&](int L, double delta) -> const SpectrumResult& {
        const auto key = std::make_pair(
            L, static_cast<long long>(std::llround(delta * 1e6)));
        auto it = cache.find(key);
        if (it == cache.end()) {
            it = cache.emplace(key, dense_ground_state(xxz_chain(L, delta)))
                     .first;
        }
        return it->second;
    };
    for (int L = 2; L <= 12; ++L) {
        const auto& res = solve(L, 1.0);
        rows.push_back(GoldenRow{"isotropic", L, 1.0, "open", res.e0,
                                 res.residual_norm});
    }
    for (const double delta : {-1.0, -0.5, 0.0, 0.5, 1.0, 2.5}) {
        for (int L = 2; L <= 12; ++L) {
            const auto& res = solve(L, delta);
            rows.push_back(GoldenRow{"xxz", L, delta, "open", res.e0,
                                     res.residual_norm});
        }
    }
    return rows;
}

void write_sweep_csv(const std::string& path, const SweepResult& sweep) {
    std::ofstream os(path);
    if (!os) {
        throw std::runtime_error("cannot open " + path);
    }
    os << "delta,e_vqe,e_ed,rel_err\n";
    char buf[160];
    for (const auto& pt : sweep.points) {
        if (!pt.ok) {
            std::snprintf(buf, sizeof(buf), "%.4f,nan,nan,nan\n", pt.delta);
        } else {
            std::snprintf(buf, sizeof(buf), "%.4f,%.12e,%.12e,%.6e\n",
                          pt.delta, pt.e_vqe, pt.e_ed, pt.rel_err);
        }
        os << buf;
    }
}

void write_bench_csv(const std::string& path,
                     const std::vector<BenchRow>& rows) {
    std::ofstream os(path);
    if (!os) {
        throw std::runtime_error("cannot open " + path);
    }
    os << "L,mode,mean_eval_time_s,state_prep_time_s,estimate_time_s,"
          "mean_estimate,evals,status\n";
    char buf[200];
    for (const auto& r : rows) {
        if (r.skipped) {
            std::snprintf(buf, sizeof(buf), "%d,%s,,,,,%d,skipped\n",
                          r.n_sites, r.mode.c_str(), r.evals);
        } else {
            std::snprintf(buf, sizeof(buf),
                          "%d,%s,%.6e,%.6e,%.6e,%.12e,%d,ok\n", r.n_sites,
                          r.mode.c_str(), r.mean_eval_s, r.state_prep_s,
                          r.estimate_s, r.mean_estimate, r.evals);
        }
        os << buf;
    }
}

}  // namespace spinvqe
