#include "spinvqe/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>

#include "spinvqe/errors.hpp"
#include "spinvqe/hamiltonian.hpp"

namespace spinvqe {

namespace {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

struct Recorder {
    OptimizationTrace trace;
    Stopwatch clock;
    double best = std::numeric_limits<double>::infinity();

    void add(int iter, const std::vector<double>& x,
             const EnergyEstimate& e) {
        best = std::min(best, e.value);
        trace.iterations.push_back(IterationRecord{
            iter, AnsatzParams::unflatten(x), e, best, clock.seconds()});
    }
};

EnergyEstimate checked(const EnergyEstimate& e) {
    if (!std::isfinite(e.value)) {
        throw OptimizerAbort("optimizer: cost returned a non-finite value");
    }
    return e;
}

// relative best-energy improvement < ftol over the window
bool tolerance_reached(const OptimizationTrace& trace, int window,
                       double ftol) {
    const auto n = trace.iterations.size();
    if (n < static_cast<std::size_t>(window) + 1) return false;
    const double now = trace.iterations[n - 1].best_energy;
    const double then =
        trace.iterations[n - 1 - static_cast<std::size_t>(window)]
            .best_energy;
    return (then - now) < ftol * std::max(1.0, std::abs(now));
}

MinimizeResult run_nelder_mead(const OptimizerConfig& config,
                               const CostHandle& cost,
                               const std::vector<double>& x0, int window) {
    const std::size_t n = x0.size();
    // adaptive coefficients (Gao & Han)
    const double rho = 1.0;
    const double chi = 1.0 + 2.0 / static_cast<double>(n);
    const double psi = 0.75 - 0.5 / static_cast<double>(n);
    const double sigma = 1.0 - 1.0 / static_cast<double>(n);

    Recorder rec;
    long long evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        return checked(cost(AnsatzParams::unflatten(x)));
    };

    std::vector<std::vector<double>> verts(n + 1, x0);
    std::vector<EnergyEstimate> fv(n + 1);
    for (std::size_t i = 1; i <= n; ++i) {
        verts[i][i - 1] += config.nm_simplex_step;
    }
    for (std::size_t i = 0; i <= n; ++i) fv[i] = eval(verts[i]);

    std::vector<std::size_t> order(n + 1);
    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) {
                             return fv[a].value < fv[b].value;
                         });
    };

    for (int iter = 0; iter < config.max_iters; ++iter) {
        sort_simplex();
        const std::size_t ib = order[0];
        const std::size_t iw = order[n];

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == iw) continue;
            for (std::size_t d = 0; d < n; ++d) centroid[d] += verts[i][d];
        }
        for (auto& c : centroid) c /= static_cast<double>(n);

        auto mix = [&](double t) {
            std::vector<double> x(n);
            for (std::size_t d = 0; d < n; ++d) {
                x[d] = centroid[d] + t * (centroid[d] - verts[iw][d]);
            }
            return x;
        };

        const auto xr = mix(rho);
        const auto fr = eval(xr);
        if (fr.value < fv[ib].value) {
            const auto xe = mix(rho * chi);
            const auto fe = eval(xe);
            if (fe.value < fr.value) {
                verts[iw] = xe;
                fv[iw] = fe;
            } else {
                verts[iw] = xr;
                fv[iw] = fr;
            }
        } else if (fr.value < fv[order[n - 1]].value) {
            verts[iw] = xr;
            fv[iw] = fr;
        } else {
            const bool outside = fr.value < fv[iw].value;
            const auto xc = mix(outside ? rho * psi : -psi);
            const auto fc = eval(xc);
            if (fc.value < std::min(fr.value, fv[iw].value)) {
                verts[iw] = xc;
                fv[iw] = fc;
            } else {
                // shrink toward the best vertex
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == ib) continue;
                    for (std::size_t d = 0; d < n; ++d) {
                        verts[i][d] = verts[ib][d] +
                                      sigma * (verts[i][d] - verts[ib][d]);
                    }
                    fv[i] = eval(verts[i]);
                }
            }
        }

        sort_simplex();
        rec.add(iter, verts[order[0]], fv[order[0]]);
        if (tolerance_reached(rec.trace, window, config.ftol)) {
            rec.trace.converged = true;
            rec.trace.stop_reason = StopReason::Tolerance;
            break;
        }
        double spread = 0.0;
        for (std::size_t d = 0; d < n; ++d) {
            spread = std::max(spread, std::abs(verts[order[n]][d] -
                                               verts[order[0]][d]));
        }
        if (spread < 1e-13) {
            rec.trace.converged = true;
            rec.trace.stop_reason = StopReason::Stall;
            break;
        }
    }

    sort_simplex();
    rec.trace.cost_evaluations = evals;
    return MinimizeResult{AnsatzParams::unflatten(verts[order[0]]),
                          fv[order[0]], std::move(rec.trace)};
}

MinimizeResult run_spsa(const OptimizerConfig& config, const CostHandle& cost,
                        const std::vector<double>& x0, int window) {
    const std::size_t n = x0.size();
    std::mt19937_64 rng(config.seed);
    std::bernoulli_distribution coin(0.5);

    Recorder rec;
    long long evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        return checked(cost(AnsatzParams::unflatten(x)));
    };

    std::vector<double> x = x0;
    const double big_a = config.spsa_stability_frac * config.max_iters;
    const int tail = std::max(
        1, static_cast<int>(config.spsa_avg_frac * config.max_iters));
    std::deque<std::vector<double>> tail_window;
    std::vector<double> xp(n), xm(n);

    int iter = 0;
    for (; iter < config.max_iters; ++iter) {
        const double step_len =
            config.spsa_step0 *
            std::pow((big_a + 1.0) / (iter + 1.0 + big_a),
                     config.spsa_alpha);
        const double ck =
            config.spsa_c / std::pow(iter + 1.0, config.spsa_gamma);
        std::vector<double> dir(n);
        for (auto& d : dir) d = coin(rng) ? 1.0 : -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            xp[i] = x[i] + ck * dir[i];
            xm[i] = x[i] - ck * dir[i];
        }
        const auto fp = eval(xp);
        const auto fm = eval(xm);
        const double scale = (fp.value - fm.value) / (2.0 * ck);
        std::vector<double> ghat(n);
        double gnorm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            ghat[i] = scale * dir[i];
            gnorm += ghat[i] * ghat[i];
        }
        gnorm = std::sqrt(gnorm);
        // raw SPSA step, capped at the scheduled trust length so a noisy
        // or steep gradient estimate cannot kick the iterate away
        const double shrink =
            gnorm > step_len / ak_unit ? step_len / (ak_unit * gnorm) : 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] -= ak_unit * shrink * ghat[i];
        }
        tail_window.push_back(x);
        if (static_cast<int>(tail_window.size()) > tail) {
            tail_window.pop_front();
        }

        EnergyEstimate mid;
        mid.value = 0.5 * (fp.value + fm.value);
        mid.std_error =
            0.5 * std::hypot(fp.std_error, fm.std_error);
        mid.shots_used = fp.shots_used + fm.shots_used;
        mid.wall_time_s = fp.wall_time_s + fm.wall_time_s;
        rec.add(iter, x, mid);
        if (tolerance_reached(rec.trace, window, config.ftol)) {
            rec.trace.converged = true;
            rec.trace.stop_reason = StopReason::Tolerance;
            ++iter;
            break;
        }
    }

    // the returned point is the tail average of the iterates
    std::vector<double> xavg(n, 0.0);
    for (const auto& v : tail_window) {
        for (std::size_t i = 0; i < n; ++i) xavg[i] += v[i];
    }
    for (auto& v : xavg) v /= static_cast<double>(tail_window.size());
    const auto favg = eval(xavg);
    rec.add(iter, xavg, favg);
    rec.trace.cost_evaluations = evals;
    return MinimizeResult{AnsatzParams::unflatten(xavg), favg,
                          std::move(rec.trace)};
}

MinimizeResult run_lbfgs(const OptimizerConfig& config, const CostHandle& cost,
                         const GradientHandle& gradient,
                         const std::vector<double>& x0, int window) {
    const std::size_t n = x0.size();
    Recorder rec;
    long long evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        return checked(cost(AnsatzParams::unflatten(x)));
    };
    auto grad = [&](const std::vector<double>& x) {
        return gradient(AnsatzParams::unflatten(x));
    };

    std::vector<double> x = x0;
    EnergyEstimate f = eval(x);
    std::vector<double> g = grad(x);

    std::deque<std::vector<double>> s_hist, y_hist;
    std::deque<double> rho_hist;

    auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    };

    for (int iter = 0; iter < config.max_iters; ++iter) {
        const double gnorm = std::sqrt(dot(g, g));
        if (gnorm < config.gd_gtol) {
            rec.add(iter, x, f);
            rec.trace.converged = true;
            rec.trace.stop_reason = StopReason::Tolerance;
            break;
        }

        // two-loop recursion for the search direction
        std::vector<double> q = g;
        std::vector<double> alphas(s_hist.size());
        for (std::size_t i = s_hist.size(); i-- > 0;) {
            alphas[i] = rho_hist[i] * dot(s_hist[i], q);
            for (std::size_t d = 0; d < n; ++d) {
                q[d] -= alphas[i] * y_hist[i][d];
            }
        }
        double h0 = 1.0;
        if (!s_hist.empty()) {
            h0 = dot(s_hist.back(), y_hist.back()) /
                 std::max(dot(y_hist.back(), y_hist.back()), 1e-300);
        }
        for (auto& v : q) v *= h0;
        for (std::size_t i = 0; i < s_hist.size(); ++i) {
            const double beta = rho_hist[i] * dot(y_hist[i], q);
            for (std::size_t d = 0; d < n; ++d) {
                q[d] += s_hist[i][d] * (alphas[i] - beta);
            }
        }
        // descent direction
        std::vector<double> dir = q;
        double dg = -dot(dir, g);
        if (dg >= 0.0) {  // fall back to steepest descent
            dir = g;
            for (auto& v : dir) v /= gnorm;
            dg = -gnorm;
        }

        // Armijo backtracking
        double step = s_hist.empty() ? std::min(1.0, 1.0 / gnorm) : 1.0;
        bool moved = false;
        std::vector<double> xt(n);
        EnergyEstimate ft;
        for (int ls = 0; ls < 40; ++ls) {
            for (std::size_t d = 0; d < n; ++d) {
                xt[d] = x[d] - step * dir[d];
            }
            ft = eval(xt);
            if (ft.value <= f.value + 1e-4 * step * dg) {
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) {
            rec.add(iter, x, f);
            rec.trace.converged = true;
            rec.trace.stop_reason = StopReason::Stall;
            break;
        }

        std::vector<double> gnew = grad(xt);
        std::vector<double> s(n), y(n);
        for (std::size_t d = 0; d < n; ++d) {
            s[d] = xt[d] - x[d];
            y[d] = gnew[d] - g[d];
        }
        const double sy = dot(s, y);
        if (sy > 1e-12) {
            s_hist.push_back(std::move(s));
            y_hist.push_back(std::move(y));
            rho_hist.push_back(1.0 / sy);
            if (static_cast<int>(s_hist.size()) > config.lbfgs_memory) {
                s_hist.pop_front();
                y_hist.pop_front();
                rho_hist.pop_front();
            }
        }
        x = xt;
        f = ft;
        g = std::move(gnew);

        rec.add(iter, x, f);
        if (tolerance_reached(rec.trace, window, config.ftol)) {
            rec.trace.converged = true;
            rec.trace.stop_reason = StopReason::Tolerance;
            break;
        }
    }
    rec.trace.cost_evaluations = evals;
    return MinimizeResult{AnsatzParams::unflatten(x), f,
                          std::move(rec.trace)};
}

}  // namespace

MinimizeResult minimize(const OptimizerConfig& config, const CostHandle& cost,
                        const AnsatzParams& initial,
                        const GradientHandle& gradient) {
    if (config.max_iters < 1 || config.ftol <= 0.0) {
        throw std::invalid_argument("minimize: bad iteration cap/tolerance");
    }
    const std::vector<double> x0 = initial.flatten();
    int window = config.stall_window;
    if (window <= 0) {
        window = config.method == OptMethod::Spsa
                     ? std::max(50, config.max_iters / 4)
                     : 50;
    }
    switch (config.method) {
        case OptMethod::NelderMead:
            return run_nelder_mead(config, cost, x0, window);
        case OptMethod::Spsa:
            return run_spsa(config, cost, x0, window);
        case OptMethod::GradientDescent:
            if (!gradient) {
                throw std::invalid_argument(
                    "minimize: gradient-descent needs a gradient handle");
            }
            return run_lbfgs(config, cost, gradient, x0, window);
    }
    throw std::invalid_argument("minimize: unknown method");
}

std::vector<double> exact_energy_gradient(const AnsatzParams& params,
                                          double delta, int L) {
    const PauliHamiltonian ht = xxz_chain(L, delta);
    const auto [h1, h2] = split_even_odd(ht);
    const int p = params.p();

    StateVector phi = apply_ansatz(params, delta, L);
    StateVector lam = apply_hamiltonian(ht, phi);

    std::vector<double> grad(2 * static_cast<std::size_t>(p), 0.0);
    for (int j = 2 * p - 1; j >= 0; --j) {
        const int level = j / 2;
        const int parity = j % 2;  // 0: H2/gamma layer, 1: H1/beta layer
        const PauliHamiltonian& half = parity == 0 ? h2 : h1;
        const double theta =
            parity == 0 ? params.gammas[static_cast<std::size_t>(level)]
                        : params.betas[static_cast<std::size_t>(level)];

        const StateVector gphi = apply_hamiltonian(half, phi);
        grad[static_cast<std::size_t>(j)] = 2.0 * lam.inner(gphi).imag();

        apply_bond_layer(phi, -theta, delta, parity);
        apply_bond_layer(lam, -theta, delta, parity);
    }
    return grad;
}

}  // namespace spinvqe
