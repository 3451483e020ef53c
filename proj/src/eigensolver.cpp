#include "spinvqe/eigensolver.hpp"

#include <lapacke.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "spinvqe/errors.hpp"

namespace spinvqe {

namespace {

// All X/Y/Z two-site terms have real matrix elements in the computational
// basis, so the chain Hamiltonian is real symmetric.
std::vector<double> dense_matrix(const PauliHamiltonian& h) {
    const std::size_t dim = std::size_t{1} << h.n_sites;
    std::vector<double> mat(dim * dim, 0.0);
    for (const auto& t : h.terms) {
        const std::uint64_t ma = std::uint64_t{1} << (t.site_a - 1);
        const std::uint64_t mb = std::uint64_t{1} << (t.site_b - 1);
        const std::uint64_t mask = ma | mb;
        for (std::size_t col = 0; col < dim; ++col) {
            switch (t.axis) {
                case Axis::Z: {
                    const bool eq = ((col & ma) != 0) == ((col & mb) != 0);
                    mat[col * dim + col] += eq ? t.coeff : -t.coeff;
                    break;
                }
                case Axis::X:
                    mat[(col ^ mask) * dim + col] += t.coeff;
                    break;
                case Axis::Y: {
                    const bool eq = ((col & ma) != 0) == ((col & mb) != 0);
                    mat[(col ^ mask) * dim + col] +=
                        eq ? -t.coeff : t.coeff;
                    break;
                }
            }
        }
    }
    return mat;
}

double residual_of(const PauliHamiltonian& h, const StateVector& v,
                   double e0) {
    const StateVector hv = apply_hamiltonian(h, v);
    double s = 0.0;
    for (std::size_t k = 0; k < v.dim(); ++k) {
        s += std::norm(hv.amp(k) - e0 * v.amp(k));
    }
    return std::sqrt(s);
}

}  // namespace

SpectrumResult dense_ground_state(const PauliHamiltonian& h) {
    if (h.n_sites > kDenseMaxSites) {
        throw CapacityError("dense_ground_state: L > 12 needs Lanczos");
    }
    const lapack_int dim = lapack_int{1} << h.n_sites;
    std::vector<double> mat = dense_matrix(h);
    std::vector<double> evals(1);
    std::vector<double> evecs(static_cast<std::size_t>(dim));
    std::vector<lapack_int> isuppz(2);
    lapack_int found = 0;
    const lapack_int info = LAPACKE_dsyevr(
        LAPACK_COL_MAJOR, 'V', 'I', 'U', dim, mat.data(), dim, 0.0, 0.0, 1,
        1, 0.0, &found, evals.data(), evecs.data(), dim, isuppz.data());
    if (info != 0 || found < 1) {
        throw std::runtime_error("dense_ground_state: dsyevr failed");
    }
    SpectrumResult res;
    res.e0 = evals[0];
    res.method = SpectrumResult::Method::Dense;
    StateVector v(h.n_sites);
    for (std::size_t k = 0; k < v.dim(); ++k) {
        v.amplitudes()[k] = evecs[k];
    }
    res.residual_norm = residual_of(h, v, res.e0);
    res.ground_vector = std::move(v);
    return res;
}

SpectrumResult lanczos_ground_state(const PauliHamiltonian& h,
                                    const LanczosOptions& opts) {
    if (h.n_sites > kLanczosMaxSites) {
        throw CapacityError("lanczos_ground_state: L > 24 not supported");
    }
    const std::size_t dim = std::size_t{1} << h.n_sites;
    const int m_max = std::max(
        2, static_cast<int>(
               std::min<std::size_t>(
                   static_cast<std::size_t>(opts.krylov_dim), dim)));

    // random normalized start vector
    StateVector v(h.n_sites);
    {
        std::mt19937_64 rng(opts.seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (auto& a : v.amplitudes()) a = cplx{gauss(rng), gauss(rng)};
        const double nrm = v.norm();
        for (auto& a : v.amplitudes()) a /= nrm;
    }

    double best_e0 = 0.0;
    double best_res = std::numeric_limits<double>::infinity();

    for (int restart = 0; restart <= opts.max_restarts; ++restart) {
        std::vector<StateVector> basis;
        basis.reserve(static_cast<std::size_t>(m_max));
        basis.push_back(v);
        std::vector<double> alpha;
        std::vector<double> beta;  // beta[j] couples basis j and j+1

        for (int j = 0; j < m_max; ++j) {
            StateVector w = apply_hamiltonian(h, basis.back());
            const double a = basis.back().inner(w).real();
            alpha.push_back(a);
            if (j + 1 == m_max) break;
            // w -= alpha * v_j + beta_{j-1} * v_{j-1}, then full
            // reorthogonalization against every basis vector
            for (std::size_t k = 0; k < w.dim(); ++k) {
                w.amplitudes()[k] -= a * basis.back().amp(k);
            }
            if (j > 0) {
                const double b = beta.back();
                for (std::size_t k = 0; k < w.dim(); ++k) {
                    w.amplitudes()[k] -= b * basis[basis.size() - 2].amp(k);
                }
            }
            for (const auto& u : basis) {
                const cplx ov = u.inner(w);
                for (std::size_t k = 0; k < w.dim(); ++k) {
                    w.amplitudes()[k] -= ov * u.amp(k);
                }
            }
            const double b = w.norm();
            if (b < 1e-13) break;  // invariant subspace reached
            for (auto& x : w.amplitudes()) x /= b;
            beta.push_back(b);
            basis.push_back(std::move(w));
        }

        // lowest eigenpair of the tridiagonal
        const lapack_int m = static_cast<lapack_int>(alpha.size());
        std::vector<double> d = alpha;
        std::vector<double> e(beta.begin(),
                              beta.begin() + std::max<std::size_t>(
                                                 alpha.size() - 1, 0));
        std::vector<double> z(static_cast<std::size_t>(m) * m);
        const lapack_int info = LAPACKE_dstev(LAPACK_COL_MAJOR, 'V', m,
                                              d.data(), e.data(), z.data(),
                                              m);
        if (info != 0) {
            throw std::runtime_error("lanczos_ground_state: dstev failed");
        }

        // Ritz vector for the smallest eigenvalue
        StateVector ritz(h.n_sites);
        std::fill(ritz.amplitudes().begin(), ritz.amplitudes().end(),
                  cplx{0.0, 0.0});
        for (std::size_t j = 0; j < basis.size() && j < alpha.size(); ++j) {
            const double c = z[j];  // first column
            if (c == 0.0) continue;
            for (std::size_t k = 0; k < dim; ++k) {
                ritz.amplitudes()[k] += c * basis[j].amp(k);
            }
        }
        const double nrm = ritz.norm();
        for (auto& a : ritz.amplitudes()) a /= nrm;

        const double e0 = d[0];
        const double res = residual_of(h, ritz, e0);
        if (res < best_res) {
            best_res = res;
            best_e0 = e0;
        }
        if (res < opts.tol * std::max(1.0, std::abs(e0))) {
            SpectrumResult out;
            out.e0 = e0;
            out.method = SpectrumResult::Method::Lanczos;
            out.residual_norm = res;
            if (opts.want_vector) out.ground_vector = std::move(ritz);
            return out;
        }
        v = std::move(ritz);
    }
    throw ConvergenceError("lanczos_ground_state: restart cap exceeded",
                           best_e0, best_res);
}

SpectrumResult ground_state_auto(const PauliHamiltonian& h,
                                 std::uint64_t seed) {
    if (h.n_sites <= kDenseMaxSites) return dense_ground_state(h);
    LanczosOptions opts;
    opts.seed = seed;
    return lanczos_ground_state(h, opts);
}

void write_golden_csv(const std::string& path,
                      const std::vector<GoldenRow>& rows) {
    std::ofstream os(path);
    if (!os) {
        throw std::runtime_error("write_golden_csv: cannot open " + path);
    }
    os << "model,L,delta,boundary,e0,residual\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%s,%d,%.4f,%s,%.15e,%.3e\n",
                      r.model.c_str(), r.n_sites, r.delta,
                      r.boundary.c_str(), r.e0, r.residual);
        os << buf;
    }
}

std::vector<GoldenRow> read_golden_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) {
        throw std::runtime_error("read_golden_csv: cannot open " + path);
    }
    std::vector<GoldenRow> rows;
    std::string line;
    std::getline(is, line);  // header
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        GoldenRow r;
        std::string field;
        std::getline(ss, r.model, ',');
        std::getline(ss, field, ',');
        r.n_sites = std::stoi(field);
        std::getline(ss, field, ',');
        r.delta = std::stod(field);
        std::getline(ss, r.boundary, ',');
        std::getline(ss, field, ',');
        r.e0 = std::stod(field);
        std::getline(ss, field, ',');
        r.residual = std::stod(field);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::optional<GoldenRow> find_golden(const std::vector<GoldenRow>& rows,
                                     const std::string& model, int n_sites,
                                     double delta) {
    for (const auto& r : rows) {
        if (r.model == model && r.n_sites == n_sites &&
            std::abs(r.delta - delta) < 1e-9) {
            return r;
        }
    }
    return std::nullopt;
}

}  // namespace spinvqe
