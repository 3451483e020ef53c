#include "spinvqe/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace spinvqe {

namespace {

// <S^a_i S^a_j> for an arbitrary (not necessarily adjacent) site pair,
// sites 1-based.
double two_site_spin_corr(const StateVector& psi, char axis, int site_i,
                          int site_j) {
    const auto amps = psi.amplitudes();
    const std::uint64_t mi = std::uint64_t{1} << (site_i - 1);
    const std::uint64_t mj = std::uint64_t{1} << (site_j - 1);
    const std::uint64_t mask = mi | mj;
    double out = 0.0;
    switch (axis) {
        case 'z':
            for (std::size_t k = 0; k < amps.size(); ++k) {
                const bool eq = ((k & mi) != 0) == ((k & mj) != 0);
                out += (eq ? 1.0 : -1.0) * std::norm(amps[k]);
            }
            break;
        case 'x':
            for (std::size_t k = 0; k < amps.size(); ++k) {
                out += (std::conj(amps[k]) * amps[k ^ mask]).real();
            }
            break;
        case 'y':
            for (std::size_t k = 0; k < amps.size(); ++k) {
                const bool eq = ((k & mi) != 0) == ((k & mj) != 0);
                out += (eq ? -1.0 : 1.0) *
                       (std::conj(amps[k]) * amps[k ^ mask]).real();
            }
            break;
        default:
            throw std::invalid_argument("two_site_spin_corr: bad axis");
    }
    return out / 4.0;  // S = sigma/2 on both sites
}

}  // namespace

CorrelationProfile correlation_function(const StateVector& psi,
                                        int reference_site,
                                        CorrelationKind kind) {
    const int L = psi.n_qubits();
    if (reference_site < 1 || reference_site >= L) {
        throw std::invalid_argument(
            "correlation_function: reference site out of range");
    }
    CorrelationProfile prof;
    prof.reference_site = reference_site;
    prof.kind = kind;
    for (int r = 1; reference_site + r <= L; ++r) {
        const int j = reference_site + r;
        double c = 0.0;
        switch (kind) {
            case CorrelationKind::ZZ:
                c = two_site_spin_corr(psi, 'z', reference_site, j);
                break;
            case CorrelationKind::XX:
                c = two_site_spin_corr(psi, 'x', reference_site, j);
                break;
            case CorrelationKind::FullDot:
                c = two_site_spin_corr(psi, 'x', reference_site, j) +
                    two_site_spin_corr(psi, 'y', reference_site, j) +
                    two_site_spin_corr(psi, 'z', reference_site, j);
                break;
        }
        prof.values.push_back(c);
    }
    return prof;
}

EntropyProfile entropy_profile(const StateVector& psi) {
    EntropyProfile prof;
    for (int cut = 1; cut < psi.n_qubits(); ++cut) {
        prof.values.push_back(psi.subsystem_entropy(cut));
    }
    return prof;
}

double r_squared(std::span<const double> predicted,
                 std::span<const double> reference) {
    if (predicted.size() != reference.size() || reference.size() < 2) {
        throw std::invalid_argument("r_squared: need equal lengths >= 2");
    }
    double mean = 0.0;
    for (double v : reference) mean += v;
    mean /= static_cast<double>(reference.size());
    double ss_tot = 0.0;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        ss_tot += (reference[i] - mean) * (reference[i] - mean);
        ss_res += (predicted[i] - reference[i]) *
                  (predicted[i] - reference[i]);
    }
    if (ss_tot == 0.0) {
        throw std::invalid_argument("r_squared: constant reference");
    }
    return 1.0 - ss_res / ss_tot;
}

DecayFit decay_classification(const CorrelationProfile& profile,
                              const DecayFitOptions& opts) {
    std::vector<double> rs;
    std::vector<double> ys;  // ln |C|
    for (std::size_t i = 0; i < profile.values.size(); ++i) {
        const int r = static_cast<int>(i) + 1;
        if (opts.r_max > 0 && r > opts.r_max) break;
        if (opts.odd_r_only && r % 2 == 0) continue;
        const double a = std::abs(profile.values[i]);
        if (a <= opts.floor) continue;
        rs.push_back(static_cast<double>(r));
        ys.push_back(std::log(a));
    }
    if (rs.size() < 3) {
        throw std::invalid_argument(
            "decay_classification: need at least 3 usable points");
    }

    auto line_fit_ss = [&](const std::vector<double>& xs, double* slope) {
        const double n = static_cast<double>(xs.size());
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        const double denom = n * sxx - sx * sx;
        const double b = (n * sxy - sx * sy) / denom;
        const double a = (sy - b * sx) / n;
        double ss = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double resid = ys[i] - (a + b * xs[i]);
            ss += resid * resid;
        }
        *slope = b;
        return ss;
    };

    std::vector<double> log_rs(rs.size());
    for (std::size_t i = 0; i < rs.size(); ++i) log_rs[i] = std::log(rs[i]);

    DecayFit fit;
    double slope_exp = 0.0;
    double slope_pow = 0.0;
    fit.ss_exponential = line_fit_ss(rs, &slope_exp);
    fit.ss_power = line_fit_ss(log_rs, &slope_pow);
    fit.exp_rate = -slope_exp;
    fit.pow_exponent = -slope_pow;
    fit.points_used = static_cast<int>(rs.size());
    fit.preferred = fit.ss_exponential < fit.ss_power
                        ? DecayFit::Preference::Exponential
                        : DecayFit::Preference::PowerLaw;
    return fit;
}

void write_correlation_csv(const std::string& path,
                           const CorrelationProfile& profile) {
    std::ofstream os(path);
    if (!os) {
        throw std::runtime_error("write_correlation_csv: cannot open " +
                                 path);
    }
    os << "r,c\n";
    char buf[64];
    for (std::size_t i = 0; i < profile.values.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%.12e\n", i + 1,
                      profile.values[i]);
        os << buf;
    }
}

void write_entropy_csv(const std::string& path,
                       const EntropyProfile& profile) {
    std::ofstream os(path);
    if (!os) {
        throw std::runtime_error("write_entropy_csv: cannot open " + path);
    }
    os << "cut,entropy_nats\n";
    char buf[64];
    for (std::size_t i = 0; i < profile.values.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%.12e\n", i + 1,
                      profile.values[i]);
        os << buf;
    }
}

}  // namespace spinvqe
