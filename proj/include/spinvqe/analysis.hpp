#pragma once

#include <span>
#include <string>
#include <vector>

#include "spinvqe/statevector.hpp"

namespace spinvqe {

enum class CorrelationKind { ZZ, XX, FullDot };

struct CorrelationProfile {
    int reference_site = 1;
    CorrelationKind kind = CorrelationKind::ZZ;
    std::vector<double> values;  // values[r-1] = C(r), r = 1..L-ref

    double at(int r) const { return values[static_cast<std::size_t>(r - 1)]; }
};

// C(r) = <S^a_ref S^a_{ref+r}> (or the full dot product), exact from the
// state. reference_site is 1-based and must be < L.
CorrelationProfile correlation_function(
    const StateVector& psi, int reference_site,
    CorrelationKind kind = CorrelationKind::ZZ);

struct EntropyProfile {
    std::vector<double> values;  // values[l-1] = S(l), nats

    double at(int cut) const {
        return values[static_cast<std::size_t>(cut - 1)];
    }
};

EntropyProfile entropy_profile(const StateVector& psi);

// Coefficient of determination of `predicted` against the ground-truth
// `reference`; throws on a constant reference.
double r_squared(std::span<const double> predicted,
                 std::span<const double> reference);

// Comparative decay fit: least-squares residuals of ln|C| against r
// (exponential model) and against ln r (power-law model).
struct DecayFit {
    enum class Preference { Exponential, PowerLaw };
    Preference preferred = Preference::PowerLaw;
    double ss_exponential = 0.0;
    double ss_power = 0.0;
    double exp_rate = 0.0;      // fitted 1/xi
    double pow_exponent = 0.0;  // fitted eta
    int points_used = 0;
};

struct DecayFitOptions {
    bool odd_r_only = false;
    int r_max = 0;          // 0 = all distances
    double floor = 1e-12;   // |C| below this is dropped
};

DecayFit decay_classification(const CorrelationProfile& profile,
                              const DecayFitOptions& opts = {});

void write_correlation_csv(const std::string& path,
                           const CorrelationProfile& profile);
void write_entropy_csv(const std::string& path,
                       const EntropyProfile& profile);

}  // namespace spinvqe
