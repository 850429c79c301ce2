#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rcs/sampleset.hpp"

namespace rcs {

// In-place unnormalized Walsh-Hadamard transform:
// out[S] = sum_x (-1)^<S,x> in[x]. Applying it twice multiplies by 2^n.
void fwht(std::span<double> values);

// Per-level decomposition of the sample/ideal cross-correlation. Level k
// collects the Walsh characters supported on exactly k qubits.
struct LevelSpectrum {
    int n = 0;
    // phi_by_level[k]: per-level fidelity estimate; absent below the weight
    // floor and at level 0.
    std::vector<std::optional<double>> phi_by_level;
    // weights_by_level[k]: sum over |S| = k of the ideal coefficients
    // hp(S)^2, with hp(S) = 2^-n fwht(p)[S].
    std::vector<double> weights_by_level;
    // cross_by_level[k]: sum over |S| = k of hq(S) hp(S); kept so that the
    // weighted level sum ties exactly back to the F_XEB estimate.
    std::vector<double> cross_by_level;
    // 3-sigma bootstrap bands around phi_by_level, when computed.
    std::vector<std::optional<std::pair<double, double>>> bands;
};

// Levels whose weight falls below this fraction of the largest level weight
// are reported absent.
inline constexpr double kLevelWeightFloor = 1e-3;

LevelSpectrum level_fidelity(const SampleSet& samples, std::span<const double> probs);

// Attaches 3-sigma bands from `resamples` bootstrap replicates of the sample
// set.
void add_bootstrap_bands(LevelSpectrum& spectrum, const SampleSet& samples,
                         std::span<const double> probs, int resamples, uint64_t seed);

// Theoretical level decay under independent readout flips: level k predicts
// phi times the mean over |S| = k of prod_{i in S} (1 - 2 e_i). The mean is
// weighted by the reference spectrum's hp(S)^2 when reference_probs is
// given, unweighted otherwise. Uniform rates give phi * (1-2e)^k exactly.
std::vector<double> readout_decay_curve(double phi, std::span<const double> eq, int n,
                                        std::span<const double> reference_probs = {});

struct SecondaryFit {
    double phi_hat = 0;
    double e_hat = 0;
    int levels_used = 0;
};

// Least-squares fit of log(phi_k) = log(phi) + k log(1-2e) over the usable
// levels in [k_min, k_max]. Usable: weight above floor and positive estimate.
// Throws ValidationError with fewer than three usable levels.
SecondaryFit fit_secondary_fidelity(const LevelSpectrum& spectrum, int k_min, int k_max);

// Weighted level sum: sum_k phi_k w_k / sum_k w_k over k >= 1. Equals
// f_xeb / (2^n sum p^2 - 1) for the same samples, exactly.
double spectrum_weighted_fidelity(const LevelSpectrum& spectrum);

// The total fidelity a (phi, e) secondary fit implies, weighted by the
// spectrum: phi * sum_k w_k (1-2e)^k / sum_k w_k. Comparable to the primary
// F_XEB-derived fidelity.
double readout_dressed_fidelity(const LevelSpectrum& spectrum, double phi_hat, double e_hat);

} // namespace rcs
