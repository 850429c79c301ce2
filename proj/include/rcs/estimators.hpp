#pragma once

#include <functional>
#include <optional>
#include <span>

#include "rcs/noise.hpp"
#include "rcs/sampleset.hpp"

namespace rcs {

struct XebResult {
    double estimate = 0;
    double std_error = 0;
    size_t n_samples = 0;
};

// Probability of a sampled bitstring under the ideal circuit; nullopt marks a
// bitstring the caller cannot price, which f_xeb reports as an error.
using ProbLookup = std::function<std::optional<double>(uint64_t)>;

// Linear cross-entropy estimator: mean of 2^n * P(x_i) minus one, with the
// sample standard error of the mean.
XebResult f_xeb(const SampleSet& samples, const ProbLookup& lookup);
XebResult f_xeb(const SampleSet& samples, std::span<const double> probs);
// Per-sample probabilities aligned with the sample order, as read from an
// amplitude file.
XebResult f_xeb_aligned(const SampleSet& samples, std::span<const double> per_sample_probs);

// Component-product fidelity prediction: the product of (1 - e) over every
// 1-gate occurrence, 2-gate occurrence, and measured qubit. Evaluated in log
// space. Throws ValidationError when a component rate is missing.
double predict_fidelity(const ComponentErrorRates& rates, const Circuit& circuit);

struct AveragedRates {
    double e1 = 0.0016;
    double e2 = 0.0062;
    double eq = 0.038;
};

// Averaged-rate variant: (1-e1)^g1 * (1-e2)^g2 * (1-eq)^n.
double predict_fidelity_averaged(int n, long g1, long g2, const AveragedRates& rates = {});

struct KsResult {
    double statistic = 0;
    double p_value = 0;
};

// One-sample Kolmogorov-Smirnov test of the rescaled output probabilities
// {2^n p_x} against Exp(1), the Porter-Thomas law of chaotic circuits.
KsResult porter_thomas_check(std::span<const double> probs);

// Total variation distance between the empirical sample distribution and the
// phi-mixture model. Exhaustive over 2^n cells; n <= 14.
double empirical_model_distance(const SampleSet& samples, std::span<const double> probs,
                                double phi);

struct FidelityReport {
    XebResult xeb;
    std::optional<double> predicted_phi;
    std::optional<double> predicted_phi_averaged;
    std::optional<KsResult> porter_thomas;
};

} // namespace rcs
