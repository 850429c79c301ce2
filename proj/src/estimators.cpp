#include "rcs/estimators.hpp"

#include <algorithm>
#include <cmath>

#include "rcs/errors.hpp"

namespace rcs {

XebResult f_xeb(const SampleSet& samples, const ProbLookup& lookup) {
    if (samples.size() == 0) throw ValidationError("f_xeb requires at least one sample");
    const double scale = std::pow(2.0, samples.n);
    double sum = 0.0, sum_sq = 0.0;
    for (size_t i = 0; i < samples.size(); ++i) {
        const auto p = lookup(samples.bits[i]);
        if (!p)
            throw ValidationError("no probability available for sampled bitstring " +
                                  samples.bitstring(i));
        const double v = scale * *p;
        sum += v;
        sum_sq += v * v;
    }
    const double num = static_cast<double>(samples.size());
    const double mean = sum / num;
    double variance = 0.0;
    if (samples.size() > 1) variance = std::max(0.0, (sum_sq - num * mean * mean) / (num - 1.0));
    return {mean - 1.0, std::sqrt(variance / num), samples.size()};
}

XebResult f_xeb(const SampleSet& samples, std::span<const double> probs) {
    return f_xeb(samples, [&](uint64_t x) -> std::optional<double> {
        if (x >= probs.size()) return std::nullopt;
        return probs[x];
    });
}

XebResult f_xeb_aligned(const SampleSet& samples, std::span<const double> per_sample_probs) {
    if (per_sample_probs.size() != samples.size())
        throw AlignmentError("per-sample probabilities have " +
                             std::to_string(per_sample_probs.size()) + " entries for " +
                             std::to_string(samples.size()) + " samples");
    size_t i = 0;
    return f_xeb(samples,
                 [&](uint64_t) -> std::optional<double> { return per_sample_probs[i++]; });
}

double predict_fidelity(const ComponentErrorRates& rates, const Circuit& circuit) {
    rates.validate();
    double log_product = 0.0;
    int ones_layer = 0, twos_layer = 0;
    for (const auto& moment : circuit.moments) {
        if (const auto* ones = std::get_if<OnesMoment>(&moment)) {
            for (const auto& g : ones->gates) {
                auto it = rates.one_gate.find({ones_layer, g.target});
                if (it == rates.one_gate.end())
                    throw ValidationError("no error rate for the 1-gate on layer " +
                                          std::to_string(ones_layer));
                log_product += std::log1p(-it->second);
            }
            ++ones_layer;
        } else if (const auto* twos = std::get_if<TwosMoment>(&moment)) {
            for (const auto& g : twos->gates) {
                auto it = rates.two_gate.find({twos_layer, g.edge()});
                if (it == rates.two_gate.end())
                    throw ValidationError("no error rate for a 2-gate on layer " +
                                          std::to_string(twos_layer));
                log_product += std::log1p(-it->second);
            }
            ++twos_layer;
        }
    }
    for (const auto& q : circuit.qubits) {
        auto it = rates.readout.find(q);
        if (it == rates.readout.end())
            throw ValidationError("no readout rate for a measured qubit");
        log_product += std::log1p(-(it->second.p01 + it->second.p10) / 2.0);
    }
    return std::exp(log_product);
}

double predict_fidelity_averaged(int n, long g1, long g2, const AveragedRates& rates) {
    if (n < 0 || g1 < 0 || g2 < 0)
        throw ValidationError("gate and qubit counts must be non-negative");
    const double log_product = static_cast<double>(g1) * std::log1p(-rates.e1) +
                               static_cast<double>(g2) * std::log1p(-rates.e2) +
                               static_cast<double>(n) * std::log1p(-rates.eq);
    return std::exp(log_product);
}

namespace {

// Complement of the Kolmogorov limit distribution via Stephens' small-sample
// correction.
double ks_p_value(double statistic, size_t m) {
    const double sm = std::sqrt(static_cast<double>(m));
    const double lambda = statistic * (sm + 0.12 + 0.11 / sm);
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += sign * term;
        sign = -sign;
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

} // namespace

KsResult porter_thomas_check(std::span<const double> probs) {
    if (probs.empty() || (probs.size() & (probs.size() - 1)) != 0)
        throw ValidationError("probability array length must be a power of two");
    int n = 0;
    while ((1ULL << n) < probs.size()) ++n;
    if (n > 20) throw ValidationError("exhaustive Porter-Thomas check supports n <= 20");
    double total = 0.0;
    for (double p : probs) total += p;
    if (std::abs(total - 1.0) > 1e-8)
        throw ValidationError("probabilities sum to " + std::to_string(total) +
                              ", expected 1 within 1e-8");

    std::vector<double> scaled(probs.begin(), probs.end());
    const double scale = static_cast<double>(probs.size());
    for (double& v : scaled) v *= scale;
    std::sort(scaled.begin(), scaled.end());

    double statistic = 0.0;
    const double m = static_cast<double>(scaled.size());
    for (size_t i = 0; i < scaled.size(); ++i) {
        const double cdf = 1.0 - std::exp(-scaled[i]);
        statistic = std::max(statistic, std::abs(static_cast<double>(i + 1) / m - cdf));
        statistic = std::max(statistic, std::abs(cdf - static_cast<double>(i) / m));
    }
    return {statistic, ks_p_value(statistic, scaled.size())};
}

double empirical_model_distance(const SampleSet& samples, std::span<const double> probs,
                                double phi) {
    if (samples.n > 14)
        throw ValidationError("empirical-distribution comparison is feasible only for n <= 14");
    if (!(phi >= 0.0 && phi <= 1.0)) throw ValidationError("phi must lie in [0, 1]");
    if (samples.size() == 0) throw ValidationError("no samples");
    if (probs.size() != (1ULL << samples.n))
        throw ValidationError("probability array length does not match sample width");

    std::vector<double> freq(probs.size(), 0.0);
    for (uint64_t b : samples.bits) freq[b] += 1.0;
    const double num = static_cast<double>(samples.size());
    const double uniform = 1.0 / static_cast<double>(probs.size());
    double tv = 0.0;
    for (size_t x = 0; x < probs.size(); ++x) {
        const double model = phi * probs[x] + (1.0 - phi) * uniform;
        tv += std::abs(freq[x] / num - model);
    }
    return tv / 2.0;
}

} // namespace rcs
