#include "rcs/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "rcs/errors.hpp"
#include "rcs/rng.hpp"

namespace rcs {

void fwht(std::span<double> values) {
    if (values.empty() || (values.size() & (values.size() - 1)) != 0)
        throw ValidationError("transform length must be a power of two");
    const uint64_t total = values.size();
    const uint64_t pairs = total >> 1;
    double* v = values.data();
    for (uint64_t h = 1; h < total; h <<= 1) {
        const uint64_t lo_mask = h - 1;
        const uint64_t hi_mask = ~lo_mask;
#pragma omp parallel for if (pairs >= (1ULL << 16)) schedule(static)
        for (uint64_t p = 0; p < pairs; ++p) {
            const uint64_t i0 = ((p & hi_mask) << 1) | (p & lo_mask);
            const uint64_t i1 = i0 | h;
            const double a = v[i0];
            const double b = v[i1];
            v[i0] = a + b;
            v[i1] = a - b;
        }
    }
}

namespace {

// Per-level sums of Fq*Fp and Fp*Fp over the unnormalized transforms; the
// 2^-n coefficient normalization cancels in the level ratios and is applied
// to the published weights only.
LevelSpectrum build_spectrum(int n, std::span<const double> fp, std::span<const double> fq) {
    LevelSpectrum spectrum;
    spectrum.n = n;
    spectrum.weights_by_level.assign(n + 1, 0.0);
    spectrum.cross_by_level.assign(n + 1, 0.0);
    spectrum.phi_by_level.assign(n + 1, std::nullopt);
    spectrum.bands.assign(n + 1, std::nullopt);

    for (uint64_t s = 0; s < fp.size(); ++s) {
        const int level = std::popcount(s);
        spectrum.weights_by_level[level] += fp[s] * fp[s];
        spectrum.cross_by_level[level] += fq[s] * fp[s];
    }
    const double norm = std::pow(2.0, -2.0 * n);
    double max_weight = 0.0;
    for (int k = 1; k <= n; ++k) {
        spectrum.weights_by_level[k] *= norm;
        spectrum.cross_by_level[k] *= norm;
        max_weight = std::max(max_weight, spectrum.weights_by_level[k]);
    }
    spectrum.weights_by_level[0] *= norm;
    spectrum.cross_by_level[0] *= norm;
    for (int k = 1; k <= n; ++k) {
        if (spectrum.weights_by_level[k] >= kLevelWeightFloor * max_weight &&
            spectrum.weights_by_level[k] > 0)
            spectrum.phi_by_level[k] = spectrum.cross_by_level[k] / spectrum.weights_by_level[k];
    }
    return spectrum;
}

std::vector<double> transformed_frequencies(const SampleSet& samples, size_t size) {
    std::vector<double> fq(size, 0.0);
    const double inc = 1.0 / static_cast<double>(samples.size());
    for (uint64_t b : samples.bits) fq[b] += inc;
    fwht(fq);
    return fq;
}

} // namespace

LevelSpectrum level_fidelity(const SampleSet& samples, std::span<const double> probs) {
    if (samples.size() == 0) throw ValidationError("no samples");
    if (samples.n > 20)
        throw ValidationError("level decomposition needs the full transform; n <= 20");
    if (probs.size() != (1ULL << samples.n))
        throw ValidationError("probability array length does not match sample width");

    std::vector<double> fp(probs.begin(), probs.end());
    fwht(fp);
    const auto fq = transformed_frequencies(samples, probs.size());
    return build_spectrum(samples.n, fp, fq);
}

void add_bootstrap_bands(LevelSpectrum& spectrum, const SampleSet& samples,
                         std::span<const double> probs, int resamples, uint64_t seed) {
    if (resamples < 2) throw ValidationError("need at least two bootstrap resamples");
    std::vector<double> fp(probs.begin(), probs.end());
    fwht(fp);

    const int n = spectrum.n;
    std::vector<std::vector<double>> replicate_phi(n + 1);
    const size_t count = samples.size();

#pragma omp parallel for schedule(dynamic)
    for (int b = 0; b < resamples; ++b) {
        auto stream = substream(seed, stream_tag::bootstrap, static_cast<uint64_t>(b));
        SampleSet resampled;
        resampled.n = samples.n;
        resampled.qubit_order = samples.qubit_order;
        resampled.bits.resize(count);
        for (size_t i = 0; i < count; ++i)
            resampled.bits[i] = samples.bits[stream.next_below(count)];
        const auto fq = transformed_frequencies(resampled, probs.size());
        const auto rep = build_spectrum(n, fp, fq);
#pragma omp critical
        for (int k = 1; k <= n; ++k)
            if (rep.phi_by_level[k]) replicate_phi[k].push_back(*rep.phi_by_level[k]);
    }

    for (int k = 1; k <= n; ++k) {
        if (!spectrum.phi_by_level[k] || replicate_phi[k].size() < 2) continue;
        double mean = 0.0;
        for (double v : replicate_phi[k]) mean += v;
        mean /= static_cast<double>(replicate_phi[k].size());
        double var = 0.0;
        for (double v : replicate_phi[k]) var += (v - mean) * (v - mean);
        var /= static_cast<double>(replicate_phi[k].size() - 1);
        const double sigma = std::sqrt(var);
        spectrum.bands[k] = {{*spectrum.phi_by_level[k] - 3.0 * sigma,
                              *spectrum.phi_by_level[k] + 3.0 * sigma}};
    }
}

std::vector<double> readout_decay_curve(double phi, std::span<const double> eq, int n,
                                        std::span<const double> reference_probs) {
    if (static_cast<int>(eq.size()) != n)
        throw ValidationError("need one readout rate per qubit");
    for (double e : eq)
        if (!(e >= 0.0 && e <= 0.5))
            throw ValidationError("readout rates must lie in [0, 0.5]");

    std::vector<double> damping(n);
    for (int i = 0; i < n; ++i) damping[i] = 1.0 - 2.0 * eq[i];

    std::vector<double> curve(n + 1, 0.0);
    if (reference_probs.empty()) {
        // Unweighted mean over |S| = k of prod_{i in S} damping_i:
        // elementary symmetric polynomials over binomial counts.
        std::vector<double> sym(n + 1, 0.0);
        sym[0] = 1.0;
        for (int i = 0; i < n; ++i)
            for (int k = i + 1; k >= 1; --k) sym[k] += sym[k - 1] * damping[i];
        double binom = 1.0;
        for (int k = 0; k <= n; ++k) {
            curve[k] = phi * sym[k] / binom;
            binom = binom * static_cast<double>(n - k) / static_cast<double>(k + 1);
        }
    } else {
        if (reference_probs.size() != (1ULL << n))
            throw ValidationError("reference spectrum length does not match n");
        std::vector<double> fp(reference_probs.begin(), reference_probs.end());
        fwht(fp);
        std::vector<double> weight(n + 1, 0.0), weighted(n + 1, 0.0);
        for (uint64_t s = 0; s < fp.size(); ++s) {
            const int level = std::popcount(s);
            double prod = 1.0;
            for (int i = 0; i < n; ++i)
                if (s >> (n - 1 - i) & 1) prod *= damping[i];
            weight[level] += fp[s] * fp[s];
            weighted[level] += fp[s] * fp[s] * prod;
        }
        for (int k = 0; k <= n; ++k)
            curve[k] = weight[k] > 0 ? phi * weighted[k] / weight[k] : 0.0;
    }
    return curve;
}

SecondaryFit fit_secondary_fidelity(const LevelSpectrum& spectrum, int k_min, int k_max) {
    k_min = std::max(k_min, 1);
    k_max = std::min(k_max, spectrum.n);
    std::vector<std::pair<double, double>> points; // (k, log phi_k)
    for (int k = k_min; k <= k_max; ++k) {
        if (!spectrum.phi_by_level[k] || *spectrum.phi_by_level[k] <= 0) continue;
        points.emplace_back(static_cast<double>(k), std::log(*spectrum.phi_by_level[k]));
    }
    if (points.size() < 3)
        throw ValidationError("secondary fit needs at least three usable levels, found " +
                              std::to_string(points.size()));

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : points) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double num = static_cast<double>(points.size());
    const double slope = (num * sxy - sx * sy) / (num * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / num;
    return {std::exp(intercept), (1.0 - std::exp(slope)) / 2.0,
            static_cast<int>(points.size())};
}

double spectrum_weighted_fidelity(const LevelSpectrum& spectrum) {
    double cross = 0, weight = 0;
    for (int k = 1; k <= spectrum.n; ++k) {
        cross += spectrum.cross_by_level[k];
        weight += spectrum.weights_by_level[k];
    }
    if (weight <= 0) throw ValidationError("spectrum has no weight above level 0");
    return cross / weight;
}

double readout_dressed_fidelity(const LevelSpectrum& spectrum, double phi_hat, double e_hat) {
    double dressed = 0, weight = 0;
    const double damping = 1.0 - 2.0 * e_hat;
    for (int k = 1; k <= spectrum.n; ++k) {
        dressed += spectrum.weights_by_level[k] * std::pow(damping, k);
        weight += spectrum.weights_by_level[k];
    }
    if (weight <= 0) throw ValidationError("spectrum has no weight above level 0");
    return phi_hat * dressed / weight;
}

} // namespace rcs
