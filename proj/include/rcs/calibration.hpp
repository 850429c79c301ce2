#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>

#include "rcs/circuit.hpp"
#include "rcs/sampleset.hpp"

namespace rcs {

// Per-coupler native 2-gate parameters plus per-occurrence z-rotations. The
// native (theta, phi) depends only on the edge; the four rotation angles
// (pre_a, pre_b, post_a, post_b) depend on (edge, occurrence index k), with k
// counting the edge's appearances in circuit order from 0.
struct CalibrationMap {
    struct RotationKey {
        Edge edge;
        int k;
        auto operator<=>(const RotationKey&) const = default;
    };

    std::map<Edge, std::pair<double, double>> native;
    std::map<RotationKey, std::array<double, 4>> rotations;
};

// Every edge at the standard (pi/2, pi/6); all rotation angles zero.
CalibrationMap identity_calibration(const Circuit& circuit);

// Replaces each 2-gate's parameters with its edge's native values and inserts
// the four per-occurrence z-rotations around it. 1-gate layers are untouched.
// Throws ValidationError if the map misses an edge or occurrence.
Circuit apply_calibration(const Circuit& circuit, const CalibrationMap& calibration);

// Standard values plus independent uniform perturbations in [-magnitude,
// +magnitude] on every native angle and rotation; deterministic in seed.
CalibrationMap random_miscalibration(const Circuit& circuit, uint64_t seed, double magnitude);

struct FitOptions {
    size_t min_samples = 10000;
    int restarts = 5;
    double simplex_tol = 1e-4;
    int max_evaluations_per_restart = 2000;
    uint64_t seed = 0;
};

struct FitResult {
    double theta_hat = 0;
    double phi_hat = 0;
    double objective = 0; // F_XEB at the optimum
    int evaluations = 0;
};

// Output distribution of the fitted model at (theta, phi), as the four
// two-qubit outcome probabilities.
using PairProbFn = std::function<std::array<double, 4>(double theta, double phi)>;

// Fits a coupler's (theta, phi) by maximizing F_XEB of the samples against
// the model distribution, via Nelder-Mead with restarts over
// [0, pi] x [0, 2pi). The first restart starts at the standard gate.
FitResult fit_two_gate(const PairProbFn& model, const SampleSet& samples,
                       const FitOptions& options = {});

// Convenience overload: the model re-simulates `pair_circuit` (a two-qubit
// single-coupler circuit) with its 2-gate parameters replaced by (theta, phi).
FitResult fit_two_gate(const Circuit& pair_circuit, const SampleSet& samples,
                       const FitOptions& options = {});

} // namespace rcs
