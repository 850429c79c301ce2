#pragma once

#include <cstdint>
#include <map>
#include <span>

#include "rcs/calibration.hpp"
#include "rcs/circuit.hpp"
#include "rcs/sampleset.hpp"
#include "rcs/statevector.hpp"

namespace rcs {

struct ReadoutRates {
    double p01 = 0; // probability a 0 is read as 1
    double p10 = 0; // probability a 1 is read as 0
};

// Per-occurrence gate error probabilities plus per-qubit readout rates.
// 1-gate occurrences are keyed by (1-gate layer index, qubit); 2-gate
// occurrences by (2-gate layer index, edge).
struct ComponentErrorRates {
    struct OneKey {
        int layer;
        GridQubit qubit;
        auto operator<=>(const OneKey&) const = default;
    };
    struct TwoKey {
        int layer;
        Edge edge;
        auto operator<=>(const TwoKey&) const = default;
    };

    std::map<OneKey, double> one_gate;
    std::map<TwoKey, double> two_gate;
    std::map<GridQubit, ReadoutRates> readout;

    // Same rate for every occurrence of each component class; eq symmetric.
    static ComponentErrorRates uniform(const Circuit& circuit, double e1, double e2, double eq);

    void validate() const;
};

// Eq-style mixture sampling: each draw comes from probs with probability phi,
// otherwise uniformly from all 2^n bitstrings.
SampleSet sample_noise_model(std::span<const double> probs,
                             const std::vector<GridQubit>& qubit_order, double phi, size_t count,
                             uint64_t seed);
SampleSet sample_noise_model(const AmplitudeTable& table, double phi, size_t count,
                             uint64_t seed);

// Independent per-bit classical flips at measurement.
SampleSet apply_readout_errors(const SampleSet& samples,
                               const std::map<GridQubit, ReadoutRates>& rates, uint64_t seed);
SampleSet apply_readout_errors(const SampleSet& samples, double symmetric_rate, uint64_t seed);

struct TrajectoryStats {
    size_t trajectories = 0;
    size_t error_free = 0;      // no gate error and no readout flip
    size_t gate_error_free = 0; // no gate error (flips allowed)
};

// Monte Carlo error trajectories: every gate occurrence independently errs
// with its rate, in which case a uniformly random non-identity Pauli lands on
// its qubit(s) after the gate. One bitstring is measured per trajectory, then
// readout flips are applied. Deterministic in seed regardless of thread
// count.
SampleSet pauli_trajectory_sample(const Circuit& circuit, const CalibrationMap& calibration,
                                  const ComponentErrorRates& rates, size_t count, uint64_t seed,
                                  TrajectoryStats* stats = nullptr);

// The no-error-event probability of a trajectory times the no-flip
// probability over measured qubits: the analytic product the trajectory
// fraction converges to.
double trajectory_survival_product(const Circuit& circuit, const ComponentErrorRates& rates);

} // namespace rcs
