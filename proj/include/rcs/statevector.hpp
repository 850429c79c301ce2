#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "rcs/circuit.hpp"
#include "rcs/sampleset.hpp"

namespace rcs {

struct CalibrationMap;

// Full complex amplitude vector of a circuit. Index encoding: qubit_order[0]
// is the most significant bit.
struct AmplitudeTable {
    int n = 0;
    std::vector<GridQubit> qubit_order;
    std::vector<std::complex<double>> amplitudes;

    size_t size() const { return amplitudes.size(); }
};

struct SimulateOptions {
    int max_qubits = 26;
    const CalibrationMap* calibration = nullptr;
};

// Exact statevector simulation of |0...0> through the circuit, optionally
// with a calibration applied first. Throws CapacityError above the qubit cap.
AmplitudeTable simulate(const Circuit& circuit, const SimulateOptions& options = {});
AmplitudeTable simulate(const Circuit& circuit, const CalibrationMap& calibration);

std::vector<double> probabilities(const AmplitudeTable& table);

// Product-form state of a patch circuit: joint probability factorizes over
// the two sides of the cut.
struct FactorizedTable {
    AmplitudeTable left;
    AmplitudeTable right;
    Cut cut;
    std::vector<GridQubit> qubit_order; // original circuit order

    // Probability of a full-circuit bitstring index (original qubit order).
    double joint_probability(uint64_t index) const;

    // Dense 2^n joint distribution; intended for n small enough to hold it.
    std::vector<double> joint_probabilities() const;
};

// Simulates the two sides of a patch circuit independently. Throws
// ValidationError if any 2-gate crosses the cut.
FactorizedTable simulate_patch_factored(const Circuit& circuit, const Cut& cut,
                                        const SimulateOptions& options = {});

// N i.i.d. draws from probs, deterministic in seed. probs must sum to 1
// within 1e-8.
SampleSet exact_sample(std::span<const double> probs, const std::vector<GridQubit>& qubit_order,
                       size_t count, uint64_t seed);
SampleSet exact_sample(const AmplitudeTable& table, size_t count, uint64_t seed);

// Low-level gate kernels, exposed for the reference-comparison tests and the
// benchmark. Amplitude arrays are indexed with qubit 0 of the table as MSB;
// `bit` is the shift of the target qubit (bit = n - 1 - qubit_index).
namespace kernels {
void apply_one_qubit(std::span<std::complex<double>> amps, int bit,
                     const std::complex<double> m[2][2]);
void apply_fsim(std::span<std::complex<double>> amps, int bit_a, int bit_b, double theta,
                double phi);
void apply_rz(std::span<std::complex<double>> amps, int bit, double angle);
const std::complex<double> (*one_qubit_matrix(GateKind kind))[2];
} // namespace kernels

// Applies every gate of the circuit to an existing state (|0..0> caller-set).
// Shared by the simulator and the trajectory sampler.
void apply_circuit_moments(std::span<std::complex<double>> amps, const Circuit& circuit);

} // namespace rcs
