#include "rcs/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rcs/calibration.hpp"
#include "rcs/errors.hpp"
#include "rcs/rng.hpp"

namespace rcs {

namespace kernels {

// Gate matrices are applied with explicit real arithmetic; std::complex
// operator* can route through library helpers that the vectorizer dislikes.

void apply_one_qubit(std::span<std::complex<double>> amps, int bit,
                     const std::complex<double> m[2][2]) {
    const uint64_t mask = 1ULL << bit;
    const uint64_t lo_mask = mask - 1;
    const uint64_t hi_mask = ~lo_mask;
    const uint64_t pairs = amps.size() >> 1;
    const double m00r = m[0][0].real(), m00i = m[0][0].imag();
    const double m01r = m[0][1].real(), m01i = m[0][1].imag();
    const double m10r = m[1][0].real(), m10i = m[1][0].imag();
    const double m11r = m[1][1].real(), m11i = m[1][1].imag();
    auto* a = reinterpret_cast<double*>(amps.data());

#pragma omp parallel for if (pairs >= (1ULL << 15)) schedule(static)
    for (uint64_t p = 0; p < pairs; ++p) {
        const uint64_t i0 = ((p & hi_mask) << 1) | (p & lo_mask);
        const uint64_t i1 = i0 | mask;
        const double x0r = a[2 * i0], x0i = a[2 * i0 + 1];
        const double x1r = a[2 * i1], x1i = a[2 * i1 + 1];
        a[2 * i0] = m00r * x0r - m00i * x0i + m01r * x1r - m01i * x1i;
        a[2 * i0 + 1] = m00r * x0i + m00i * x0r + m01r * x1i + m01i * x1r;
        a[2 * i1] = m10r * x0r - m10i * x0i + m11r * x1r - m11i * x1i;
        a[2 * i1 + 1] = m10r * x0i + m10i * x0r + m11r * x1i + m11i * x1r;
    }
}

// fSim convention on (|00>,|01>,|10>,|11>):
//   [[1, 0, 0, 0], [0, cos t, -i sin t, 0], [0, -i sin t, cos t, 0],
//    [0, 0, 0, e^{-i phi}]]
void apply_fsim(std::span<std::complex<double>> amps, int bit_a, int bit_b, double theta,
                double phi) {
    const uint64_t mask_a = 1ULL << bit_a;
    const uint64_t mask_b = 1ULL << bit_b;
    const int lo_bit = std::min(bit_a, bit_b);
    const int hi_bit = std::max(bit_a, bit_b);
    const uint64_t lo_mask = (1ULL << lo_bit) - 1;
    const uint64_t mid_mask = ((1ULL << (hi_bit - 1)) - 1) ^ lo_mask;
    const uint64_t hi_mask = ~(lo_mask | mid_mask);
    const uint64_t groups = amps.size() >> 2;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double pr = std::cos(phi);
    const double pi = -std::sin(phi);
    auto* a = reinterpret_cast<double*>(amps.data());

#pragma omp parallel for if (groups >= (1ULL << 14)) schedule(static)
    for (uint64_t g = 0; g < groups; ++g) {
        const uint64_t i00 = ((g & hi_mask) << 2) | ((g & mid_mask) << 1) | (g & lo_mask);
        const uint64_t i01 = i00 | mask_b; // b set = second qubit of the pair is 1
        const uint64_t i10 = i00 | mask_a;
        const uint64_t i11 = i00 | mask_a | mask_b;
        const double x01r = a[2 * i01], x01i = a[2 * i01 + 1];
        const double x10r = a[2 * i10], x10i = a[2 * i10 + 1];
        // |01> -> c*x01 - i s*x10 ; |10> -> -i s*x01 + c*x10
        a[2 * i01] = c * x01r + s * x10i;
        a[2 * i01 + 1] = c * x01i - s * x10r;
        a[2 * i10] = s * x01i + c * x10r;
        a[2 * i10 + 1] = -s * x01r + c * x10i;
        const double x11r = a[2 * i11], x11i = a[2 * i11 + 1];
        a[2 * i11] = pr * x11r - pi * x11i;
        a[2 * i11 + 1] = pr * x11i + pi * x11r;
    }
}

// Rz(a) = diag(e^{-ia/2}, e^{ia/2}).
void apply_rz(std::span<std::complex<double>> amps, int bit, double angle) {
    const uint64_t mask = 1ULL << bit;
    const double hr = std::cos(angle / 2);
    const double hi = std::sin(angle / 2);
    const uint64_t total = amps.size();
    auto* a = reinterpret_cast<double*>(amps.data());

#pragma omp parallel for if (total >= (1ULL << 16)) schedule(static)
    for (uint64_t i = 0; i < total; ++i) {
        const double sign = (i & mask) ? 1.0 : -1.0;
        const double xr = a[2 * i], xi = a[2 * i + 1];
        a[2 * i] = hr * xr - sign * hi * xi;
        a[2 * i + 1] = hr * xi + sign * hi * xr;
    }
}

namespace {
using cd = std::complex<double>;
const cd kI{0.0, 1.0};
const double kInvSqrt2 = 0.7071067811865476;

const cd kSqrtX[2][2] = {{cd{0.5, 0.5}, cd{0.5, -0.5}}, {cd{0.5, -0.5}, cd{0.5, 0.5}}};
const cd kSqrtY[2][2] = {{cd{0.5, 0.5}, cd{-0.5, -0.5}}, {cd{0.5, 0.5}, cd{0.5, 0.5}}};
// pi/2 rotation about (X+Y)/sqrt(2).
const cd kSqrtW[2][2] = {{cd{kInvSqrt2, 0.0}, cd{-0.5, -0.5}}, {cd{0.5, -0.5}, cd{kInvSqrt2, 0.0}}};
} // namespace

const std::complex<double> (*one_qubit_matrix(GateKind kind))[2] {
    switch (kind) {
        case GateKind::SqrtX: return kSqrtX;
        case GateKind::SqrtY: return kSqrtY;
        default: return kSqrtW;
    }
}

} // namespace kernels

void apply_circuit_moments(std::span<std::complex<double>> amps, const Circuit& circuit) {
    const int n = circuit.num_qubits();
    auto bit_of = [&](GridQubit q) {
        int idx = circuit.qubit_index(q);
        if (idx < 0) throw ValidationError("gate touches a qubit outside the circuit");
        return n - 1 - idx;
    };
    for (const auto& moment : circuit.moments) {
        if (const auto* ones = std::get_if<OnesMoment>(&moment)) {
            for (const auto& g : ones->gates)
                kernels::apply_one_qubit(amps, bit_of(g.target),
                                         kernels::one_qubit_matrix(g.kind));
        } else if (const auto* twos = std::get_if<TwosMoment>(&moment)) {
            for (const auto& g : twos->gates)
                kernels::apply_fsim(amps, bit_of(g.q_a), bit_of(g.q_b), g.theta, g.phi);
        } else if (const auto* rz = std::get_if<RzMoment>(&moment)) {
            for (const auto& g : rz->gates) kernels::apply_rz(amps, bit_of(g.target), g.angle);
        }
    }
}

AmplitudeTable simulate(const Circuit& circuit, const SimulateOptions& options) {
    const int n = circuit.num_qubits();
    if (n < 1) throw ValidationError("cannot simulate an empty qubit list");
    if (n > options.max_qubits)
        throw CapacityError("circuit has " + std::to_string(n) + " qubits, above the cap of " +
                            std::to_string(options.max_qubits) +
                            "; use patch factorization for larger circuits");

    const Circuit* target = &circuit;
    Circuit calibrated;
    if (options.calibration) {
        calibrated = apply_calibration(circuit, *options.calibration);
        target = &calibrated;
    }

    AmplitudeTable table;
    table.n = n;
    table.qubit_order = circuit.qubits;
    table.amplitudes.assign(1ULL << n, {0.0, 0.0});
    table.amplitudes[0] = {1.0, 0.0};
    apply_circuit_moments(table.amplitudes, *target);
    return table;
}

AmplitudeTable simulate(const Circuit& circuit, const CalibrationMap& calibration) {
    SimulateOptions options;
    options.calibration = &calibration;
    return simulate(circuit, options);
}

std::vector<double> probabilities(const AmplitudeTable& table) {
    std::vector<double> probs(table.amplitudes.size());
    const auto* a = table.amplitudes.data();
#pragma omp parallel for if (probs.size() >= (1ULL << 16)) schedule(static)
    for (uint64_t i = 0; i < probs.size(); ++i) probs[i] = std::norm(a[i]);
    return probs;
}

namespace {

Circuit side_circuit(const Circuit& circuit, const std::vector<GridQubit>& side) {
    std::set<GridQubit> members(side.begin(), side.end());
    Circuit out;
    out.depth = circuit.depth;
    out.pattern = circuit.pattern;
    out.variant = circuit.variant;
    out.seed = circuit.seed;
    for (const auto& q : circuit.qubits)
        if (members.count(q)) out.qubits.push_back(q);
    for (const auto& moment : circuit.moments) {
        if (const auto* ones = std::get_if<OnesMoment>(&moment)) {
            OnesMoment m;
            for (const auto& g : ones->gates)
                if (members.count(g.target)) m.gates.push_back(g);
            out.moments.emplace_back(std::move(m));
        } else if (const auto* twos = std::get_if<TwosMoment>(&moment)) {
            TwosMoment m;
            for (const auto& g : twos->gates)
                if (members.count(g.q_a) && members.count(g.q_b)) m.gates.push_back(g);
            out.moments.emplace_back(std::move(m));
        } else if (const auto* rz = std::get_if<RzMoment>(&moment)) {
            RzMoment m;
            for (const auto& g : rz->gates)
                if (members.count(g.target)) m.gates.push_back(g);
            out.moments.emplace_back(std::move(m));
        }
    }
    return out;
}

} // namespace

FactorizedTable simulate_patch_factored(const Circuit& circuit, const Cut& cut,
                                        const SimulateOptions& options) {
    for (const auto& moment : circuit.moments)
        if (const auto* twos = std::get_if<TwosMoment>(&moment))
            for (const auto& g : twos->gates)
                if (cut.crosses(g))
                    throw ValidationError(
                        "circuit is not factorizable: a 2-gate crosses the cut");

    const Circuit* target = &circuit;
    Circuit calibrated;
    if (options.calibration) {
        calibrated = apply_calibration(circuit, *options.calibration);
        target = &calibrated;
    }
    SimulateOptions side_options = options;
    side_options.calibration = nullptr;

    FactorizedTable out;
    out.cut = cut;
    out.qubit_order = circuit.qubits;
    out.left = simulate(side_circuit(*target, cut.left), side_options);
    out.right = simulate(side_circuit(*target, cut.right), side_options);
    return out;
}

double FactorizedTable::joint_probability(uint64_t index) const {
    const int n = static_cast<int>(qubit_order.size());
    uint64_t li = 0, ri = 0;
    for (int i = 0; i < n; ++i) {
        const uint64_t bit = index >> (n - 1 - i) & 1;
        if (cut.on_left(qubit_order[i]))
            li = li << 1 | bit;
        else
            ri = ri << 1 | bit;
    }
    // Side qubit lists preserve the original relative order, so shifting bits
    // in circuit order reproduces each side's index encoding.
    return std::norm(left.amplitudes[li]) * std::norm(right.amplitudes[ri]);
}

std::vector<double> FactorizedTable::joint_probabilities() const {
    const size_t total = 1ULL << qubit_order.size();
    std::vector<double> probs(total);
#pragma omp parallel for if (total >= (1ULL << 16)) schedule(static)
    for (uint64_t i = 0; i < total; ++i) probs[i] = joint_probability(i);
    return probs;
}

SampleSet exact_sample(std::span<const double> probs, const std::vector<GridQubit>& qubit_order,
                       size_t count, uint64_t seed) {
    double total = 0.0;
    for (double p : probs) total += p;
    if (std::abs(total - 1.0) > 1e-8)
        throw ValidationError("probabilities sum to " + std::to_string(total) +
                              ", expected 1 within 1e-8");

    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        cdf[i] = acc;
    }
    cdf.back() = 1.0;

    SampleSet samples;
    samples.n = static_cast<int>(qubit_order.size());
    samples.qubit_order = qubit_order;
    samples.seed = seed;
    samples.provenance = "exact";
    samples.bits.resize(count);
#pragma omp parallel for if (count >= (1ULL << 16)) schedule(static)
    for (size_t i = 0; i < count; ++i) {
        auto stream = substream(seed, stream_tag::sample, i);
        const double u = stream.next_double();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        samples.bits[i] = static_cast<uint64_t>(std::min<ptrdiff_t>(
            it - cdf.begin(), static_cast<ptrdiff_t>(cdf.size()) - 1));
    }
    return samples;
}

SampleSet exact_sample(const AmplitudeTable& table, size_t count, uint64_t seed) {
    return exact_sample(probabilities(table), table.qubit_order, count, seed);
}

} // namespace rcs
