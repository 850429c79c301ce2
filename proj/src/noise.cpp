#include "rcs/noise.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <set>

#include "rcs/errors.hpp"
#include "rcs/rng.hpp"

namespace rcs {

namespace {

void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0))
        throw ValidationError(std::string(what) + " must lie in [0, 1], got " + std::to_string(p));
}

void check_normalized(std::span<const double> probs) {
    double total = 0.0;
    for (double p : probs) total += p;
    if (std::abs(total - 1.0) > 1e-8)
        throw ValidationError("probabilities sum to " + std::to_string(total) +
                              ", expected 1 within 1e-8");
}

} // namespace

ComponentErrorRates ComponentErrorRates::uniform(const Circuit& circuit, double e1, double e2,
                                                 double eq) {
    check_probability(e1, "e1");
    check_probability(e2, "e2");
    check_probability(eq, "eq");
    ComponentErrorRates rates;
    int ones_layer = 0, twos_layer = 0;
    for (const auto& moment : circuit.moments) {
        if (const auto* ones = std::get_if<OnesMoment>(&moment)) {
            for (const auto& g : ones->gates) rates.one_gate[{ones_layer, g.target}] = e1;
            ++ones_layer;
        } else if (const auto* twos = std::get_if<TwosMoment>(&moment)) {
            for (const auto& g : twos->gates) rates.two_gate[{twos_layer, g.edge()}] = e2;
            ++twos_layer;
        }
    }
    for (const auto& q : circuit.qubits) rates.readout[q] = {eq, eq};
    return rates;
}

void ComponentErrorRates::validate() const {
    for (const auto& [key, e] : one_gate) check_probability(e, "1-gate error rate");
    for (const auto& [key, e] : two_gate) check_probability(e, "2-gate error rate");
    for (const auto& [q, r] : readout) {
        check_probability(r.p01, "readout p01");
        check_probability(r.p10, "readout p10");
    }
}

SampleSet sample_noise_model(std::span<const double> probs,
                             const std::vector<GridQubit>& qubit_order, double phi, size_t count,
                             uint64_t seed) {
    check_probability(phi, "phi");
    check_normalized(probs);
    const int n = static_cast<int>(qubit_order.size());
    if (probs.size() != (1ULL << n))
        throw ValidationError("probability array length does not match the qubit order");

    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        cdf[i] = acc;
    }
    cdf.back() = 1.0;
    const uint64_t mask = (1ULL << n) - 1;

    SampleSet samples;
    samples.n = n;
    samples.qubit_order = qubit_order;
    samples.seed = seed;
    samples.provenance = "mixture phi=" + std::to_string(phi);
    samples.bits.resize(count);
#pragma omp parallel for if (count >= (1ULL << 16)) schedule(static)
    for (size_t i = 0; i < count; ++i) {
        auto stream = substream(seed, stream_tag::mixture, i);
        if (stream.next_double() < phi) {
            const double u = stream.next_double();
            const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
            samples.bits[i] = static_cast<uint64_t>(std::min<ptrdiff_t>(
                it - cdf.begin(), static_cast<ptrdiff_t>(cdf.size()) - 1));
        } else {
            samples.bits[i] = stream.next() & mask;
        }
    }
    return samples;
}

SampleSet sample_noise_model(const AmplitudeTable& table, double phi, size_t count,
                             uint64_t seed) {
    return sample_noise_model(probabilities(table), table.qubit_order, phi, count, seed);
}

SampleSet apply_readout_errors(const SampleSet& samples,
                               const std::map<GridQubit, ReadoutRates>& rates, uint64_t seed) {
    struct BitRates {
        double p01, p10;
        bool active;
    };
    std::vector<BitRates> per_bit(samples.n, {0, 0, false});
    for (int j = 0; j < samples.n; ++j) {
        auto it = rates.find(samples.qubit_order[j]);
        if (it == rates.end()) continue;
        check_probability(it->second.p01, "readout p01");
        check_probability(it->second.p10, "readout p10");
        per_bit[j] = {it->second.p01, it->second.p10,
                      it->second.p01 > 0 || it->second.p10 > 0};
    }

    SampleSet out = samples;
    out.seed = seed;
    out.provenance = samples.provenance + "+readout";
    const int n = samples.n;
#pragma omp parallel for if (out.bits.size() >= (1ULL << 16)) schedule(static)
    for (size_t i = 0; i < out.bits.size(); ++i) {
        auto stream = substream(seed, stream_tag::readout, i);
        uint64_t word = out.bits[i];
        for (int j = 0; j < n; ++j) {
            if (!per_bit[j].active) continue;
            const uint64_t mask = 1ULL << (n - 1 - j);
            const double rate = (word & mask) ? per_bit[j].p10 : per_bit[j].p01;
            if (stream.next_double() < rate) word ^= mask;
        }
        out.bits[i] = word;
    }
    return out;
}

SampleSet apply_readout_errors(const SampleSet& samples, double symmetric_rate, uint64_t seed) {
    std::map<GridQubit, ReadoutRates> rates;
    for (const auto& q : samples.qubit_order) rates[q] = {symmetric_rate, symmetric_rate};
    return apply_readout_errors(samples, rates, seed);
}

namespace {

using cd = std::complex<double>;

const cd kPauliX[2][2] = {{cd{0, 0}, cd{1, 0}}, {cd{1, 0}, cd{0, 0}}};
const cd kPauliY[2][2] = {{cd{0, 0}, cd{0, -1}}, {cd{0, 1}, cd{0, 0}}};
const cd kPauliZ[2][2] = {{cd{1, 0}, cd{0, 0}}, {cd{0, 0}, cd{-1, 0}}};

// code: 1 = X, 2 = Y, 3 = Z
void apply_pauli(std::span<cd> amps, int bit, int code) {
    switch (code) {
        case 1: kernels::apply_one_qubit(amps, bit, kPauliX); break;
        case 2: kernels::apply_one_qubit(amps, bit, kPauliY); break;
        case 3: kernels::apply_one_qubit(amps, bit, kPauliZ); break;
        default: break;
    }
}

struct FlatOp {
    enum class Kind { One, Two, Rz } kind;
    int bit_a = 0;
    int bit_b = 0;
    GateKind gate_kind = GateKind::SqrtX;
    double theta = 0, phi = 0, angle = 0;
    double error_rate = 0; // meaningful for error sites only
    bool is_site = false;
};

void apply_flat_op(std::span<cd> amps, const FlatOp& op) {
    switch (op.kind) {
        case FlatOp::Kind::One:
            kernels::apply_one_qubit(amps, op.bit_a, kernels::one_qubit_matrix(op.gate_kind));
            break;
        case FlatOp::Kind::Two:
            kernels::apply_fsim(amps, op.bit_a, op.bit_b, op.theta, op.phi);
            break;
        case FlatOp::Kind::Rz:
            kernels::apply_rz(amps, op.bit_a, op.angle);
            break;
    }
}

// code 1..15 for the 15 non-identity two-qubit Paulis.
void apply_pauli_pair(std::span<cd> amps, int bit_a, int bit_b, int code) {
    apply_pauli(amps, bit_a, code >> 2);
    apply_pauli(amps, bit_b, code & 3);
}

uint64_t sample_state(std::span<const cd> amps, double u) {
    double acc = 0.0;
    for (size_t i = 0; i < amps.size(); ++i) {
        acc += std::norm(amps[i]);
        if (u < acc) return i;
    }
    return amps.size() - 1;
}

} // namespace

SampleSet pauli_trajectory_sample(const Circuit& circuit, const CalibrationMap& calibration,
                                  const ComponentErrorRates& rates, size_t count, uint64_t seed,
                                  TrajectoryStats* stats) {
    const int n = circuit.num_qubits();
    if (n < 1 || n > 26)
        throw CapacityError("trajectory sampling supports 1..26 qubits, got " +
                            std::to_string(n));
    rates.validate();

    const Circuit calibrated = apply_calibration(circuit, calibration);
    const uint64_t dim = 1ULL << n;

    // Flatten the calibrated circuit. Error sites are the original 1-gate and
    // 2-gate occurrences; inserted z-rotations are noiseless.
    std::vector<FlatOp> ops;
    std::vector<size_t> site_ops; // op index of each site
    {
        int ones_layer = 0, twos_layer = 0;
        for (const auto& moment : calibrated.moments) {
            if (const auto* ones = std::get_if<OnesMoment>(&moment)) {
                for (const auto& g : ones->gates) {
                    auto it = rates.one_gate.find({ones_layer, g.target});
                    if (it == rates.one_gate.end())
                        throw ValidationError("rates miss a 1-gate occurrence at layer " +
                                              std::to_string(ones_layer));
                    FlatOp op;
                    op.kind = FlatOp::Kind::One;
                    op.bit_a = n - 1 - circuit.qubit_index(g.target);
                    op.gate_kind = g.kind;
                    op.error_rate = it->second;
                    op.is_site = true;
                    site_ops.push_back(ops.size());
                    ops.push_back(op);
                }
                ++ones_layer;
            } else if (const auto* twos = std::get_if<TwosMoment>(&moment)) {
                for (const auto& g : twos->gates) {
                    auto it = rates.two_gate.find({twos_layer, g.edge()});
                    if (it == rates.two_gate.end())
                        throw ValidationError("rates miss a 2-gate occurrence at layer " +
                                              std::to_string(twos_layer));
                    FlatOp op;
                    op.kind = FlatOp::Kind::Two;
                    op.bit_a = n - 1 - circuit.qubit_index(g.q_a);
                    op.bit_b = n - 1 - circuit.qubit_index(g.q_b);
                    op.theta = g.theta;
                    op.phi = g.phi;
                    op.error_rate = it->second;
                    op.is_site = true;
                    site_ops.push_back(ops.size());
                    ops.push_back(op);
                }
                ++twos_layer;
            } else if (const auto* rz = std::get_if<RzMoment>(&moment)) {
                for (const auto& g : rz->gates) {
                    FlatOp op;
                    op.kind = FlatOp::Kind::Rz;
                    op.bit_a = n - 1 - circuit.qubit_index(g.target);
                    op.angle = g.angle;
                    ops.push_back(op);
                }
            }
        }
    }
    const size_t num_sites = site_ops.size();

    struct BitRates {
        double p01, p10;
        bool active;
    };
    std::vector<BitRates> per_bit(n, {0, 0, false});
    for (int j = 0; j < n; ++j) {
        auto it = rates.readout.find(circuit.qubits[j]);
        if (it != rates.readout.end())
            per_bit[j] = {it->second.p01, it->second.p10,
                          it->second.p01 > 0 || it->second.p10 > 0};
    }

    // Phase 1: draw every trajectory's error pattern, keeping each stream's
    // state for the later measurement and readout draws.
    struct Plan {
        uint64_t rng_state;
        std::vector<std::pair<int32_t, uint8_t>> errors; // (site, pauli code)
    };
    std::vector<Plan> plans(count);
#pragma omp parallel for schedule(static)
    for (size_t i = 0; i < count; ++i) {
        auto stream = substream(seed, stream_tag::trajectory, i);
        auto& plan = plans[i];
        for (size_t s = 0; s < num_sites; ++s) {
            const FlatOp& op = ops[site_ops[s]];
            if (op.error_rate <= 0) continue;
            if (stream.next_double() < op.error_rate) {
                const uint64_t options = op.kind == FlatOp::Kind::One ? 3 : 15;
                plan.errors.emplace_back(static_cast<int32_t>(s),
                                         static_cast<uint8_t>(1 + stream.next_below(options)));
            }
        }
        plan.rng_state = stream.state;
    }

    // Error-free evolution with checkpoints after each site. The stride grows
    // when the full set would not fit the memory budget.
    const size_t checkpoint_budget = 2ULL << 30;
    size_t stride = 1;
    if (num_sites > 0) {
        while ((num_sites / stride + 1) * dim * sizeof(cd) > checkpoint_budget) stride *= 2;
    }
    std::vector<std::vector<cd>> checkpoints((num_sites + stride - 1) / stride);
    std::vector<double> ideal_cdf(dim);
    {
        std::vector<cd> state(dim, cd{0, 0});
        state[0] = {1, 0};
        size_t next_site = 0;
        for (size_t o = 0; o < ops.size(); ++o) {
            apply_flat_op(state, ops[o]);
            if (next_site < num_sites && site_ops[next_site] == o) {
                if (next_site % stride == 0) checkpoints[next_site / stride] = state;
                ++next_site;
            }
        }
        double acc = 0.0;
        for (uint64_t x = 0; x < dim; ++x) {
            acc += std::norm(state[x]);
            ideal_cdf[x] = acc;
        }
        ideal_cdf.back() = std::max(ideal_cdf.back(), 1.0);
    }

    // Evolve from the last checkpoint at or before `site`, inject the listed
    // paulis (first one at `site`), and run to the end of the circuit.
    auto evolve_from = [&](std::vector<cd>& scratch,
                           const std::vector<std::pair<int32_t, uint8_t>>& errors) {
        const size_t first = static_cast<size_t>(errors.front().first);
        const size_t chk = (first / stride) * stride;
        scratch = checkpoints[first / stride];
        size_t next_error = 0;
        // Skip errors at the checkpoint site itself being replayed twice:
        // checkpoints store the state after site `chk`, so replay starts at
        // the next op.
        for (size_t s = chk; s < num_sites; ++s) {
            if (s > chk) {
                // apply ops between the previous site and this one, then the
                // site op itself
                for (size_t o = site_ops[s - 1] + 1; o <= site_ops[s]; ++o)
                    apply_flat_op(scratch, ops[o]);
            }
            while (next_error < errors.size() &&
                   static_cast<size_t>(errors[next_error].first) == s) {
                const FlatOp& op = ops[site_ops[s]];
                if (op.kind == FlatOp::Kind::One)
                    apply_pauli(scratch, op.bit_a, errors[next_error].second);
                else
                    apply_pauli_pair(scratch, op.bit_a, op.bit_b, errors[next_error].second);
                ++next_error;
            }
        }
        for (size_t o = site_ops[num_sites - 1] + 1; o < ops.size(); ++o)
            apply_flat_op(scratch, ops[o]);
    };

    // Phase 2: memoize the sampling distribution of every distinct
    // single-error pattern, up to a memory budget.
    std::vector<std::pair<int32_t, uint8_t>> singles;
    for (const auto& plan : plans)
        if (plan.errors.size() == 1) singles.push_back(plan.errors.front());
    std::sort(singles.begin(), singles.end());
    singles.erase(std::unique(singles.begin(), singles.end()), singles.end());
    const size_t memo_budget = 3ULL << 30;
    const size_t memo_limit = memo_budget / (dim * sizeof(double));
    if (singles.size() > memo_limit) singles.resize(memo_limit);

    std::map<std::pair<int32_t, uint8_t>, size_t> memo_index;
    for (size_t i = 0; i < singles.size(); ++i) memo_index[singles[i]] = i;
    std::vector<std::vector<double>> memo_cdf(singles.size());
#pragma omp parallel
    {
        std::vector<cd> scratch;
#pragma omp for schedule(dynamic)
        for (size_t i = 0; i < singles.size(); ++i) {
            evolve_from(scratch, {singles[i]});
            std::vector<double> cdf(dim);
            double acc = 0.0;
            for (uint64_t x = 0; x < dim; ++x) {
                acc += std::norm(scratch[x]);
                cdf[x] = acc;
            }
            cdf.back() = std::max(cdf.back(), 1.0);
            memo_cdf[i] = std::move(cdf);
        }
    }

    // Phase 3: measure each trajectory and apply readout flips.
    SampleSet samples;
    samples.n = n;
    samples.qubit_order = circuit.qubits;
    samples.seed = seed;
    samples.provenance = "pauli-trajectory";
    samples.bits.resize(count);
    size_t error_free = 0, gate_error_free = 0;
#pragma omp parallel reduction(+ : error_free, gate_error_free)
    {
        std::vector<cd> scratch;
#pragma omp for schedule(dynamic, 256)
        for (size_t i = 0; i < count; ++i) {
            auto& plan = plans[i];
            SplitMix64 stream(0);
            stream.state = plan.rng_state;
            const double u = stream.next_double();

            uint64_t word;
            if (plan.errors.empty()) {
                const auto it = std::upper_bound(ideal_cdf.begin(), ideal_cdf.end(), u);
                word = static_cast<uint64_t>(std::min<ptrdiff_t>(
                    it - ideal_cdf.begin(), static_cast<ptrdiff_t>(dim) - 1));
            } else {
                auto memo = plan.errors.size() == 1 ? memo_index.find(plan.errors.front())
                                                    : memo_index.end();
                if (memo != memo_index.end()) {
                    const auto& cdf = memo_cdf[memo->second];
                    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
                    word = static_cast<uint64_t>(std::min<ptrdiff_t>(
                        it - cdf.begin(), static_cast<ptrdiff_t>(dim) - 1));
                } else {
                    evolve_from(scratch, plan.errors);
                    word = sample_state(scratch, u);
                }
            }

            bool flipped = false;
            for (int j = 0; j < n; ++j) {
                if (!per_bit[j].active) continue;
                const uint64_t mask = 1ULL << (n - 1 - j);
                const double rate = (word & mask) ? per_bit[j].p10 : per_bit[j].p01;
                if (stream.next_double() < rate) {
                    word ^= mask;
                    flipped = true;
                }
            }
            samples.bits[i] = word;
            if (plan.errors.empty()) {
                ++gate_error_free;
                if (!flipped) ++error_free;
            }
        }
    }

    if (stats) {
        stats->trajectories = count;
        stats->error_free = error_free;
        stats->gate_error_free = gate_error_free;
    }
    return samples;
}

double trajectory_survival_product(const Circuit& circuit, const ComponentErrorRates& rates) {
    double log_product = 0.0;
    int ones_layer = 0, twos_layer = 0;
    for (const auto& moment : circuit.moments) {
        if (const auto* ones = std::get_if<OnesMoment>(&moment)) {
            for (const auto& g : ones->gates) {
                auto it = rates.one_gate.find({ones_layer, g.target});
                if (it == rates.one_gate.end())
                    throw ValidationError("rates miss a 1-gate occurrence");
                log_product += std::log1p(-it->second);
            }
            ++ones_layer;
        } else if (const auto* twos = std::get_if<TwosMoment>(&moment)) {
            for (const auto& g : twos->gates) {
                auto it = rates.two_gate.find({twos_layer, g.edge()});
                if (it == rates.two_gate.end())
                    throw ValidationError("rates miss a 2-gate occurrence");
                log_product += std::log1p(-it->second);
            }
            ++twos_layer;
        }
    }
    for (const auto& q : circuit.qubits) {
        auto it = rates.readout.find(q);
        const double eq = it == rates.readout.end()
                              ? 0.0
                              : (it->second.p01 + it->second.p10) / 2.0;
        log_product += std::log1p(-eq);
    }
    return std::exp(log_product);
}

} // namespace rcs
