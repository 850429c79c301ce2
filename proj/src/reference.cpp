#include "rcs/reference.hpp"

#include <cmath>

#include "rcs/errors.hpp"

namespace rcs::reference {

namespace {

using cd = std::complex<double>;
using State = std::vector<cd>;

State apply_matrix(const State& in, int n, const std::vector<int>& targets,
                   const std::vector<std::vector<cd>>& matrix) {
    // targets lists qubit positions (0 = MSB); matrix rows/cols are indexed by
    // the targets' bits read in list order.
    State out(in.size(), cd{0.0, 0.0});
    const int k = static_cast<int>(targets.size());
    const int dim = 1 << k;
    for (uint64_t x = 0; x < in.size(); ++x) {
        int col = 0;
        for (int t = 0; t < k; ++t)
            col = col << 1 | static_cast<int>(x >> (n - 1 - targets[t]) & 1);
        for (int row = 0; row < dim; ++row) {
            const cd& w = matrix[row][col];
            if (w == cd{0.0, 0.0}) continue;
            uint64_t y = x;
            for (int t = 0; t < k; ++t) {
                const uint64_t mask = 1ULL << (n - 1 - targets[t]);
                if (row >> (k - 1 - t) & 1)
                    y |= mask;
                else
                    y &= ~mask;
            }
            out[y] += w * in[x];
        }
    }
    return out;
}

std::vector<std::vector<cd>> one_qubit_matrix(GateKind kind) {
    const cd(*m)[2] = kernels::one_qubit_matrix(kind);
    return {{m[0][0], m[0][1]}, {m[1][0], m[1][1]}};
}

std::vector<std::vector<cd>> fsim_matrix(double theta, double phi) {
    const cd z{0.0, 0.0};
    const cd c{std::cos(theta), 0.0};
    const cd ms{0.0, -std::sin(theta)};
    const cd p{std::cos(phi), -std::sin(phi)};
    return {{cd{1.0, 0.0}, z, z, z}, {z, c, ms, z}, {z, ms, c, z}, {z, z, z, p}};
}

std::vector<std::vector<cd>> rz_matrix(double angle) {
    const cd z{0.0, 0.0};
    return {{cd{std::cos(angle / 2), -std::sin(angle / 2)}, z},
            {z, cd{std::cos(angle / 2), std::sin(angle / 2)}}};
}

} // namespace

AmplitudeTable simulate(const Circuit& circuit) {
    const int n = circuit.num_qubits();
    State state(1ULL << n, cd{0.0, 0.0});
    state[0] = {1.0, 0.0};

    auto pos = [&](GridQubit q) {
        int idx = circuit.qubit_index(q);
        if (idx < 0) throw ValidationError("gate touches a qubit outside the circuit");
        return idx;
    };

    for (const auto& moment : circuit.moments) {
        if (const auto* ones = std::get_if<OnesMoment>(&moment)) {
            for (const auto& g : ones->gates)
                state = apply_matrix(state, n, {pos(g.target)}, one_qubit_matrix(g.kind));
        } else if (const auto* twos = std::get_if<TwosMoment>(&moment)) {
            for (const auto& g : twos->gates)
                state = apply_matrix(state, n, {pos(g.q_a), pos(g.q_b)},
                                     fsim_matrix(g.theta, g.phi));
        } else if (const auto* rz = std::get_if<RzMoment>(&moment)) {
            for (const auto& g : rz->gates)
                state = apply_matrix(state, n, {pos(g.target)}, rz_matrix(g.angle));
        }
    }

    AmplitudeTable table;
    table.n = n;
    table.qubit_order = circuit.qubits;
    table.amplitudes = std::move(state);
    return table;
}

void fwht(std::span<double> values) {
    if (values.empty() || (values.size() & (values.size() - 1)) != 0)
        throw ValidationError("transform length must be a power of two");
    for (size_t h = 1; h < values.size(); h <<= 1) {
        for (size_t i = 0; i < values.size(); i += h * 2) {
            for (size_t j = i; j < i + h; ++j) {
                const double a = values[j];
                const double b = values[j + h];
                values[j] = a + b;
                values[j + h] = a - b;
            }
        }
    }
}

} // namespace rcs::reference
