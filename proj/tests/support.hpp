#pragma once

// Shared test oracles. Everything here recomputes expectations from first
// principles, independently of the library's own bookkeeping.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "rcs/circuit.hpp"
#include "rcs/sampleset.hpp"

namespace oracle {

// Brute-force enumeration of the 2-gates a layer label fires inside a qubit
// set: walk every qubit pair, keep adjacent ones, classify by orientation and
// parity. Does not touch rcs::Pattern.
inline std::set<std::pair<rcs::GridQubit, rcs::GridQubit>> layer_edges(
    const std::vector<rcs::GridQubit>& qubits, char label) {
    std::set<std::pair<rcs::GridQubit, rcs::GridQubit>> edges;
    for (size_t i = 0; i < qubits.size(); ++i) {
        for (size_t j = i + 1; j < qubits.size(); ++j) {
            rcs::GridQubit a = std::min(qubits[i], qubits[j]);
            rcs::GridQubit b = std::max(qubits[i], qubits[j]);
            const bool horizontal = a.row == b.row && b.col == a.col + 1;
            const bool vertical = a.col == b.col && b.row == a.row + 1;
            if (!horizontal && !vertical) continue;
            char cls;
            if (horizontal)
                cls = a.col % 2 == 0 ? 'E' : 'F';
            else
                cls = a.row % 2 == 0 ? 'G' : 'H';
            // ABCD fires the same four classes in the order G,H,E,F.
            char mapped = cls;
            switch (label) {
                case 'A': mapped = 'G'; break;
                case 'B': mapped = 'H'; break;
                case 'C': mapped = 'E'; break;
                case 'D': mapped = 'F'; break;
                default: mapped = label; break;
            }
            if (cls == mapped) edges.insert({a, b});
        }
    }
    return edges;
}

inline size_t two_gate_count(const std::vector<rcs::GridQubit>& qubits,
                             const std::vector<char>& labels) {
    size_t count = 0;
    for (char label : labels) count += layer_edges(qubits, label).size();
    return count;
}

// Connected components of the interaction graph induced by a circuit's
// 2-gates (union over all layers).
inline int interaction_components(const rcs::Circuit& circuit) {
    std::map<rcs::GridQubit, rcs::GridQubit> parent;
    for (const auto& q : circuit.qubits) parent[q] = q;
    std::function<rcs::GridQubit(rcs::GridQubit)> find = [&](rcs::GridQubit q) {
        while (parent[q] != q) q = parent[q] = parent[parent[q]];
        return q;
    };
    for (const auto& moment : circuit.moments)
        if (const auto* twos = std::get_if<rcs::TwosMoment>(&moment))
            for (const auto& g : twos->gates) parent[find(g.q_a)] = find(g.q_b);
    std::set<rcs::GridQubit> roots;
    for (const auto& q : circuit.qubits) roots.insert(find(q));
    return static_cast<int>(roots.size());
}

// Pearson chi-square statistic of observed sample counts against expected
// probabilities.
inline double chi_square(const std::vector<size_t>& observed, const std::vector<double>& expected,
                         size_t total) {
    double statistic = 0;
    for (size_t i = 0; i < observed.size(); ++i) {
        const double e = expected[i] * static_cast<double>(total);
        if (e <= 0) continue;
        const double d = static_cast<double>(observed[i]) - e;
        statistic += d * d / e;
    }
    return statistic;
}

// Wilson-Hilferty approximation of the chi-square quantile.
inline double chi_square_quantile(double significance_z, double dof) {
    const double h = 2.0 / (9.0 * dof);
    const double c = 1.0 - h + significance_z * std::sqrt(h);
    return dof * c * c * c;
}

inline std::vector<size_t> histogram(const rcs::SampleSet& samples, size_t cells) {
    std::vector<size_t> counts(cells, 0);
    for (uint64_t b : samples.bits) ++counts[b];
    return counts;
}

inline double mean(const std::vector<double>& values) {
    double sum = 0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

inline double stddev(const std::vector<double>& values) {
    const double m = mean(values);
    double sum = 0;
    for (double v : values) sum += (v - m) * (v - m);
    return std::sqrt(sum / static_cast<double>(values.size() - 1));
}

} // namespace oracle
