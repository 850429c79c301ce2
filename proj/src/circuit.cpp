#include "rcs/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rcs/errors.hpp"
#include "rcs/rng.hpp"

namespace rcs {

std::vector<GridQubit> GridSpec::first_qubits(int n) const {
    if (n < 1) throw CapacityError("qubit count must be at least 1");
    if (n > capacity())
        throw CapacityError("requested " + std::to_string(n) + " qubits but grid capacity is " +
                            std::to_string(capacity()));
    std::vector<GridQubit> out;
    out.reserve(n);
    for (int r = 0; r < rows && static_cast<int>(out.size()) < n; ++r) {
        for (int c = 0; c < cols && static_cast<int>(out.size()) < n; ++c) {
            GridQubit q{r, c};
            if (alive(q)) out.push_back(q);
        }
    }
    return out;
}

std::vector<Edge> GridSpec::all_edges() const {
    std::vector<Edge> out;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            GridQubit q{r, c};
            if (!alive(q)) continue;
            GridQubit right{r, c + 1}, down{r + 1, c};
            if (alive(right)) out.push_back(Edge::between(q, right));
            if (alive(down)) out.push_back(Edge::between(q, down));
        }
    }
    return out;
}

std::vector<char> layer_sequence(PatternName pattern, int m) {
    if (m < 0) throw ValidationError("depth must be non-negative");
    const std::string cycle = pattern == PatternName::EFGH ? "EFGH" : "ABCDCDAB";
    std::vector<char> out;
    out.reserve(m);
    for (int i = 0; i < m; ++i) out.push_back(cycle[i % cycle.size()]);
    return out;
}

namespace {

enum class CouplerClass { HorizEven, HorizOdd, VertEven, VertOdd };

CouplerClass classify(const Edge& e) {
    if (e.a.row == e.b.row)
        return e.a.col % 2 == 0 ? CouplerClass::HorizEven : CouplerClass::HorizOdd;
    return e.a.row % 2 == 0 ? CouplerClass::VertEven : CouplerClass::VertOdd;
}

CouplerClass class_for_label(char label) {
    switch (label) {
        case 'E': return CouplerClass::HorizEven;
        case 'F': return CouplerClass::HorizOdd;
        case 'G': return CouplerClass::VertEven;
        case 'H': return CouplerClass::VertOdd;
        case 'A': return CouplerClass::VertEven;
        case 'B': return CouplerClass::VertOdd;
        case 'C': return CouplerClass::HorizEven;
        case 'D': return CouplerClass::HorizOdd;
        default: throw ValidationError(std::string("unknown coupler class label ") + label);
    }
}

} // namespace

Pattern Pattern::make(PatternName name, const GridSpec& grid) {
    Pattern p;
    p.name = name;
    const std::string labels = name == PatternName::EFGH ? "EFGH" : "ABCD";
    auto edges = grid.all_edges();
    std::sort(edges.begin(), edges.end());
    for (char label : labels) {
        std::vector<Edge> cls;
        for (const auto& e : edges)
            if (classify(e) == class_for_label(label)) cls.push_back(e);
        p.coupler_classes.emplace_back(label, std::move(cls));
    }
    return p;
}

const std::vector<Edge>& Pattern::class_edges(char label) const {
    for (const auto& [l, edges] : coupler_classes)
        if (l == label) return edges;
    throw ValidationError(std::string("pattern has no class ") + label);
}

int Circuit::qubit_index(GridQubit q) const {
    for (size_t i = 0; i < qubits.size(); ++i)
        if (qubits[i] == q) return static_cast<int>(i);
    return -1;
}

size_t Circuit::one_gate_count() const {
    size_t count = 0;
    for (const auto& m : moments)
        if (const auto* ones = std::get_if<OnesMoment>(&m)) count += ones->gates.size();
    return count;
}

size_t Circuit::two_gate_count() const {
    size_t count = 0;
    for (const auto& m : moments)
        if (const auto* twos = std::get_if<TwosMoment>(&m)) count += twos->gates.size();
    return count;
}

std::map<Edge, int> Circuit::edge_occurrences() const {
    std::map<Edge, int> out;
    for (const auto& m : moments)
        if (const auto* twos = std::get_if<TwosMoment>(&m))
            for (const auto& g : twos->gates) ++out[g.edge()];
    return out;
}

bool Cut::on_left(GridQubit q) const {
    return std::find(left.begin(), left.end(), q) != left.end();
}

bool Cut::crosses(const FSimGate& g) const { return on_left(g.q_a) != on_left(g.q_b); }

namespace {

// Uniform choice among the three generators, never repeating the previous
// layer's choice on the same qubit. One stream per qubit keyed by (seed,
// row, col) makes the draw independent of n, m, pattern, and variant.
GateKind draw_kind(SplitMix64& stream, int layer, GateKind prev) {
    if (layer == 0) return static_cast<GateKind>(stream.next_below(3));
    int skip = static_cast<int>(prev);
    int pick = static_cast<int>(stream.next_below(2));
    return static_cast<GateKind>(pick >= skip ? pick + 1 : pick);
}

void check_cut(const Circuit& circuit, const Cut& cut) {
    if (cut.left.empty() || cut.right.empty())
        throw ValidationError("cut sides must both be nonempty");
    std::set<GridQubit> seen;
    for (const auto& q : cut.left)
        if (!seen.insert(q).second) throw ValidationError("cut repeats a qubit");
    for (const auto& q : cut.right)
        if (!seen.insert(q).second) throw ValidationError("cut repeats a qubit");
    if (seen.size() != circuit.qubits.size())
        throw ValidationError("cut is not a partition of the circuit's qubits");
    for (const auto& q : circuit.qubits)
        if (!seen.count(q)) throw ValidationError("cut is not a partition of the circuit's qubits");
}

} // namespace

Circuit generate_random_circuit(uint64_t seed, int n, int m, PatternName pattern,
                                const GridSpec& grid) {
    if (m < 0) throw ValidationError("depth must be non-negative");
    Circuit circuit;
    circuit.qubits = grid.first_qubits(n);
    circuit.depth = m;
    circuit.pattern = pattern;
    circuit.variant = Variant::Full;
    circuit.seed = seed;

    auto pat = Pattern::make(pattern, grid);
    auto labels = layer_sequence(pattern, m);

    std::vector<SplitMix64> streams;
    std::vector<GateKind> prev(circuit.qubits.size(), GateKind::SqrtX);
    streams.reserve(circuit.qubits.size());
    for (const auto& q : circuit.qubits)
        streams.push_back(substream(seed, stream_tag::one_gates, static_cast<uint64_t>(q.row),
                                    static_cast<uint64_t>(q.col)));

    std::set<GridQubit> members(circuit.qubits.begin(), circuit.qubits.end());

    for (int layer = 0; layer <= m; ++layer) {
        OnesMoment ones;
        ones.gates.reserve(circuit.qubits.size());
        for (size_t i = 0; i < circuit.qubits.size(); ++i) {
            GateKind kind = draw_kind(streams[i], layer, prev[i]);
            prev[i] = kind;
            ones.gates.push_back({kind, circuit.qubits[i]});
        }
        circuit.moments.emplace_back(std::move(ones));

        if (layer < m) {
            TwosMoment twos;
            for (const auto& e : pat.class_edges(labels[layer]))
                if (members.count(e.a) && members.count(e.b))
                    twos.gates.push_back({kStandardTheta, kStandardPhi, e.a, e.b});
            circuit.moments.emplace_back(std::move(twos));
        }
    }
    return circuit;
}

Cut default_cut(const Circuit& circuit) {
    if (circuit.num_qubits() < 2)
        throw ValidationError("cannot cut a circuit with fewer than two qubits");
    int lo = circuit.qubits[0].col, hi = lo;
    for (const auto& q : circuit.qubits) {
        lo = std::min(lo, q.col);
        hi = std::max(hi, q.col);
    }
    int best_t = lo + 1;
    int best_imbalance = circuit.num_qubits() + 1;
    for (int t = lo + 1; t <= hi; ++t) {
        int left = 0;
        for (const auto& q : circuit.qubits)
            if (q.col < t) ++left;
        int imbalance = std::abs(circuit.num_qubits() - 2 * left);
        if (left > 0 && left < circuit.num_qubits() && imbalance < best_imbalance) {
            best_imbalance = imbalance;
            best_t = t;
        }
    }
    Cut cut;
    for (const auto& q : circuit.qubits)
        (q.col < best_t ? cut.left : cut.right).push_back(q);
    if (cut.left.empty() || cut.right.empty())
        throw ValidationError("no column cut splits this circuit");
    return cut;
}

Circuit derive_patch(const Circuit& circuit, const Cut& cut) {
    check_cut(circuit, cut);
    Circuit out = circuit;
    out.variant = Variant::Patch;
    for (auto& m : out.moments) {
        if (auto* twos = std::get_if<TwosMoment>(&m)) {
            std::erase_if(twos->gates, [&](const FSimGate& g) { return cut.crosses(g); });
        }
    }
    return out;
}

Circuit derive_elided(const Circuit& circuit, const Cut& cut, double keep_fraction,
                      uint64_t seed) {
    check_cut(circuit, cut);
    if (!(keep_fraction >= 0.0 && keep_fraction <= 1.0))
        throw ValidationError("keep_fraction must lie in [0, 1]");

    // Cross-cut occurrences as (moment index, gate index), in circuit order.
    std::vector<std::pair<size_t, size_t>> cross;
    for (size_t mi = 0; mi < circuit.moments.size(); ++mi)
        if (const auto* twos = std::get_if<TwosMoment>(&circuit.moments[mi]))
            for (size_t gi = 0; gi < twos->gates.size(); ++gi)
                if (cut.crosses(twos->gates[gi])) cross.emplace_back(mi, gi);

    size_t keep = static_cast<size_t>(std::ceil(keep_fraction * static_cast<double>(cross.size())));
    keep = std::min(keep, cross.size());
    auto stream = substream(seed, stream_tag::elide);
    for (size_t i = cross.size(); i > 1; --i)
        std::swap(cross[i - 1], cross[stream.next_below(i)]);
    // The first `keep` entries of the shuffle survive; the rest are deleted.
    cross.erase(cross.begin(), cross.begin() + static_cast<long>(keep));
    std::sort(cross.begin(), cross.end());

    Circuit out = circuit;
    out.variant = Variant::Elided;
    for (auto it = cross.rbegin(); it != cross.rend(); ++it) {
        auto& twos = std::get<TwosMoment>(out.moments[it->first]);
        twos.gates.erase(twos.gates.begin() + static_cast<long>(it->second));
    }
    return out;
}

Circuit pair_calibration_circuit(Edge edge, int m, uint64_t seed) {
    if (!grid_adjacent(edge.a, edge.b))
        throw ValidationError("calibration circuit requires a grid-adjacent pair");
    Circuit circuit;
    circuit.qubits = {edge.a, edge.b};
    circuit.depth = m;
    circuit.pattern = PatternName::EFGH;
    circuit.variant = Variant::Full;
    circuit.seed = seed;

    std::vector<SplitMix64> streams;
    for (const auto& q : circuit.qubits)
        streams.push_back(substream(seed, stream_tag::one_gates, static_cast<uint64_t>(q.row),
                                    static_cast<uint64_t>(q.col)));
    std::vector<GateKind> prev(2, GateKind::SqrtX);

    for (int layer = 0; layer <= m; ++layer) {
        OnesMoment ones;
        for (size_t i = 0; i < 2; ++i) {
            GateKind kind = draw_kind(streams[i], layer, prev[i]);
            prev[i] = kind;
            ones.gates.push_back({kind, circuit.qubits[i]});
        }
        circuit.moments.emplace_back(std::move(ones));
        if (layer < m) {
            TwosMoment twos;
            twos.gates.push_back({kStandardTheta, kStandardPhi, edge.a, edge.b});
            circuit.moments.emplace_back(std::move(twos));
        }
    }
    return circuit;
}

void validate_circuit(const Circuit& circuit) {
    std::set<GridQubit> members;
    for (const auto& q : circuit.qubits)
        if (!members.insert(q).second) throw ValidationError("duplicate qubit in qubit list");

    for (size_t mi = 0; mi < circuit.moments.size(); ++mi) {
        std::set<GridQubit> touched;
        auto touch = [&](GridQubit q) {
            if (!members.count(q))
                throw ValidationError("moment " + std::to_string(mi) +
                                      " touches a qubit outside the qubit list");
            if (!touched.insert(q).second)
                throw ValidationError("moment " + std::to_string(mi) +
                                      " touches a qubit more than once");
        };
        if (const auto* ones = std::get_if<OnesMoment>(&circuit.moments[mi])) {
            for (const auto& g : ones->gates) touch(g.target);
        } else if (const auto* twos = std::get_if<TwosMoment>(&circuit.moments[mi])) {
            for (const auto& g : twos->gates) {
                touch(g.q_a);
                touch(g.q_b);
                if (!grid_adjacent(g.q_a, g.q_b))
                    throw ValidationError("moment " + std::to_string(mi) +
                                          " has a 2-gate on non-adjacent qubits");
                if (!std::isfinite(g.theta) || !std::isfinite(g.phi))
                    throw ValidationError("moment " + std::to_string(mi) +
                                          " has a non-finite 2-gate angle");
            }
        } else if (const auto* rz = std::get_if<RzMoment>(&circuit.moments[mi])) {
            for (const auto& g : rz->gates) {
                touch(g.target);
                if (!std::isfinite(g.angle))
                    throw ValidationError("moment " + std::to_string(mi) +
                                          " has a non-finite rotation angle");
            }
        }
    }
}

std::string to_string(PatternName pattern) {
    return pattern == PatternName::EFGH ? "efgh" : "abcdcdab";
}

std::string to_string(Variant variant) {
    switch (variant) {
        case Variant::Full: return "full";
        case Variant::Elided: return "elided";
        default: return "patch";
    }
}

std::string to_string(GateKind kind) {
    switch (kind) {
        case GateKind::SqrtX: return "sx";
        case GateKind::SqrtY: return "sy";
        default: return "sw";
    }
}

} // namespace rcs
