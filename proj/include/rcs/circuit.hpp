#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "rcs/gridqubit.hpp"

namespace rcs {

enum class GateKind { SqrtX, SqrtY, SqrtW };

struct OneQubitGate {
    GateKind kind;
    GridQubit target;

    bool operator==(const OneQubitGate&) const = default;
};

struct FSimGate {
    double theta;
    double phi;
    GridQubit q_a;
    GridQubit q_b;

    Edge edge() const { return Edge::between(q_a, q_b); }

    bool operator==(const FSimGate&) const = default;
};

struct RzGate {
    GridQubit target;
    double angle;

    bool operator==(const RzGate&) const = default;
};

struct OnesMoment {
    std::vector<OneQubitGate> gates;

    bool operator==(const OnesMoment&) const = default;
};

struct TwosMoment {
    std::vector<FSimGate> gates;

    bool operator==(const TwosMoment&) const = default;
};

struct RzMoment {
    std::vector<RzGate> gates;

    bool operator==(const RzMoment&) const = default;
};

using Moment = std::variant<OnesMoment, TwosMoment, RzMoment>;

enum class PatternName { EFGH, ABCDCDAB };
enum class Variant { Full, Elided, Patch };

// Standard 2-gate parameters: theta = pi/2, phi = pi/6.
inline constexpr double kStandardTheta = 1.5707963267948966;
inline constexpr double kStandardPhi = 0.5235987755982988;

// Periodic schedule of coupler classes. EFGH cycles with period 4,
// ABCDCDAB with period 8.
std::vector<char> layer_sequence(PatternName pattern, int m);

// One coupler class: the vertex-disjoint edge set a single 2-gate layer fires.
// Horizontal edges split by column parity, vertical edges by row parity; the
// two patterns assign the same four classes to their labels in different
// fixed orders.
struct Pattern {
    PatternName name;
    std::vector<std::pair<char, std::vector<Edge>>> coupler_classes;

    static Pattern make(PatternName name, const GridSpec& grid);

    const std::vector<Edge>& class_edges(char label) const;
};

struct Circuit {
    std::vector<GridQubit> qubits; // order fixed; qubits[0] is the most significant bit
    int depth = 0;                 // number of 2-gate layers
    PatternName pattern = PatternName::EFGH;
    Variant variant = Variant::Full;
    uint64_t seed = 0;
    std::vector<Moment> moments;

    int num_qubits() const { return static_cast<int>(qubits.size()); }

    // Position of q in the qubit list; -1 if absent.
    int qubit_index(GridQubit q) const;

    size_t one_gate_count() const;
    size_t two_gate_count() const;

    // Distinct couplers used, each with its occurrence count in moment order.
    std::map<Edge, int> edge_occurrences() const;

    bool operator==(const Circuit&) const = default;
};

struct Cut {
    std::vector<GridQubit> left;
    std::vector<GridQubit> right;

    bool on_left(GridQubit q) const;
    bool crosses(const FSimGate& g) const;
};

Circuit generate_random_circuit(uint64_t seed, int n, int m, PatternName pattern,
                                const GridSpec& grid = {});

// Balanced vertical bisection: splits the circuit's qubits at the column
// threshold that best equalizes the two sides.
Cut default_cut(const Circuit& circuit);

// Removes every 2-gate crossing the cut. 1-gates are untouched.
Circuit derive_patch(const Circuit& circuit, const Cut& cut);

// Removes a seeded subset of the cross-cut 2-gates so that
// ceil(keep_fraction * count) survive.
Circuit derive_elided(const Circuit& circuit, const Cut& cut, double keep_fraction,
                      uint64_t seed);

// Two-qubit circuit whose 2-gate layers all fire the same coupler, the shape
// used for per-coupler calibration fits. Interleaved 1-gate layers follow the
// usual random-gate rule.
Circuit pair_calibration_circuit(Edge edge, int m, uint64_t seed);

// Validates the structural invariants reachable from parsed input: qubit
// uniqueness, per-moment qubit disjointness, gate qubits present in the qubit
// list, 2-gate adjacency, finite angles. Throws ValidationError naming the
// offending moment.
void validate_circuit(const Circuit& circuit);

std::string to_string(PatternName pattern);
std::string to_string(Variant variant);
std::string to_string(GateKind kind);

} // namespace rcs
