#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "rcs/circuit.hpp"
#include "rcs/errors.hpp"
#include "support.hpp"

using namespace rcs;

namespace {

std::vector<OnesMoment> ones_layers(const Circuit& circuit) {
    std::vector<OnesMoment> out;
    for (const auto& m : circuit.moments)
        if (const auto* ones = std::get_if<OnesMoment>(&m)) out.push_back(*ones);
    return out;
}

std::vector<TwosMoment> twos_layers(const Circuit& circuit) {
    std::vector<TwosMoment> out;
    for (const auto& m : circuit.moments)
        if (const auto* twos = std::get_if<TwosMoment>(&m)) out.push_back(*twos);
    return out;
}

size_t cross_cut_count(const Circuit& circuit, const Cut& cut) {
    size_t count = 0;
    for (const auto& layer : twos_layers(circuit))
        for (const auto& g : layer.gates)
            if (cut.crosses(g)) ++count;
    return count;
}

} // namespace

TEST_CASE("layer sequence follows the periodic label cycle") {
    const std::vector<char> efgh14 = {'E', 'F', 'G', 'H', 'E', 'F', 'G',
                                      'H', 'E', 'F', 'G', 'H', 'E', 'F'};
    CHECK(layer_sequence(PatternName::EFGH, 14) == efgh14);
    const std::vector<char> abcd8 = {'A', 'B', 'C', 'D', 'C', 'D', 'A', 'B'};
    CHECK(layer_sequence(PatternName::ABCDCDAB, 8) == abcd8);
    CHECK(layer_sequence(PatternName::EFGH, 0).empty());

    // Periodicity: label at layer j equals label at j + period.
    const auto efgh = layer_sequence(PatternName::EFGH, 30);
    const auto abcd = layer_sequence(PatternName::ABCDCDAB, 30);
    for (int j = 0; j + 4 < 30; ++j) CHECK(efgh[j] == efgh[j + 4]);
    for (int j = 0; j + 8 < 30; ++j) CHECK(abcd[j] == abcd[j + 8]);
    for (int j = 0; j + 1 < 30; ++j) {
        CHECK(efgh[j] != efgh[j + 1]);
        CHECK(abcd[j] != abcd[j + 1]);
    }
}

TEST_CASE("generation is deterministic in the seed") {
    const auto a = generate_random_circuit(42, 14, 10, PatternName::EFGH);
    const auto b = generate_random_circuit(42, 14, 10, PatternName::EFGH);
    CHECK(a == b);
    const auto c = generate_random_circuit(43, 14, 10, PatternName::EFGH);
    CHECK(a != c);
}

TEST_CASE("1-gate count is (m+1)*n") {
    const auto supremacy = generate_random_circuit(1, 53, 20, PatternName::ABCDCDAB);
    CHECK(supremacy.one_gate_count() == 1113);
    CHECK(ones_layers(supremacy).size() == 21);
    CHECK(twos_layers(supremacy).size() == 20);

    for (auto [n, m] : {std::pair{1, 0}, {5, 3}, {12, 14}, {26, 7}}) {
        const auto circuit = generate_random_circuit(9, n, m, PatternName::EFGH);
        CHECK(circuit.one_gate_count() == static_cast<size_t>((m + 1) * n));
        for (const auto& layer : ones_layers(circuit))
            CHECK(layer.gates.size() == static_cast<size_t>(n));
    }
}

TEST_CASE("2-gate layers match brute-force edge enumeration") {
    const auto circuit = generate_random_circuit(3, 12, 14, PatternName::EFGH);
    const auto labels = layer_sequence(PatternName::EFGH, 14);
    CHECK(circuit.two_gate_count() == oracle::two_gate_count(circuit.qubits, labels));

    const auto layers = twos_layers(circuit);
    REQUIRE(layers.size() == labels.size());
    for (size_t j = 0; j < layers.size(); ++j) {
        const auto expected = oracle::layer_edges(circuit.qubits, labels[j]);
        CHECK(layers[j].gates.size() == expected.size());
        for (const auto& g : layers[j].gates) {
            const Edge e = g.edge();
            CHECK(expected.count({e.a, e.b}) == 1);
            CHECK(g.theta == doctest::Approx(kStandardTheta));
            CHECK(g.phi == doctest::Approx(kStandardPhi));
        }
    }

    const auto abcd = generate_random_circuit(3, 20, 16, PatternName::ABCDCDAB);
    CHECK(abcd.two_gate_count() ==
          oracle::two_gate_count(abcd.qubits, layer_sequence(PatternName::ABCDCDAB, 16)));
}

TEST_CASE("no qubit appears twice within a 2-gate layer") {
    const auto circuit = generate_random_circuit(8, 26, 17, PatternName::ABCDCDAB);
    for (const auto& layer : twos_layers(circuit)) {
        std::set<GridQubit> touched;
        for (const auto& g : layer.gates) {
            CHECK(touched.insert(g.q_a).second);
            CHECK(touched.insert(g.q_b).second);
            CHECK(grid_adjacent(g.q_a, g.q_b));
        }
    }
}

TEST_CASE("sub-circuit consistency: 1-gates agree across n, m, and pattern") {
    const uint64_t seed = 77;
    const auto small = generate_random_circuit(seed, 8, 6, PatternName::EFGH);
    const auto large = generate_random_circuit(seed, 20, 6, PatternName::EFGH);
    const auto deeper = generate_random_circuit(seed, 8, 14, PatternName::ABCDCDAB);

    const auto small_ones = ones_layers(small);
    const auto large_ones = ones_layers(large);
    const auto deeper_ones = ones_layers(deeper);
    for (size_t layer = 0; layer < small_ones.size(); ++layer) {
        for (size_t i = 0; i < small_ones[layer].gates.size(); ++i) {
            CHECK(small_ones[layer].gates[i] == large_ones[layer].gates[i]);
            CHECK(small_ones[layer].gates[i] == deeper_ones[layer].gates[i]);
        }
    }
}

TEST_CASE("the same qubit never repeats a generator in consecutive layers") {
    const auto circuit = generate_random_circuit(5, 16, 20, PatternName::EFGH);
    const auto layers = ones_layers(circuit);
    for (size_t layer = 1; layer < layers.size(); ++layer)
        for (size_t i = 0; i < layers[layer].gates.size(); ++i)
            CHECK(layers[layer].gates[i].kind != layers[layer - 1].gates[i].kind);

    // All three generators occur.
    std::set<GateKind> seen;
    for (const auto& layer : layers)
        for (const auto& g : layer.gates) seen.insert(g.kind);
    CHECK(seen.size() == 3);
}

TEST_CASE("grid capacity") {
    CHECK_THROWS_AS(generate_random_circuit(1, 60, 2, PatternName::EFGH), CapacityError);
    CHECK_THROWS_AS(generate_random_circuit(1, 54, 2, PatternName::EFGH), CapacityError);
    CHECK_THROWS_AS(generate_random_circuit(1, 0, 2, PatternName::EFGH), CapacityError);
    CHECK_NOTHROW(generate_random_circuit(1, 53, 2, PatternName::EFGH));

    GridSpec grid;
    CHECK(grid.capacity() == 53);
    const auto qubits = grid.first_qubits(53);
    CHECK(std::find(qubits.begin(), qubits.end(), *grid.dead) == qubits.end());
}

TEST_CASE("default cut bisects n=16 into 8+8") {
    const auto circuit = generate_random_circuit(2, 16, 14, PatternName::EFGH);
    const Cut cut = default_cut(circuit);
    CHECK(cut.left.size() == 8);
    CHECK(cut.right.size() == 8);
}

TEST_CASE("derive_patch removes exactly the cross-cut gates") {
    const auto circuit = generate_random_circuit(11, 12, 14, PatternName::EFGH);
    const Cut cut = default_cut(circuit);
    const size_t crossing = cross_cut_count(circuit, cut);
    CHECK(crossing > 0);

    const auto patch = derive_patch(circuit, cut);
    CHECK(patch.variant == Variant::Patch);
    CHECK(patch.two_gate_count() == circuit.two_gate_count() - crossing);
    CHECK(cross_cut_count(patch, cut) == 0);
    CHECK(ones_layers(patch).size() == ones_layers(circuit).size());
    CHECK(patch.one_gate_count() == circuit.one_gate_count());

    CHECK(oracle::interaction_components(patch) == 2);

    // A cut with no crossing gates leaves the circuit unchanged apart from
    // the variant tag.
    auto repatched = derive_patch(patch, cut);
    repatched.variant = patch.variant;
    CHECK(repatched == patch);
}

TEST_CASE("derive_patch validates the cut") {
    const auto circuit = generate_random_circuit(11, 6, 4, PatternName::EFGH);
    Cut bad;
    bad.left = {circuit.qubits[0]};
    bad.right = {circuit.qubits[1]}; // not a partition
    CHECK_THROWS_AS(derive_patch(circuit, bad), ValidationError);

    Cut empty_side;
    empty_side.left = circuit.qubits;
    CHECK_THROWS_AS(derive_patch(circuit, empty_side), ValidationError);

    Cut duplicated;
    duplicated.left = circuit.qubits;
    duplicated.right = {circuit.qubits[0]};
    CHECK_THROWS_AS(derive_patch(circuit, duplicated), ValidationError);
}

TEST_CASE("derive_elided keeps ceil(keep_fraction * crossing)") {
    const auto circuit = generate_random_circuit(13, 12, 14, PatternName::EFGH);
    const Cut cut = default_cut(circuit);
    const size_t crossing = cross_cut_count(circuit, cut);

    auto full = derive_elided(circuit, cut, 1.0, 99);
    full.variant = circuit.variant;
    CHECK(full == circuit);

    auto none = derive_elided(circuit, cut, 0.0, 99);
    auto patch = derive_patch(circuit, cut);
    patch.variant = none.variant;
    CHECK(none == patch);

    const auto half = derive_elided(circuit, cut, 0.5, 99);
    const size_t kept = cross_cut_count(half, cut);
    CHECK(kept == (crossing + 1) / 2);
    CHECK(half.two_gate_count() == circuit.two_gate_count() - (crossing - kept));

    // Deterministic in the elide seed, sensitive to it.
    CHECK(derive_elided(circuit, cut, 0.5, 99) == half);
    bool any_different = false;
    for (uint64_t s = 0; s < 8 && !any_different; ++s)
        any_different = derive_elided(circuit, cut, 0.5, 100 + s) != half;
    CHECK(any_different);

    CHECK_THROWS_AS(derive_elided(circuit, cut, 1.5, 99), ValidationError);
    CHECK_THROWS_AS(derive_elided(circuit, cut, -0.1, 99), ValidationError);
}

TEST_CASE("elided circuits share the full circuit's 1-gates") {
    const auto circuit = generate_random_circuit(21, 14, 12, PatternName::ABCDCDAB);
    const Cut cut = default_cut(circuit);
    const auto elided = derive_elided(circuit, cut, 0.5, circuit.seed);
    const auto patch = derive_patch(circuit, cut);
    CHECK(ones_layers(elided) == ones_layers(circuit));
    CHECK(ones_layers(patch) == ones_layers(circuit));
}

TEST_CASE("pair calibration circuit") {
    const Edge edge{{3, 3}, {3, 4}};
    const auto circuit = pair_calibration_circuit(edge, 14, 5);
    CHECK(circuit.num_qubits() == 2);
    CHECK(circuit.two_gate_count() == 14);
    CHECK(circuit.one_gate_count() == 30);
    for (const auto& layer : twos_layers(circuit)) {
        REQUIRE(layer.gates.size() == 1);
        CHECK(layer.gates[0].edge() == edge);
    }

    // The pair circuit's random 1-gates agree with any full circuit that
    // contains the same qubits under the same seed.
    const auto full = generate_random_circuit(5, 40, 14, PatternName::EFGH);
    const int ia = full.qubit_index({3, 3});
    const int ib = full.qubit_index({3, 4});
    REQUIRE(ia >= 0);
    REQUIRE(ib >= 0);
    const auto pair_ones = ones_layers(circuit);
    const auto full_ones = ones_layers(full);
    for (size_t layer = 0; layer < pair_ones.size(); ++layer) {
        CHECK(pair_ones[layer].gates[0].kind == full_ones[layer].gates[ia].kind);
        CHECK(pair_ones[layer].gates[1].kind == full_ones[layer].gates[ib].kind);
    }

    CHECK_THROWS_AS(pair_calibration_circuit(Edge{{0, 0}, {1, 1}}, 4, 1), ValidationError);
}

TEST_CASE("validate_circuit flags duplicate qubits with the moment index") {
    auto circuit = generate_random_circuit(2, 4, 2, PatternName::EFGH);
    auto& ones = std::get<OnesMoment>(circuit.moments[2]);
    ones.gates.push_back(ones.gates.front());
    try {
        validate_circuit(circuit);
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("moment 2") != std::string::npos);
    }
}
