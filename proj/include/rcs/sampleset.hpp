#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rcs/gridqubit.hpp"

namespace rcs {

// An ordered record of measured bitstrings. Each entry is an n-bit index in
// which qubit_order[0] is the most significant bit.
struct SampleSet {
    int n = 0;
    std::vector<GridQubit> qubit_order;
    std::vector<uint64_t> bits;
    std::string provenance;
    std::optional<uint64_t> seed;

    size_t size() const { return bits.size(); }

    std::string bitstring(size_t i) const {
        std::string s(static_cast<size_t>(n), '0');
        for (int j = 0; j < n; ++j)
            if (bits[i] >> (n - 1 - j) & 1) s[static_cast<size_t>(j)] = '1';
        return s;
    }
};

// Placeholder qubit order (0,0), (0,1), ... for distributions that do not
// come from a grid circuit.
inline std::vector<GridQubit> linear_order(int n) {
    std::vector<GridQubit> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) out.push_back({0, i});
    return out;
}

} // namespace rcs
