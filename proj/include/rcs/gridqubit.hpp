#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

namespace rcs {

struct GridQubit {
    int row = 0;
    int col = 0;

    auto operator<=>(const GridQubit&) const = default;
};

inline bool grid_adjacent(GridQubit a, GridQubit b) {
    int dr = a.row - b.row, dc = a.col - b.col;
    return (dr == 0 && (dc == 1 || dc == -1)) || (dc == 0 && (dr == 1 || dr == -1));
}

// Undirected coupler between two adjacent qubits, stored with a < b.
struct Edge {
    GridQubit a;
    GridQubit b;

    static Edge between(GridQubit x, GridQubit y) { return x < y ? Edge{x, y} : Edge{y, x}; }

    bool touches(GridQubit q) const { return a == q || b == q; }

    auto operator<=>(const Edge&) const = default;
};

// Rectangular qubit grid with one optional dead (excluded) site. The default
// 6x9 grid with one dead qubit gives the 53-qubit capacity of the experiment
// this toolkit models. Qubit enumeration is row-major and defines bit order.
struct GridSpec {
    int rows = 6;
    int cols = 9;
    std::optional<GridQubit> dead = GridQubit{2, 4};

    int capacity() const { return rows * cols - (dead ? 1 : 0); }

    bool alive(GridQubit q) const {
        return q.row >= 0 && q.row < rows && q.col >= 0 && q.col < cols && !(dead && *dead == q);
    }

    // First n live qubits in row-major order. Throws CapacityError if n
    // exceeds capacity or n < 1.
    std::vector<GridQubit> first_qubits(int n) const;

    // Every adjacent live pair, as normalized edges.
    std::vector<Edge> all_edges() const;
};

} // namespace rcs
