#pragma once

#include <complex>
#include <span>
#include <vector>

#include "rcs/circuit.hpp"
#include "rcs/statevector.hpp"

namespace rcs::reference {

// Plain serial simulator kept as the correctness baseline for the parallel
// kernels. Gates are applied out-of-place with explicit bit tests; no OpenMP,
// no index tricks. The benchmark target compares this path against the
// production kernels.
AmplitudeTable simulate(const Circuit& circuit);

// Serial in-place Walsh-Hadamard butterfly.
void fwht(std::span<double> values);

} // namespace rcs::reference
