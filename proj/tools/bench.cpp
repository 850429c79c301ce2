// Compares the parallel kernels against the serial reference implementation:
// full-circuit simulation and the Walsh-Hadamard transform, with a checksum
// cross-check so the speedup numbers are for identical results.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rcs/circuit.hpp"
#include "rcs/reference.hpp"
#include "rcs/rng.hpp"
#include "rcs/spectral.hpp"
#include "rcs/statevector.hpp"

using Clock = std::chrono::steady_clock;

static double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

static double max_abs_diff(const std::vector<std::complex<double>>& a,
                           const std::vector<std::complex<double>>& b) {
    double worst = 0;
    for (size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

int main(int argc, char** argv) {
    int sim_n = 14;
    int fwht_n = 22;
    int m = 14;
    int reps = 3;
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string flag = argv[i];
        const int value = std::atoi(argv[i + 1]);
        if (flag == "--sim-n") sim_n = value;
        if (flag == "--fwht-n") fwht_n = value;
        if (flag == "--m") m = value;
        if (flag == "--reps") reps = value;
    }

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (no OpenMP)\n");
#endif

    // Full-circuit simulation, parallel kernels vs serial reference.
    {
        const auto circuit = rcs::generate_random_circuit(7, sim_n, m, rcs::PatternName::EFGH);
        auto t0 = Clock::now();
        rcs::AmplitudeTable parallel;
        for (int r = 0; r < reps; ++r) parallel = rcs::simulate(circuit);
        const double parallel_time = seconds_since(t0) / reps;

        t0 = Clock::now();
        const auto serial = rcs::reference::simulate(circuit);
        const double serial_time = seconds_since(t0);

        std::printf("simulate  n=%-2d m=%-2d  kernels %8.4fs  reference %8.4fs  speedup %5.1fx  "
                    "max|diff| %.2e\n",
                    sim_n, m, parallel_time, serial_time, serial_time / parallel_time,
                    max_abs_diff(parallel.amplitudes, serial.amplitudes));
    }

    // Walsh-Hadamard transform, parallel butterfly vs serial butterfly.
    {
        std::vector<double> values(1ULL << fwht_n);
        auto stream = rcs::substream(3, 99);
        for (auto& v : values) v = stream.next_double() - 0.5;
        auto serial_values = values;

        auto t0 = Clock::now();
        for (int r = 0; r < reps; ++r) rcs::fwht(values);
        const double parallel_time = seconds_since(t0) / reps;

        t0 = Clock::now();
        for (int r = 0; r < reps; ++r) rcs::reference::fwht(serial_values);
        const double serial_time = seconds_since(t0) / reps;

        double worst = 0;
        for (size_t i = 0; i < values.size(); ++i)
            worst = std::max(worst, std::abs(values[i] - serial_values[i]));
        std::printf("fwht      n=%-2d       kernels %8.4fs  reference %8.4fs  speedup %5.1fx  "
                    "max|diff| %.2e\n",
                    fwht_n, parallel_time, serial_time, serial_time / parallel_time, worst);
    }
    return 0;
}
