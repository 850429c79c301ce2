#pragma once

#include <complex>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rcs/calibration.hpp"
#include "rcs/circuit.hpp"
#include "rcs/estimators.hpp"
#include "rcs/sampleset.hpp"
#include "rcs/spectral.hpp"
#include "rcs/statevector.hpp"

namespace rcs {

// Shortest round-trip decimal rendering; the one double formatter every text
// format uses.
std::string format_double(double value);
double parse_double(std::string_view text); // throws ParseError

// --- canonical circuit JSON ---------------------------------------------
// Top level: qubits, pattern, depth, variant, seed, moments. Each moment is
// one of {"ones": [...]}, {"twos": [...]}, {"rz": [...]}.
std::string write_circuit(const Circuit& circuit);
Circuit parse_circuit(std::string_view text);

// --- sample files ---------------------------------------------------------
// One ASCII '0'/'1' bitstring per line, bit order = qubit order.
std::string write_samples(const SampleSet& samples);
SampleSet parse_samples(std::string_view text, int expected_n);
std::string write_sample_sidecar(const SampleSet& samples);
void apply_sample_sidecar(SampleSet& samples, std::string_view sidecar_text);

// --- amplitude files ------------------------------------------------------
// Textual: one "re im" pair per line (per-sample amplitudes). Binary dump:
// 2^n little-endian (f64 re, f64 im) pairs in index order plus a JSON
// sidecar.
std::string write_amplitudes_text(std::span<const std::complex<double>> amplitudes);
std::vector<std::complex<double>> parse_amplitudes(std::string_view text);

void write_amplitude_dump(const std::filesystem::path& binary_path,
                          const std::filesystem::path& sidecar_path, const AmplitudeTable& table,
                          const std::string& circuit_hash);
AmplitudeTable read_amplitude_dump(const std::filesystem::path& binary_path,
                                   const std::filesystem::path& sidecar_path);

// --- calibration JSON -----------------------------------------------------
std::string write_calibration(const CalibrationMap& calibration);
CalibrationMap parse_calibration(std::string_view text);

// --- dataset manifest -----------------------------------------------------
struct ManifestEntry {
    std::string circuit_file;
    std::string sample_file;
    std::optional<std::string> amplitude_file;
    int n = 0;
    int m = 0;
    PatternName pattern = PatternName::EFGH;
    Variant variant = Variant::Full;
};

struct DatasetManifest {
    std::string root;
    std::vector<ManifestEntry> circuits;
};

std::string write_manifest(const DatasetManifest& manifest);
DatasetManifest parse_manifest(std::string_view text);

struct AlignmentReport {
    size_t sample_count = 0;
    size_t amplitude_count = 0;
    XebResult xeb;
};

// The dataset check this toolkit exists for: per-line amplitudes priced
// against the sample file, F_XEB recomputed from files alone. Throws
// AlignmentError on count mismatch, ValidationError on n mismatch.
AlignmentReport verify_alignment(const DatasetManifest& manifest, const ManifestEntry& entry);

// --- spectrum CSV ---------------------------------------------------------
// Header k,phi_k,weight_k,band_lo,band_hi; absent values are empty fields.
std::string write_spectrum_csv(const LevelSpectrum& spectrum);

// --- misc -----------------------------------------------------------------
// FNV-1a content hash as fixed-width hex; used for challenge/response
// integrity checks.
std::string content_hash(std::string_view bytes);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

} // namespace rcs
