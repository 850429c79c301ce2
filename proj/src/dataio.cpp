#include "rcs/dataio.hpp"

#include <charconv>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "rcs/errors.hpp"

namespace rcs {

using nlohmann::json;

std::string format_double(double value) {
    char buffer[64];
    auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, result.ptr);
}

double parse_double(std::string_view text) {
    double value = 0;
    auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc{} || result.ptr != text.data() + text.size())
        throw ParseError("not a decimal number: '" + std::string(text) + "'");
    return value;
}

namespace {

json qubit_to_json(GridQubit q) { return json::array({q.row, q.col}); }

GridQubit qubit_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        throw ParseError("qubit must be a [row, col] pair of integers");
    return {j[0].get<int>(), j[1].get<int>()};
}

PatternName pattern_from_string(const std::string& s) {
    if (s == "efgh") return PatternName::EFGH;
    if (s == "abcdcdab") return PatternName::ABCDCDAB;
    throw ParseError("unknown pattern '" + s + "'");
}

Variant variant_from_string(const std::string& s) {
    if (s == "full") return Variant::Full;
    if (s == "elided") return Variant::Elided;
    if (s == "patch") return Variant::Patch;
    throw ParseError("unknown variant '" + s + "'");
}

GateKind kind_from_string(const std::string& s) {
    if (s == "sx") return GateKind::SqrtX;
    if (s == "sy") return GateKind::SqrtY;
    if (s == "sw") return GateKind::SqrtW;
    throw ParseError("unknown 1-gate kind '" + s + "'");
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

double number_from_json(const json& j, const char* what) {
    if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
    return j.get<double>();
}

} // namespace

std::string write_circuit(const Circuit& circuit) {
    json j;
    json qubits = json::array();
    for (const auto& q : circuit.qubits) qubits.push_back(qubit_to_json(q));
    j["qubits"] = std::move(qubits);
    j["pattern"] = to_string(circuit.pattern);
    j["depth"] = circuit.depth;
    j["variant"] = to_string(circuit.variant);
    j["seed"] = circuit.seed;

    json moments = json::array();
    for (const auto& moment : circuit.moments) {
        json m;
        if (const auto* ones = std::get_if<OnesMoment>(&moment)) {
            json gates = json::array();
            for (const auto& g : ones->gates)
                gates.push_back({{"q", qubit_to_json(g.target)}, {"kind", to_string(g.kind)}});
            m["ones"] = std::move(gates);
        } else if (const auto* twos = std::get_if<TwosMoment>(&moment)) {
            json gates = json::array();
            for (const auto& g : twos->gates)
                gates.push_back({{"q", json::array({qubit_to_json(g.q_a), qubit_to_json(g.q_b)})},
                                 {"theta", g.theta},
                                 {"phi", g.phi}});
            m["twos"] = std::move(gates);
        } else if (const auto* rz = std::get_if<RzMoment>(&moment)) {
            json gates = json::array();
            for (const auto& g : rz->gates)
                gates.push_back({{"q", qubit_to_json(g.target)}, {"angle", g.angle}});
            m["rz"] = std::move(gates);
        }
        moments.push_back(std::move(m));
    }
    j["moments"] = std::move(moments);
    return j.dump();
}

Circuit parse_circuit(std::string_view text) {
    const json j = parse_json(text);
    if (!j.is_object()) throw ParseError("circuit JSON must be an object");
    for (const char* key : {"qubits", "pattern", "depth", "variant", "seed", "moments"})
        if (!j.contains(key)) throw ParseError(std::string("circuit JSON misses '") + key + "'");

    Circuit circuit;
    for (const auto& q : j.at("qubits")) circuit.qubits.push_back(qubit_from_json(q));
    circuit.pattern = pattern_from_string(j.at("pattern").get<std::string>());
    circuit.variant = variant_from_string(j.at("variant").get<std::string>());
    if (!j.at("depth").is_number_integer() || j.at("depth").get<int>() < 0)
        throw ParseError("depth must be a non-negative integer");
    circuit.depth = j.at("depth").get<int>();
    circuit.seed = j.at("seed").get<uint64_t>();

    for (const auto& m : j.at("moments")) {
        if (!m.is_object() || m.size() != 1)
            throw ParseError("each moment must have exactly one of 'ones', 'twos', 'rz'");
        if (m.contains("ones")) {
            OnesMoment moment;
            for (const auto& g : m.at("ones"))
                moment.gates.push_back({kind_from_string(g.at("kind").get<std::string>()),
                                        qubit_from_json(g.at("q"))});
            circuit.moments.emplace_back(std::move(moment));
        } else if (m.contains("twos")) {
            TwosMoment moment;
            for (const auto& g : m.at("twos")) {
                const auto& pair = g.at("q");
                if (!pair.is_array() || pair.size() != 2)
                    throw ParseError("a 2-gate needs a pair of qubits");
                moment.gates.push_back({number_from_json(g.at("theta"), "theta"),
                                        number_from_json(g.at("phi"), "phi"),
                                        qubit_from_json(pair[0]), qubit_from_json(pair[1])});
            }
            circuit.moments.emplace_back(std::move(moment));
        } else if (m.contains("rz")) {
            RzMoment moment;
            for (const auto& g : m.at("rz"))
                moment.gates.push_back(
                    {qubit_from_json(g.at("q")), number_from_json(g.at("angle"), "angle")});
            circuit.moments.emplace_back(std::move(moment));
        } else {
            throw ParseError("each moment must have exactly one of 'ones', 'twos', 'rz'");
        }
    }
    validate_circuit(circuit);
    return circuit;
}

std::string write_samples(const SampleSet& samples) {
    std::string out;
    out.reserve(samples.size() * (samples.n + 1));
    for (size_t i = 0; i < samples.size(); ++i) {
        out += samples.bitstring(i);
        out += '\n';
    }
    return out;
}

SampleSet parse_samples(std::string_view text, int expected_n) {
    SampleSet samples;
    samples.n = expected_n;
    samples.qubit_order = linear_order(expected_n);
    size_t line_start = 0;
    size_t line_number = 1;
    while (line_start < text.size()) {
        size_t line_end = text.find('\n', line_start);
        if (line_end == std::string_view::npos) line_end = text.size();
        const auto line = text.substr(line_start, line_end - line_start);
        if (static_cast<int>(line.size()) != expected_n)
            throw ParseError("line " + std::to_string(line_number) + " has " +
                             std::to_string(line.size()) + " characters, expected " +
                             std::to_string(expected_n));
        uint64_t word = 0;
        for (size_t c = 0; c < line.size(); ++c) {
            if (line[c] != '0' && line[c] != '1')
                throw ParseError("illegal character at line " + std::to_string(line_number) +
                                 ", column " + std::to_string(c + 1));
            word = word << 1 | static_cast<uint64_t>(line[c] - '0');
        }
        samples.bits.push_back(word);
        line_start = line_end + 1;
        ++line_number;
    }
    return samples;
}

std::string write_sample_sidecar(const SampleSet& samples) {
    json j;
    j["n"] = samples.n;
    json order = json::array();
    for (const auto& q : samples.qubit_order) order.push_back(qubit_to_json(q));
    j["qubit_order"] = std::move(order);
    j["provenance"] = samples.provenance;
    if (samples.seed) j["seed"] = *samples.seed;
    return j.dump();
}

void apply_sample_sidecar(SampleSet& samples, std::string_view sidecar_text) {
    const json j = parse_json(sidecar_text);
    if (j.contains("n") && j.at("n").get<int>() != samples.n)
        throw ValidationError("sidecar qubit count does not match the sample file");
    if (j.contains("qubit_order")) {
        std::vector<GridQubit> order;
        for (const auto& q : j.at("qubit_order")) order.push_back(qubit_from_json(q));
        if (static_cast<int>(order.size()) != samples.n)
            throw ValidationError("sidecar qubit order length does not match the sample file");
        samples.qubit_order = std::move(order);
    }
    if (j.contains("provenance")) samples.provenance = j.at("provenance").get<std::string>();
    if (j.contains("seed")) samples.seed = j.at("seed").get<uint64_t>();
}

std::string write_amplitudes_text(std::span<const std::complex<double>> amplitudes) {
    std::string out;
    for (const auto& a : amplitudes) {
        out += format_double(a.real());
        out += ' ';
        out += format_double(a.imag());
        out += '\n';
    }
    return out;
}

std::vector<std::complex<double>> parse_amplitudes(std::string_view text) {
    std::vector<std::complex<double>> out;
    size_t line_start = 0;
    size_t line_number = 1;
    while (line_start < text.size()) {
        size_t line_end = text.find('\n', line_start);
        if (line_end == std::string_view::npos) line_end = text.size();
        const auto line = text.substr(line_start, line_end - line_start);

        std::vector<std::string_view> fields;
        size_t pos = 0;
        while (pos < line.size()) {
            while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
            size_t end = pos;
            while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
            if (end > pos) fields.push_back(line.substr(pos, end - pos));
            pos = end;
        }
        if (!fields.empty()) {
            if (fields.size() != 2)
                throw ParseError("line " + std::to_string(line_number) + " has " +
                                 std::to_string(fields.size()) + " fields, expected 2");
            try {
                out.emplace_back(parse_double(fields[0]), parse_double(fields[1]));
            } catch (const ParseError& e) {
                throw ParseError("line " + std::to_string(line_number) + ": " + e.what());
            }
        }
        line_start = line_end + 1;
        ++line_number;
    }
    return out;
}

void write_amplitude_dump(const std::filesystem::path& binary_path,
                          const std::filesystem::path& sidecar_path, const AmplitudeTable& table,
                          const std::string& circuit_hash) {
    static_assert(sizeof(std::complex<double>) == 16);
    std::ofstream out(binary_path, std::ios::binary);
    if (!out) throw Error("cannot open " + binary_path.string() + " for writing");
    // Little-endian (re, im) pairs in index order; matches the in-memory
    // layout on every platform this builds for.
    out.write(reinterpret_cast<const char*>(table.amplitudes.data()),
              static_cast<std::streamsize>(table.amplitudes.size() * 16));
    if (!out) throw Error("short write to " + binary_path.string());
    out.close();

    json j;
    j["n"] = table.n;
    json order = json::array();
    for (const auto& q : table.qubit_order) order.push_back(qubit_to_json(q));
    j["qubit_order"] = std::move(order);
    j["circuit_hash"] = circuit_hash;
    write_file(sidecar_path, j.dump());
}

AmplitudeTable read_amplitude_dump(const std::filesystem::path& binary_path,
                                   const std::filesystem::path& sidecar_path) {
    const json j = parse_json(read_file(sidecar_path));
    AmplitudeTable table;
    table.n = j.at("n").get<int>();
    for (const auto& q : j.at("qubit_order")) table.qubit_order.push_back(qubit_from_json(q));
    if (static_cast<int>(table.qubit_order.size()) != table.n)
        throw ValidationError("amplitude sidecar qubit order length does not match n");

    const std::string bytes = read_file(binary_path);
    if (bytes.size() != (1ULL << table.n) * 16)
        throw AlignmentError("amplitude dump has " + std::to_string(bytes.size()) +
                             " bytes, expected " + std::to_string((1ULL << table.n) * 16));
    table.amplitudes.resize(1ULL << table.n);
    std::memcpy(table.amplitudes.data(), bytes.data(), bytes.size());
    return table;
}

std::string write_calibration(const CalibrationMap& calibration) {
    json native = json::array();
    for (const auto& [edge, params] : calibration.native)
        native.push_back({{"edge", json::array({qubit_to_json(edge.a), qubit_to_json(edge.b)})},
                          {"theta", params.first},
                          {"phi", params.second}});
    json rotations = json::array();
    for (const auto& [key, angles] : calibration.rotations)
        rotations.push_back(
            {{"edge", json::array({qubit_to_json(key.edge.a), qubit_to_json(key.edge.b)})},
             {"k", key.k},
             {"angles", json::array({angles[0], angles[1], angles[2], angles[3]})}});
    return json{{"native", std::move(native)}, {"rotations", std::move(rotations)}}.dump();
}

CalibrationMap parse_calibration(std::string_view text) {
    const json j = parse_json(text);
    CalibrationMap calibration;
    for (const auto& e : j.at("native")) {
        const auto& pair = e.at("edge");
        const Edge edge =
            Edge::between(qubit_from_json(pair.at(0)), qubit_from_json(pair.at(1)));
        calibration.native[edge] = {number_from_json(e.at("theta"), "theta"),
                                    number_from_json(e.at("phi"), "phi")};
    }
    for (const auto& e : j.at("rotations")) {
        const auto& pair = e.at("edge");
        const Edge edge =
            Edge::between(qubit_from_json(pair.at(0)), qubit_from_json(pair.at(1)));
        const auto& angles = e.at("angles");
        if (!angles.is_array() || angles.size() != 4)
            throw ParseError("rotation entry needs four angles");
        calibration.rotations[{edge, e.at("k").get<int>()}] = {
            number_from_json(angles[0], "angle"), number_from_json(angles[1], "angle"),
            number_from_json(angles[2], "angle"), number_from_json(angles[3], "angle")};
    }
    return calibration;
}

std::string write_manifest(const DatasetManifest& manifest) {
    json circuits = json::array();
    for (const auto& entry : manifest.circuits) {
        json e;
        e["circuit"] = entry.circuit_file;
        e["samples"] = entry.sample_file;
        if (entry.amplitude_file) e["amplitudes"] = *entry.amplitude_file;
        e["n"] = entry.n;
        e["m"] = entry.m;
        e["pattern"] = to_string(entry.pattern);
        e["variant"] = to_string(entry.variant);
        circuits.push_back(std::move(e));
    }
    return json{{"root", manifest.root}, {"circuits", std::move(circuits)}}.dump();
}

DatasetManifest parse_manifest(std::string_view text) {
    const json j = parse_json(text);
    DatasetManifest manifest;
    manifest.root = j.at("root").get<std::string>();
    for (const auto& e : j.at("circuits")) {
        ManifestEntry entry;
        entry.circuit_file = e.at("circuit").get<std::string>();
        entry.sample_file = e.at("samples").get<std::string>();
        if (e.contains("amplitudes")) entry.amplitude_file = e.at("amplitudes").get<std::string>();
        entry.n = e.at("n").get<int>();
        entry.m = e.at("m").get<int>();
        entry.pattern = pattern_from_string(e.at("pattern").get<std::string>());
        entry.variant = variant_from_string(e.at("variant").get<std::string>());
        manifest.circuits.push_back(std::move(entry));
    }
    return manifest;
}

AlignmentReport verify_alignment(const DatasetManifest& manifest, const ManifestEntry& entry) {
    if (!entry.amplitude_file)
        throw ValidationError("manifest entry has no amplitude file to verify");
    const std::filesystem::path root(manifest.root);

    const Circuit circuit = parse_circuit(read_file(root / entry.circuit_file));
    if (circuit.num_qubits() != entry.n)
        throw ValidationError("circuit file has " + std::to_string(circuit.num_qubits()) +
                              " qubits, manifest says " + std::to_string(entry.n));

    SampleSet samples = parse_samples(read_file(root / entry.sample_file), entry.n);
    samples.qubit_order = circuit.qubits;
    const auto amplitudes = parse_amplitudes(read_file(root / *entry.amplitude_file));

    AlignmentReport report;
    report.sample_count = samples.size();
    report.amplitude_count = amplitudes.size();
    if (report.sample_count == 0) throw AlignmentError("sample file is empty");
    if (report.sample_count != report.amplitude_count)
        throw AlignmentError("sample file has " + std::to_string(report.sample_count) +
                             " lines but amplitude file has " +
                             std::to_string(report.amplitude_count));

    std::vector<double> per_sample_probs;
    per_sample_probs.reserve(amplitudes.size());
    for (const auto& a : amplitudes) per_sample_probs.push_back(std::norm(a));
    report.xeb = f_xeb_aligned(samples, per_sample_probs);
    return report;
}

std::string write_spectrum_csv(const LevelSpectrum& spectrum) {
    std::string out = "k,phi_k,weight_k,band_lo,band_hi\n";
    for (int k = 1; k <= spectrum.n; ++k) {
        out += std::to_string(k);
        out += ',';
        if (spectrum.phi_by_level[k]) out += format_double(*spectrum.phi_by_level[k]);
        out += ',';
        out += format_double(spectrum.weights_by_level[k]);
        out += ',';
        if (spectrum.bands[k]) {
            out += format_double(spectrum.bands[k]->first);
            out += ',';
            out += format_double(spectrum.bands[k]->second);
        } else {
            out += ',';
        }
        out += '\n';
    }
    return out;
}

std::string content_hash(std::string_view bytes) {
    uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buffer[17];
    std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(hash));
    return buffer;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return content;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("short write to " + path.string());
}

} // namespace rcs
