// rcskit: generate, simulate, sample, and verify random-circuit-sampling
// experiments from the command line. Exit codes: 0 ok/pass, 1 verdict fail,
// 2 parse error, 3 validation error, 4 alignment/integrity error, 64 usage,
// 65 capacity.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rcs/calibration.hpp"
#include "rcs/circuit.hpp"
#include "rcs/dataio.hpp"
#include "rcs/errors.hpp"
#include "rcs/estimators.hpp"
#include "rcs/noise.hpp"
#include "rcs/spectral.hpp"
#include "rcs/statevector.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rcs;

namespace {

PatternName pattern_flag(const std::string& s) {
    if (s == "efgh") return PatternName::EFGH;
    if (s == "abcdcdab") return PatternName::ABCDCDAB;
    throw UsageError("--pattern must be efgh or abcdcdab");
}

std::string circuit_file_name(int index) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "circuit_%03d.json", index);
    return buffer;
}

std::string sample_file_name(int index) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "samples_%03d.txt", index);
    return buffer;
}

std::string require_file(const std::string& path, const char* what) {
    if (!fs::exists(path))
        throw UsageError(std::string(what) + " file does not exist: " + path);
    return read_file(path);
}

Circuit load_circuit(const std::string& path) {
    return parse_circuit(require_file(path, "circuit"));
}

SampleSet load_samples(const std::string& path, const Circuit& circuit) {
    SampleSet samples = parse_samples(require_file(path, "sample"), circuit.num_qubits());
    samples.qubit_order = circuit.qubits;
    const fs::path sidecar = fs::path(path).replace_extension(".json");
    if (fs::exists(sidecar)) apply_sample_sidecar(samples, read_file(sidecar));
    return samples;
}

struct GenerateArgs {
    int n = 12, m = 14, count = 1;
    uint64_t seed = 0;
    std::string pattern = "efgh", variant = "full", out;
    double keep_fraction = 0.5;
};

int cmd_generate(const GenerateArgs& args) {
    fs::create_directories(args.out);
    const PatternName pattern = pattern_flag(args.pattern);
    for (int i = 0; i < args.count; ++i) {
        Circuit circuit = generate_random_circuit(args.seed + static_cast<uint64_t>(i), args.n,
                                                  args.m, pattern);
        if (args.variant == "patch") {
            circuit = derive_patch(circuit, default_cut(circuit));
        } else if (args.variant == "elided") {
            circuit = derive_elided(circuit, default_cut(circuit), args.keep_fraction,
                                    circuit.seed);
        } else if (args.variant != "full") {
            throw UsageError("--variant must be full, elided, or patch");
        }
        const std::string text = write_circuit(circuit);
        const fs::path path = fs::path(args.out) / circuit_file_name(i);
        write_file(path, text);
        json line{{"file", path.string()},
                  {"hash", content_hash(text)},
                  {"one_gates", circuit.one_gate_count()},
                  {"two_gates", circuit.two_gate_count()}};
        std::cout << line.dump() << "\n";
    }
    return 0;
}

struct SimulateArgs {
    std::string circuit, calibration, out;
    bool text = false;
    int max_qubits = 26;
};

int cmd_simulate(const SimulateArgs& args) {
    const Circuit circuit = load_circuit(args.circuit);
    SimulateOptions options;
    options.max_qubits = args.max_qubits;
    CalibrationMap calibration;
    if (!args.calibration.empty()) {
        calibration = parse_calibration(require_file(args.calibration, "calibration"));
        options.calibration = &calibration;
    }
    const AmplitudeTable table = simulate(circuit, options);
    const std::string hash = content_hash(write_circuit(circuit));
    if (args.text) {
        write_file(args.out, write_amplitudes_text(table.amplitudes));
    } else {
        write_amplitude_dump(args.out, fs::path(args.out).string() + ".json", table, hash);
    }
    json line{{"file", args.out}, {"n", table.n}, {"circuit_hash", hash}};
    std::cout << line.dump() << "\n";
    return 0;
}

struct SampleArgs {
    std::string circuit, calibration, out, amplitudes_out;
    double phi = 1.0;
    size_t count = 500000;
    uint64_t seed = 0;
    double readout = 0.0;
    bool trajectory = false;
    double e1 = 0.0016, e2 = 0.0062, eq = 0.038;
};

int cmd_sample(const SampleArgs& args) {
    const Circuit circuit = load_circuit(args.circuit);
    CalibrationMap calibration = identity_calibration(circuit);
    if (!args.calibration.empty())
        calibration = parse_calibration(require_file(args.calibration, "calibration"));

    SampleSet samples;
    AmplitudeTable table;
    if (args.trajectory) {
        const auto rates = ComponentErrorRates::uniform(circuit, args.e1, args.e2, args.eq);
        samples = pauli_trajectory_sample(circuit, calibration, rates, args.count, args.seed);
        if (!args.amplitudes_out.empty()) table = simulate(circuit, calibration);
    } else {
        table = simulate(circuit, calibration);
        samples = sample_noise_model(table, args.phi, args.count, args.seed);
        if (args.readout > 0)
            samples = apply_readout_errors(samples, args.readout, args.seed + 1);
    }
    write_file(args.out, write_samples(samples));
    write_file(fs::path(args.out).replace_extension(".json"), write_sample_sidecar(samples));

    if (!args.amplitudes_out.empty()) {
        std::vector<std::complex<double>> per_sample;
        per_sample.reserve(samples.size());
        for (uint64_t b : samples.bits) per_sample.push_back(table.amplitudes[b]);
        write_file(args.amplitudes_out, write_amplitudes_text(per_sample));
    }
    json line{{"file", args.out}, {"samples", samples.size()}, {"n", samples.n}};
    std::cout << line.dump() << "\n";
    return 0;
}

struct XebArgs {
    std::string circuit, samples, amplitudes, calibration;
    bool predict = false;
    bool porter_thomas = false;
    int max_qubits = 26;
};

int cmd_xeb(const XebArgs& args) {
    const Circuit circuit = load_circuit(args.circuit);
    const SampleSet samples = load_samples(args.samples, circuit);

    json line;
    XebResult result;
    std::vector<double> probs;
    if (!args.amplitudes.empty()) {
        if (!fs::exists(args.amplitudes))
            throw AlignmentError("amplitude file does not exist: " + args.amplitudes);
        const auto amplitudes = parse_amplitudes(read_file(args.amplitudes));
        std::vector<double> per_sample;
        per_sample.reserve(amplitudes.size());
        for (const auto& a : amplitudes) per_sample.push_back(std::norm(a));
        result = f_xeb_aligned(samples, per_sample);
    } else {
        SimulateOptions options;
        options.max_qubits = args.max_qubits;
        CalibrationMap calibration;
        if (!args.calibration.empty()) {
            calibration = parse_calibration(require_file(args.calibration, "calibration"));
            options.calibration = &calibration;
        }
        probs = probabilities(simulate(circuit, options));
        result = f_xeb(samples, probs);
    }
    line["f_xeb"] = result.estimate;
    line["std_error"] = result.std_error;
    line["n_samples"] = result.n_samples;
    if (args.predict) {
        line["predicted_phi_averaged"] = predict_fidelity_averaged(
            circuit.num_qubits(), static_cast<long>(circuit.one_gate_count()),
            static_cast<long>(circuit.two_gate_count()));
    }
    if (args.porter_thomas && !probs.empty()) {
        const auto ks = porter_thomas_check(probs);
        line["porter_thomas_ks"] = json{{"statistic", ks.statistic}, {"p_value", ks.p_value}};
    }
    std::cout << line.dump() << "\n";
    return 0;
}

struct PredictArgs {
    bool averaged = false;
    int n = 0;
    long g1 = 0, g2 = 0;
    std::string circuit;
    double e1 = 0.0016, e2 = 0.0062, eq = 0.038;
};

int cmd_predict(const PredictArgs& args) {
    json line;
    if (args.averaged) {
        line["predicted_phi"] =
            predict_fidelity_averaged(args.n, args.g1, args.g2, {args.e1, args.e2, args.eq});
    } else {
        if (args.circuit.empty())
            throw UsageError("predict needs --averaged with counts, or --circuit");
        const Circuit circuit = load_circuit(args.circuit);
        const auto rates = ComponentErrorRates::uniform(circuit, args.e1, args.e2, args.eq);
        line["predicted_phi"] = predict_fidelity(rates, circuit);
    }
    std::cout << line.dump() << "\n";
    return 0;
}

struct SpectralArgs {
    std::string circuit, samples, calibration, out;
    int bootstrap = 0;
    uint64_t seed = 0;
    int fit_k_min = 1, fit_k_max = 64;
};

int cmd_spectral(const SpectralArgs& args) {
    const Circuit circuit = load_circuit(args.circuit);
    const SampleSet samples = load_samples(args.samples, circuit);
    SimulateOptions options;
    CalibrationMap calibration;
    if (!args.calibration.empty()) {
        calibration = parse_calibration(require_file(args.calibration, "calibration"));
        options.calibration = &calibration;
    }
    const auto probs = probabilities(simulate(circuit, options));

    LevelSpectrum spectrum = level_fidelity(samples, probs);
    if (args.bootstrap > 0)
        add_bootstrap_bands(spectrum, samples, probs, args.bootstrap, args.seed);
    if (!args.out.empty()) write_file(args.out, write_spectrum_csv(spectrum));

    json line{{"n", spectrum.n}, {"weighted_fidelity", spectrum_weighted_fidelity(spectrum)}};
    try {
        const auto fit = fit_secondary_fidelity(spectrum, args.fit_k_min, args.fit_k_max);
        line["secondary_phi"] = fit.phi_hat;
        line["secondary_e"] = fit.e_hat;
        line["secondary_levels"] = fit.levels_used;
        line["secondary_total_fidelity"] =
            readout_dressed_fidelity(spectrum, fit.phi_hat, fit.e_hat);
    } catch (const ValidationError&) {
        // too few usable levels; report the spectrum without a fit
    }
    std::cout << line.dump() << "\n";
    return 0;
}

struct CalfitArgs {
    std::string circuit, samples;
    size_t min_samples = 10000;
    uint64_t seed = 0;
};

int cmd_calfit(const CalfitArgs& args) {
    const Circuit circuit = load_circuit(args.circuit);
    const SampleSet samples = load_samples(args.samples, circuit);
    FitOptions options;
    options.min_samples = args.min_samples;
    options.seed = args.seed;
    const FitResult fit = fit_two_gate(circuit, samples, options);
    json line{{"theta_hat", fit.theta_hat},
              {"phi_hat", fit.phi_hat},
              {"objective", fit.objective},
              {"evaluations", fit.evaluations}};
    std::cout << line.dump() << "\n";
    return 0;
}

struct DistanceArgs {
    std::string circuit, samples, calibration;
    double phi = 1.0;
};

int cmd_distance(const DistanceArgs& args) {
    const Circuit circuit = load_circuit(args.circuit);
    const SampleSet samples = load_samples(args.samples, circuit);
    SimulateOptions options;
    CalibrationMap calibration;
    if (!args.calibration.empty()) {
        calibration = parse_calibration(require_file(args.calibration, "calibration"));
        options.calibration = &calibration;
    }
    const auto probs = probabilities(simulate(circuit, options));
    json line{{"tv_distance", empirical_model_distance(samples, probs, args.phi)},
              {"phi", args.phi},
              {"n_samples", samples.size()}};
    std::cout << line.dump() << "\n";
    return 0;
}

struct AlignArgs {
    std::string manifest;
};

int cmd_align(const AlignArgs& args) {
    const DatasetManifest manifest = parse_manifest(require_file(args.manifest, "manifest"));
    for (const auto& entry : manifest.circuits) {
        if (!entry.amplitude_file) continue;
        const auto report = verify_alignment(manifest, entry);
        json line{{"circuit", entry.circuit_file},
                  {"samples", report.sample_count},
                  {"f_xeb", report.xeb.estimate},
                  {"std_error", report.xeb.std_error}};
        std::cout << line.dump() << "\n";
    }
    return 0;
}

// --- blind protocol --------------------------------------------------------

struct ChallengeArgs {
    int n = 12, m = 14, count = 4;
    uint64_t seed = 0;
    std::string pattern = "efgh", out, pre_shared_calibration;
    double threshold = -1;
};

int cmd_blind_challenge(const ChallengeArgs& args) {
    fs::create_directories(args.out);
    json circuits = json::array();
    for (int i = 0; i < args.count; ++i) {
        const Circuit circuit = generate_random_circuit(args.seed + static_cast<uint64_t>(i),
                                                        args.n, args.m,
                                                        pattern_flag(args.pattern));
        const std::string text = write_circuit(circuit);
        write_file(fs::path(args.out) / circuit_file_name(i), text);
        circuits.push_back({{"file", circuit_file_name(i)}, {"hash", content_hash(text)}});
    }
    json manifest{{"protocol", "blind-v1"},
                  {"n", args.n},
                  {"m", args.m},
                  {"pattern", args.pattern},
                  {"count", args.count},
                  {"circuits", std::move(circuits)}};
    if (args.threshold >= 0) manifest["threshold"] = args.threshold;
    if (!args.pre_shared_calibration.empty()) {
        const std::string calibration_text =
            require_file(args.pre_shared_calibration, "calibration");
        parse_calibration(calibration_text); // shape check before embedding
        write_file(fs::path(args.out) / "calibration.json", calibration_text);
        manifest["calibration"] = "pre-shared";
    } else {
        manifest["calibration"] = "with-response";
    }
    write_file(fs::path(args.out) / "challenge.json", manifest.dump());
    std::cout << json{{"challenge", args.out}, {"circuits", args.count}}.dump() << "\n";
    return 0;
}

struct RespondArgs {
    std::string challenge, out, prover = "honest";
    uint64_t seed = 1, device_seed = 7;
    double magnitude = 0.3;
    double phi = 0.4;
    size_t count = 500000;
};

int cmd_blind_respond(const RespondArgs& args) {
    const json manifest =
        json::parse(require_file((fs::path(args.challenge) / "challenge.json").string(),
                                 "challenge manifest"));
    fs::create_directories(args.out);

    const bool pre_shared = manifest.at("calibration").get<std::string>() == "pre-shared";
    json response_circuits = json::array();
    CalibrationMap device;
    std::string published_calibration;

    for (const auto& entry : manifest.at("circuits")) {
        const std::string file = entry.at("file").get<std::string>();
        const std::string text = read_file(fs::path(args.challenge) / file);
        if (content_hash(text) != entry.at("hash").get<std::string>())
            throw AlignmentError("challenge circuit " + file + " does not match its hash");
        const Circuit circuit = parse_circuit(text);

        if (device.native.empty()) {
            // The device's private calibration: one map for the whole
            // exchange, as every challenge circuit shares the layout.
            if (pre_shared) {
                device = parse_calibration(
                    read_file(fs::path(args.challenge) / "calibration.json"));
                published_calibration = write_calibration(device);
            } else {
                device = random_miscalibration(circuit, args.device_seed, args.magnitude);
                published_calibration =
                    args.prover == "withhold"
                        ? write_calibration(identity_calibration(circuit))
                        : write_calibration(device);
            }
        }

        const AmplitudeTable table = simulate(circuit, device);
        const double phi = args.prover == "uniform" ? 0.0 : args.phi;
        const SampleSet samples =
            sample_noise_model(table, phi, args.count,
                               args.seed + static_cast<uint64_t>(response_circuits.size()));
        const std::string sample_file = sample_file_name(
            static_cast<int>(response_circuits.size()));
        write_file(fs::path(args.out) / sample_file, write_samples(samples));
        response_circuits.push_back({{"file", file},
                                     {"hash", entry.at("hash").get<std::string>()},
                                     {"samples", sample_file}});
    }

    write_file(fs::path(args.out) / "calibration.json", published_calibration);
    json response{{"protocol", "blind-v1"}, {"circuits", std::move(response_circuits)}};
    write_file(fs::path(args.out) / "response.json", response.dump());
    std::cout << json{{"response", args.out}, {"prover", args.prover}}.dump() << "\n";
    return 0;
}

struct VerifyArgs {
    std::string challenge, response;
    double threshold = -1;
};

int cmd_blind_verify(const VerifyArgs& args) {
    const json manifest =
        json::parse(require_file((fs::path(args.challenge) / "challenge.json").string(),
                                 "challenge manifest"));
    const fs::path response_manifest_path = fs::path(args.response) / "response.json";
    if (!fs::exists(response_manifest_path))
        throw AlignmentError("no response found at " + response_manifest_path.string() +
                             "; run the respond step first");
    const json response = json::parse(read_file(response_manifest_path));

    const bool pre_shared = manifest.at("calibration").get<std::string>() == "pre-shared";
    const fs::path calibration_path =
        (pre_shared ? fs::path(args.challenge) : fs::path(args.response)) / "calibration.json";
    if (!fs::exists(calibration_path))
        throw AlignmentError("calibration not published at " + calibration_path.string());
    const CalibrationMap calibration = parse_calibration(read_file(calibration_path));

    std::map<std::string, std::pair<std::string, std::string>> responded; // file -> (hash, samples)
    for (const auto& entry : response.at("circuits"))
        responded[entry.at("file").get<std::string>()] = {
            entry.at("hash").get<std::string>(), entry.at("samples").get<std::string>()};

    int failed = 0, total = 0;
    for (const auto& entry : manifest.at("circuits")) {
        const std::string file = entry.at("file").get<std::string>();
        const std::string expected_hash = entry.at("hash").get<std::string>();
        const std::string text = read_file(fs::path(args.challenge) / file);
        if (content_hash(text) != expected_hash)
            throw AlignmentError("challenge circuit " + file + " does not match its hash");
        auto it = responded.find(file);
        if (it == responded.end())
            throw AlignmentError("response misses circuit " + file);
        if (it->second.first != expected_hash)
            throw AlignmentError("response echoes a different hash for " + file);

        const Circuit circuit = parse_circuit(text);
        SampleSet samples = parse_samples(
            read_file(fs::path(args.response) / it->second.second), circuit.num_qubits());
        samples.qubit_order = circuit.qubits;

        const auto probs = probabilities(simulate(circuit, calibration));
        const XebResult result = f_xeb(samples, probs);
        double threshold = args.threshold;
        if (threshold < 0 && manifest.contains("threshold"))
            threshold = manifest.at("threshold").get<double>();
        if (threshold < 0)
            threshold = 0.5 * predict_fidelity_averaged(
                                  circuit.num_qubits(),
                                  static_cast<long>(circuit.one_gate_count()),
                                  static_cast<long>(circuit.two_gate_count()));
        const bool pass = result.estimate - 3.0 * result.std_error > threshold;
        ++total;
        failed += pass ? 0 : 1;
        json line{{"file", file},
                  {"f_xeb", result.estimate},
                  {"std_error", result.std_error},
                  {"threshold", threshold},
                  {"pass", pass}};
        std::cout << line.dump() << "\n";
    }
    std::cout << json{{"verdict", failed == 0 ? "pass" : "fail"},
                      {"circuits", total},
                      {"failed", failed}}
                     .dump()
              << "\n";
    return failed == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"random circuit sampling verification toolkit"};
    app.require_subcommand(1);

    GenerateArgs generate_args;
    auto* generate = app.add_subcommand("generate", "write random circuit files");
    generate->add_option("--n", generate_args.n, "qubit count")->required();
    generate->add_option("--m", generate_args.m, "depth (2-gate layers)")->required();
    generate->add_option("--pattern", generate_args.pattern, "efgh|abcdcdab");
    generate->add_option("--variant", generate_args.variant, "full|elided|patch");
    generate->add_option("--seed", generate_args.seed, "base seed");
    generate->add_option("--count", generate_args.count, "number of circuits");
    generate->add_option("--keep-fraction", generate_args.keep_fraction,
                         "cross-cut gates kept by elided circuits");
    generate->add_option("--out", generate_args.out, "output directory")->required();

    SimulateArgs simulate_args;
    auto* simulate_cmd = app.add_subcommand("simulate", "write the full amplitude table");
    simulate_cmd->add_option("--circuit", simulate_args.circuit)->required();
    simulate_cmd->add_option("--calibration", simulate_args.calibration);
    simulate_cmd->add_option("--out", simulate_args.out)->required();
    simulate_cmd->add_flag("--text", simulate_args.text, "textual re/im lines");
    simulate_cmd->add_option("--max-qubits", simulate_args.max_qubits);

    SampleArgs sample_args;
    auto* sample = app.add_subcommand("sample", "draw noisy samples");
    sample->add_option("--circuit", sample_args.circuit)->required();
    sample->add_option("--calibration", sample_args.calibration);
    sample->add_option("--phi", sample_args.phi, "mixture fidelity");
    sample->add_option("--count", sample_args.count);
    sample->add_option("--seed", sample_args.seed);
    sample->add_option("--readout", sample_args.readout, "symmetric readout flip rate");
    sample->add_flag("--trajectory", sample_args.trajectory, "Pauli error trajectories");
    sample->add_option("--e1", sample_args.e1);
    sample->add_option("--e2", sample_args.e2);
    sample->add_option("--eq", sample_args.eq);
    sample->add_option("--out", sample_args.out)->required();
    sample->add_option("--amplitudes-out", sample_args.amplitudes_out,
                       "per-sample amplitude file");

    XebArgs xeb_args;
    auto* xeb_cmd = app.add_subcommand("xeb", "linear cross-entropy estimate");
    xeb_cmd->add_option("--circuit", xeb_args.circuit)->required();
    xeb_cmd->add_option("--samples", xeb_args.samples)->required();
    xeb_cmd->add_option("--amplitudes", xeb_args.amplitudes, "per-sample amplitude file");
    xeb_cmd->add_option("--calibration", xeb_args.calibration);
    xeb_cmd->add_flag("--predict", xeb_args.predict, "include averaged prediction");
    xeb_cmd->add_flag("--porter-thomas", xeb_args.porter_thomas);
    xeb_cmd->add_option("--max-qubits", xeb_args.max_qubits);

    PredictArgs predict_args;
    auto* predict = app.add_subcommand("predict", "component-product fidelity prediction");
    predict->add_flag("--averaged", predict_args.averaged);
    predict->add_option("--n", predict_args.n);
    predict->add_option("--g1", predict_args.g1);
    predict->add_option("--g2", predict_args.g2);
    predict->add_option("--circuit", predict_args.circuit);
    predict->add_option("--e1", predict_args.e1);
    predict->add_option("--e2", predict_args.e2);
    predict->add_option("--eq", predict_args.eq);

    SpectralArgs spectral_args;
    auto* spectral = app.add_subcommand("spectral", "Fourier-Walsh level decomposition");
    spectral->add_option("--circuit", spectral_args.circuit)->required();
    spectral->add_option("--samples", spectral_args.samples)->required();
    spectral->add_option("--calibration", spectral_args.calibration);
    spectral->add_option("--out", spectral_args.out, "spectrum CSV path");
    spectral->add_option("--bootstrap", spectral_args.bootstrap, "bootstrap resamples");
    spectral->add_option("--seed", spectral_args.seed);
    spectral->add_option("--fit-k-min", spectral_args.fit_k_min);
    spectral->add_option("--fit-k-max", spectral_args.fit_k_max);

    CalfitArgs calfit_args;
    auto* calfit = app.add_subcommand("calfit", "fit a coupler's 2-gate parameters");
    calfit->add_option("--circuit", calfit_args.circuit)->required();
    calfit->add_option("--samples", calfit_args.samples)->required();
    calfit->add_option("--min-samples", calfit_args.min_samples);
    calfit->add_option("--seed", calfit_args.seed);

    DistanceArgs distance_args;
    auto* distance = app.add_subcommand("distance", "empirical vs model TV distance");
    distance->add_option("--circuit", distance_args.circuit)->required();
    distance->add_option("--samples", distance_args.samples)->required();
    distance->add_option("--calibration", distance_args.calibration);
    distance->add_option("--phi", distance_args.phi)->required();

    AlignArgs align_args;
    auto* align = app.add_subcommand("align", "verify sample/amplitude alignment");
    align->add_option("--manifest", align_args.manifest)->required();

    auto* blind = app.add_subcommand("blind", "challenge/respond/verify workflow");
    blind->require_subcommand(1);

    ChallengeArgs challenge_args;
    auto* challenge = blind->add_subcommand("challenge", "write challenge circuits");
    challenge->add_option("--n", challenge_args.n);
    challenge->add_option("--m", challenge_args.m);
    challenge->add_option("--pattern", challenge_args.pattern);
    challenge->add_option("--count", challenge_args.count);
    challenge->add_option("--seed", challenge_args.seed);
    challenge->add_option("--threshold", challenge_args.threshold);
    challenge->add_option("--pre-shared-calibration", challenge_args.pre_shared_calibration,
                          "calibration file the prover shared up front");
    challenge->add_option("--out", challenge_args.out)->required();

    RespondArgs respond_args;
    auto* respond = blind->add_subcommand("respond", "sample the challenge circuits");
    respond->add_option("--challenge", respond_args.challenge)->required();
    respond->add_option("--out", respond_args.out)->required();
    respond->add_option("--seed", respond_args.seed);
    respond->add_option("--device-seed", respond_args.device_seed,
                        "seed of the device's private calibration");
    respond->add_option("--magnitude", respond_args.magnitude, "miscalibration magnitude (rad)");
    respond->add_option("--phi", respond_args.phi, "device mixture fidelity");
    respond->add_option("--count", respond_args.count, "samples per circuit");
    respond->add_option("--prover", respond_args.prover, "honest|uniform|withhold");

    VerifyArgs verify_args;
    auto* verify = blind->add_subcommand("verify", "judge a response");
    verify->add_option("--challenge", verify_args.challenge)->required();
    verify->add_option("--response", verify_args.response)->required();
    verify->add_option("--threshold", verify_args.threshold);

    try {
        app.parse(argc, argv);
        if (generate->parsed()) return cmd_generate(generate_args);
        if (simulate_cmd->parsed()) return cmd_simulate(simulate_args);
        if (sample->parsed()) return cmd_sample(sample_args);
        if (xeb_cmd->parsed()) return cmd_xeb(xeb_args);
        if (predict->parsed()) return cmd_predict(predict_args);
        if (spectral->parsed()) return cmd_spectral(spectral_args);
        if (calfit->parsed()) return cmd_calfit(calfit_args);
        if (distance->parsed()) return cmd_distance(distance_args);
        if (align->parsed()) return cmd_align(align_args);
        if (blind->parsed()) {
            if (challenge->parsed()) return cmd_blind_challenge(challenge_args);
            if (respond->parsed()) return cmd_blind_respond(respond_args);
            if (verify->parsed()) return cmd_blind_verify(verify_args);
        }
        throw UsageError("no subcommand given");
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        std::cerr << e.what() << "\n";
        return 64;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 3;
    } catch (const AlignmentError& e) {
        std::cerr << "alignment error: " << e.what() << "\n";
        return 4;
    } catch (const CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 65;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 64;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 70;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    }
}
