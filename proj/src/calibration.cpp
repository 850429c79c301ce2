#include "rcs/calibration.hpp"

#include <algorithm>
#include <cmath>

#include "rcs/errors.hpp"
#include "rcs/rng.hpp"
#include "rcs/statevector.hpp"

namespace rcs {

namespace {
constexpr double kPi = 3.141592653589793;
constexpr double kTwoPi = 6.283185307179586;
} // namespace

CalibrationMap identity_calibration(const Circuit& circuit) {
    CalibrationMap map;
    for (const auto& [edge, occurrences] : circuit.edge_occurrences()) {
        map.native[edge] = {kStandardTheta, kStandardPhi};
        for (int k = 0; k < occurrences; ++k)
            map.rotations[{edge, k}] = {0.0, 0.0, 0.0, 0.0};
    }
    return map;
}

Circuit apply_calibration(const Circuit& circuit, const CalibrationMap& calibration) {
    Circuit out;
    out.qubits = circuit.qubits;
    out.depth = circuit.depth;
    out.pattern = circuit.pattern;
    out.variant = circuit.variant;
    out.seed = circuit.seed;

    std::map<Edge, int> seen;
    for (const auto& moment : circuit.moments) {
        const auto* twos = std::get_if<TwosMoment>(&moment);
        if (!twos) {
            out.moments.push_back(moment);
            continue;
        }
        RzMoment pre, post;
        TwosMoment adjusted;
        for (const auto& g : twos->gates) {
            const Edge edge = g.edge();
            auto native = calibration.native.find(edge);
            if (native == calibration.native.end())
                throw ValidationError("calibration has no native parameters for an edge of the "
                                      "circuit");
            const int k = seen[edge]++;
            auto rot = calibration.rotations.find({edge, k});
            if (rot == calibration.rotations.end())
                throw ValidationError("calibration has no rotations for occurrence " +
                                      std::to_string(k) + " of an edge");
            const auto& angles = rot->second;
            pre.gates.push_back({g.q_a, angles[0]});
            pre.gates.push_back({g.q_b, angles[1]});
            post.gates.push_back({g.q_a, angles[2]});
            post.gates.push_back({g.q_b, angles[3]});
            adjusted.gates.push_back(
                {native->second.first, native->second.second, g.q_a, g.q_b});
        }
        if (!pre.gates.empty()) out.moments.emplace_back(std::move(pre));
        out.moments.emplace_back(std::move(adjusted));
        if (!post.gates.empty()) out.moments.emplace_back(std::move(post));
    }
    return out;
}

CalibrationMap random_miscalibration(const Circuit& circuit, uint64_t seed, double magnitude) {
    if (magnitude < 0) throw ValidationError("miscalibration magnitude must be non-negative");
    CalibrationMap map;
    for (const auto& [edge, occurrences] : circuit.edge_occurrences()) {
        auto stream = substream(seed, stream_tag::miscalibration, static_cast<uint64_t>(edge.a.row),
                                static_cast<uint64_t>(edge.a.col),
                                static_cast<uint64_t>(edge.b.row * 64 + edge.b.col));
        auto offset = [&] {
            const double u = stream.next_double();
            return magnitude == 0 ? 0.0 : magnitude * (2.0 * u - 1.0);
        };
        map.native[edge] = {kStandardTheta + offset(), kStandardPhi + offset()};
        for (int k = 0; k < occurrences; ++k)
            map.rotations[{edge, k}] = {offset(), offset(), offset(), offset()};
    }
    return map;
}

namespace {

struct Objective {
    const PairProbFn& model;
    std::array<double, 4> frequencies;
    int evaluations = 0;

    double operator()(double theta, double phi) {
        ++evaluations;
        if (theta < 0 || theta > kPi) return -1e300;
        auto probs = model(theta, phi);
        double xeb = 0;
        for (int x = 0; x < 4; ++x) xeb += frequencies[x] * 4.0 * probs[x];
        return xeb - 1.0;
    }
};

struct Vertex {
    double theta, phi, value;
};

// Nelder-Mead on (theta, phi). phi is optimized unconstrained (the objective
// is 2pi-periodic) and wrapped afterwards; theta is boxed via the objective.
Vertex nelder_mead(Objective& objective, double theta0, double phi0, const FitOptions& options,
                   bool& converged) {
    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
    std::array<Vertex, 3> simplex;
    const double step = 0.15;
    const double t1 = theta0 + step <= kPi ? theta0 + step : theta0 - step;
    simplex[0] = {theta0, phi0, objective(theta0, phi0)};
    simplex[1] = {t1, phi0, objective(t1, phi0)};
    simplex[2] = {theta0, phi0 + step, objective(theta0, phi0 + step)};

    converged = false;
    const int start_evaluations = objective.evaluations;
    while (objective.evaluations - start_evaluations < options.max_evaluations_per_restart) {
        std::sort(simplex.begin(), simplex.end(),
                  [](const Vertex& a, const Vertex& b) { return a.value > b.value; });
        const double diameter =
            std::max({std::hypot(simplex[0].theta - simplex[1].theta,
                                 simplex[0].phi - simplex[1].phi),
                      std::hypot(simplex[0].theta - simplex[2].theta,
                                 simplex[0].phi - simplex[2].phi),
                      std::hypot(simplex[1].theta - simplex[2].theta,
                                 simplex[1].phi - simplex[2].phi)});
        if (diameter < options.simplex_tol) {
            converged = true;
            break;
        }

        const double ct = (simplex[0].theta + simplex[1].theta) / 2;
        const double cp = (simplex[0].phi + simplex[1].phi) / 2;
        Vertex& worst = simplex[2];

        const double rt = ct + alpha * (ct - worst.theta);
        const double rp = cp + alpha * (cp - worst.phi);
        const double rv = objective(rt, rp);
        if (rv > simplex[0].value) {
            const double et = ct + gamma * (rt - ct);
            const double ep = cp + gamma * (rp - cp);
            const double ev = objective(et, ep);
            worst = ev > rv ? Vertex{et, ep, ev} : Vertex{rt, rp, rv};
        } else if (rv > simplex[1].value) {
            worst = {rt, rp, rv};
        } else {
            const bool outside = rv > worst.value;
            const double base_t = outside ? rt : worst.theta;
            const double base_p = outside ? rp : worst.phi;
            const double base_v = outside ? rv : worst.value;
            const double kt = ct + rho * (base_t - ct);
            const double kp = cp + rho * (base_p - cp);
            const double kv = objective(kt, kp);
            if (kv > base_v) {
                worst = {kt, kp, kv};
            } else {
                for (int i = 1; i < 3; ++i) {
                    simplex[i].theta = simplex[0].theta + sigma * (simplex[i].theta - simplex[0].theta);
                    simplex[i].phi = simplex[0].phi + sigma * (simplex[i].phi - simplex[0].phi);
                    simplex[i].value = objective(simplex[i].theta, simplex[i].phi);
                }
            }
        }
    }
    std::sort(simplex.begin(), simplex.end(),
              [](const Vertex& a, const Vertex& b) { return a.value > b.value; });
    return simplex[0];
}

} // namespace

FitResult fit_two_gate(const PairProbFn& model, const SampleSet& samples,
                       const FitOptions& options) {
    if (samples.n != 2) throw ValidationError("fit_two_gate requires two-qubit samples");
    if (samples.size() < options.min_samples)
        throw ValidationError("insufficient samples for a fit: have " +
                              std::to_string(samples.size()) + ", need at least " +
                              std::to_string(options.min_samples));

    Objective objective{model, {0, 0, 0, 0}};
    for (uint64_t b : samples.bits) objective.frequencies[b & 3] += 1.0;
    for (auto& f : objective.frequencies) f /= static_cast<double>(samples.size());

    auto stream = substream(options.seed, stream_tag::fit);
    Vertex best{kStandardTheta, kStandardPhi, -1e300};
    bool any_converged = false;
    for (int r = 0; r < options.restarts; ++r) {
        double t0 = r == 0 ? kStandardTheta : stream.next_double() * kPi;
        double p0 = r == 0 ? kStandardPhi : stream.next_double() * kTwoPi;
        bool converged = false;
        Vertex v = nelder_mead(objective, t0, p0, options, converged);
        any_converged |= converged;
        if (v.value > best.value) best = v;
    }

    best.phi = std::fmod(best.phi, kTwoPi);
    if (best.phi < 0) best.phi += kTwoPi;
    if (!any_converged)
        throw ConvergenceError("fit did not converge within the evaluation budget", best.theta,
                               best.phi, best.value);
    return {best.theta, best.phi, best.value, objective.evaluations};
}

FitResult fit_two_gate(const Circuit& pair_circuit, const SampleSet& samples,
                       const FitOptions& options) {
    if (pair_circuit.num_qubits() != 2)
        throw ValidationError("fit_two_gate requires a two-qubit circuit");
    PairProbFn model = [&pair_circuit](double theta, double phi) {
        Circuit candidate = pair_circuit;
        for (auto& moment : candidate.moments)
            if (auto* twos = std::get_if<TwosMoment>(&moment))
                for (auto& g : twos->gates) {
                    g.theta = theta;
                    g.phi = phi;
                }
        auto probs = probabilities(simulate(candidate));
        return std::array<double, 4>{probs[0], probs[1], probs[2], probs[3]};
    };
    return fit_two_gate(model, samples, options);
}

} // namespace rcs
