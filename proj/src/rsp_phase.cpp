#include "rsp/rsp_phase.hpp"

#include <cmath>
#include <numbers>

#include "rsp/bipartite.hpp"
#include "rsp/qmath.hpp"
#include "rsp/rng.hpp"

namespace rsp {

namespace {

Complex unit_phase(double angle) { return Complex{std::cos(angle), std::sin(angle)}; }

// Resource amplitudes tanh(r)^n / cosh(r) on the cutoff space.
std::vector<double> tmsv_coeffs(double r, std::size_t cutoff) {
    std::vector<double> c(cutoff);
    const double t = std::tanh(r);
    double w = 1.0 / std::cosh(r);
    for (std::size_t n = 0; n < cutoff; ++n) {
        c[n] = w;
        w *= t;
    }
    return c;
}

}  // namespace

Operator phase_shift_unitary(double theta, std::size_t cutoff) {
    if (cutoff == 0) throw std::invalid_argument("phase_shift_unitary: cutoff must be positive");
    std::vector<Complex> diag(cutoff);
    for (std::size_t n = 0; n < cutoff; ++n)
        diag[n] = unit_phase(theta * static_cast<double>(n));
    return Operator::diagonal(diag);
}

void PhaseProtocolConfig::validate() const {
    if (r < 0.0) throw std::invalid_argument("phase protocol: r must be nonnegative");
    if (n_meas == 0) throw std::invalid_argument("phase protocol: n_meas must be positive");
    if (cutoff < n_meas) throw std::invalid_argument("phase protocol: cutoff must be >= n_meas");
    for (double v : phi_n)
        if (!std::isfinite(v)) throw std::invalid_argument("phase protocol: non-finite phi_n");
}

std::vector<double> PhaseProtocolConfig::kerr_phases(double chi, double theta,
                                                     std::size_t count) {
    std::vector<double> phi(count);
    for (std::size_t n = 0; n < count; ++n) {
        const double nd = static_cast<double>(n);
        phi[n] = chi * nd * nd + theta * nd;
    }
    return phi;
}

std::size_t default_phase_cutoff(double r, std::size_t n_meas) {
    // Smallest extra depth with tanh(r)^(2 extra) <= 1e-13, floor 4.  This
    // keeps the truncated-away resource weight negligible against the 1e-9
    // tolerances downstream.
    const double t = std::tanh(r);
    std::size_t extra = 4;
    if (t > 0.0) {
        const double need = std::log(1e-13) / (2.0 * std::log(t));
        extra = std::max<std::size_t>(4, static_cast<std::size_t>(std::ceil(need)));
    }
    return n_meas + extra;
}

Operator kerr_premeasurement(const PhaseProtocolConfig& config) {
    config.validate();
    std::vector<Complex> diag(config.cutoff, Complex{1.0, 0.0});
    for (std::size_t n = 0; n < config.cutoff && n < config.phi_n.size(); ++n)
        diag[n] = unit_phase(config.phi_n[n]);
    return Operator::diagonal(diag);
}

PeggBarnettMeasurement pegg_barnett_states(std::size_t n_meas, std::size_t cutoff) {
    if (n_meas == 0) throw std::invalid_argument("pegg_barnett_states: n_meas must be positive");
    if (cutoff < n_meas)
        throw std::invalid_argument("pegg_barnett_states: cutoff must be >= n_meas");

    PeggBarnettMeasurement out;
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_meas));
    out.states.reserve(n_meas);
    for (std::size_t j = 0; j < n_meas; ++j) {
        StateVector v(cutoff);
        for (std::size_t n = 0; n < n_meas; ++n) {
            const double angle = 2.0 * std::numbers::pi *
                                 static_cast<double>((j * n) % n_meas) /
                                 static_cast<double>(n_meas);
            v.amps[n] = unit_phase(angle) * scale;
        }
        v.normalized = true;
        out.states.push_back(std::move(v));
    }
    out.discard_projector = Operator(cutoff);
    for (std::size_t n = n_meas; n < cutoff; ++n)
        out.discard_projector.at(n, n) = Complex{1.0, 0.0};
    return out;
}

double success_probability(double r, std::size_t n_meas) {
    if (r < 0.0) throw std::invalid_argument("success_probability: r must be nonnegative");
    if (n_meas == 0) throw std::invalid_argument("success_probability: n_meas must be positive");
    return 1.0 - std::pow(std::tanh(r), 2.0 * static_cast<double>(n_meas));
}

StateVector phase_target_state(const PhaseProtocolConfig& config) {
    config.validate();
    const std::vector<double> c = tmsv_coeffs(config.r, config.n_meas);
    double kept = 0.0;
    for (double v : c) kept += v * v;  // = (1 - tanh^(2N) r) / 1
    const double scale = 1.0 / std::sqrt(kept);

    StateVector t(config.cutoff);
    for (std::size_t n = 0; n < config.n_meas; ++n) {
        const double phi = n < config.phi_n.size() ? config.phi_n[n] : 0.0;
        t.amps[n] = c[n] * unit_phase(phi) * scale;
    }
    t.normalized = true;
    return t;
}

std::vector<double> phase_distribution(const PhaseProtocolConfig& config) {
    config.validate();
    const std::vector<double> c = tmsv_coeffs(config.r, config.cutoff);
    double total = 0.0;
    for (double v : c) total += v * v;
    double kept = 0.0;
    for (std::size_t n = 0; n < config.n_meas; ++n) kept += c[n] * c[n];

    // Phase outcome j carries weight kept/N independent of j and phi_n;
    // everything above the measurement truncation is discarded.
    std::vector<double> probs(config.n_meas + 1, 0.0);
    const double per_outcome = kept / (static_cast<double>(config.n_meas) * total);
    for (std::size_t j = 0; j < config.n_meas; ++j) probs[j] = per_outcome;
    probs[config.n_meas] = (total - kept) / total;
    return probs;
}

Operator phase_bob_correction(const ClassicalMessage& message, std::size_t cutoff) {
    if (message.kind != ClassicalMessage::Kind::Real)
        throw std::invalid_argument("phase protocol: message must be a phase angle");
    return phase_shift_unitary(message.real, cutoff);
}

ProtocolTranscript run_phase_protocol(const PhaseProtocolConfig& config,
                                      const OutcomeSelector& selector) {
    config.validate();
    const std::size_t n = config.n_meas;
    const std::vector<double> probs = phase_distribution(config);

    std::size_t outcome = 0;
    if (selector.mode == OutcomeSelector::Mode::Forced) {
        if (selector.index >= probs.size())
            throw std::out_of_range("run_phase_protocol: forced outcome out of range");
        outcome = selector.index;
    } else {
        outcome = sample_index(probs, Xoshiro256StarStar(selector.seed).uniform());
    }

    ProtocolTranscript t;
    t.resource = "tmsv[r=" + std::to_string(config.r) + ",cutoff=" +
                 std::to_string(config.cutoff) + "]";
    t.pre_measurement = "diag(e^{i phi_n})";
    t.outcome = outcome;
    t.probability = probs[outcome];
    t.neglected_weight = std::pow(std::tanh(config.r), 2.0 * static_cast<double>(config.cutoff));

    if (outcome == n) {
        // Discard branch: the phase measurement missed the truncated space;
        // no message is sent and Bob takes no action.
        t.discarded = true;
        t.message = ClassicalMessage::of_integer(-1);
        t.correction = "none (discarded)";
        return t;
    }

    const double theta = 2.0 * std::numbers::pi * static_cast<double>(outcome) /
                         static_cast<double>(n);
    const std::vector<double> c = tmsv_coeffs(config.r, config.cutoff);

    // Bob's unnormalized conditional state:
    // (1/sqrt(N)) sum_{m<N} c_m e^{i (phi_m - theta m)} |m>.
    StateVector received(config.cutoff);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t m = 0; m < n; ++m) {
        const double phi = m < config.phi_n.size() ? config.phi_n[m] : 0.0;
        received.amps[m] = c[m] * unit_phase(phi - theta * static_cast<double>(m)) * scale;
    }
    received = received.normalized_copy();

    t.message = ClassicalMessage::of_real(theta);
    t.correction = "phase shift e^{i theta n}";
    t.received = received;
    t.output = phase_bob_correction(t.message, config.cutoff).apply(received);
    t.output.normalized = true;
    t.target = phase_target_state(config);
    t.fidelity = fidelity(t.output, t.target);
    return t;
}

}  // namespace rsp
