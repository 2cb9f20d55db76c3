#include "rsp/rsp_finite.hpp"

#include <cmath>
#include <numbers>

#include "rsp/qmath.hpp"
#include "rsp/rng.hpp"

namespace rsp {

namespace {

Complex unit_phase(double angle) { return Complex{std::cos(angle), std::sin(angle)}; }

// e^{2 pi i j k / n} with the index product reduced mod n first.
Complex root_of_unity(std::size_t j, std::size_t k, std::size_t n) {
    const double angle =
        2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / static_cast<double>(n);
    return unit_phase(angle);
}

}  // namespace

std::vector<Operator> zn_unitaries(std::size_t n) {
    if (n == 0) throw std::invalid_argument("zn_unitaries: n must be positive");
    std::vector<Operator> us;
    us.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Complex> diag(n);
        for (std::size_t k = 0; k < n; ++k) diag[k] = root_of_unity(j, k, n);
        us.push_back(Operator::diagonal(diag));
    }
    return us;
}

StateVector alice_input_state(const std::vector<double>& phases) {
    if (phases.empty()) throw std::invalid_argument("alice_input_state: empty phase list");
    const std::size_t n = phases.size();
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    StateVector v(n);
    for (std::size_t k = 0; k < n; ++k) v.amps[k] = unit_phase(-phases[k]) * scale;
    v.normalized = true;
    return v;
}

StateVector target_state(const std::vector<double>& alphas, const std::vector<double>& phases) {
    if (alphas.size() != phases.size())
        throw std::invalid_argument("target_state: alphas and phases must pair by index");
    StateVector v(alphas.size());
    for (std::size_t k = 0; k < alphas.size(); ++k)
        v.amps[k] = alphas[k] * unit_phase(phases[k]);
    v.normalized = true;  // inherits sum alpha^2 = 1
    return v;
}

std::vector<StateVector> measurement_basis(const std::vector<double>& phases) {
    const std::size_t n = phases.size();
    if (n == 0) throw std::invalid_argument("measurement_basis: empty phase list");
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<StateVector> basis;
    basis.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        StateVector v(n);
        for (std::size_t k = 0; k < n; ++k)
            v.amps[k] = root_of_unity(j, k, n) * unit_phase(-phases[k]) * scale;
        v.normalized = true;
        basis.push_back(std::move(v));
    }
    return basis;
}

Operator pre_measurement(const std::vector<double>& phases) {
    if (phases.empty()) throw std::invalid_argument("pre_measurement: empty phase list");
    std::vector<Complex> diag(phases.size());
    for (std::size_t k = 0; k < phases.size(); ++k) diag[k] = unit_phase(phases[k]);
    return Operator::diagonal(diag);
}

void FiniteConfig::validate() const {
    if (phases.empty()) throw std::invalid_argument("finite protocol: empty phase list");
    if (alphas.size() != phases.size())
        throw std::invalid_argument("finite protocol: alphas and phases must pair by index");
    double sum = 0.0;
    for (double a : alphas) {
        if (!(a >= 0.0))
            throw std::invalid_argument("finite protocol: alphas must be nonnegative");
        sum += a * a;
    }
    if (std::abs(sum - 1.0) > kDefaultTol)
        throw std::invalid_argument("finite protocol: alphas must satisfy sum alpha^2 = 1");
}

std::vector<double> finite_distribution(const FiniteConfig& config) {
    config.validate();
    const std::size_t n = config.n();
    // p_j = |R phi_j|^2 = (sum_k alpha_k^2) / N for every j.
    double sum = 0.0;
    for (double a : config.alphas) sum += a * a;
    return std::vector<double>(n, sum / static_cast<double>(n));
}

Operator finite_bob_correction(const ClassicalMessage& message, std::size_t n) {
    if (message.kind != ClassicalMessage::Kind::Integer)
        throw std::invalid_argument("finite protocol: message must be an outcome index");
    const auto j = static_cast<std::size_t>(message.integer);
    if (message.integer < 0 || j >= n)
        throw std::out_of_range("finite protocol: message index out of range");
    std::vector<Complex> diag(n);
    for (std::size_t k = 0; k < n; ++k) diag[k] = root_of_unity(j, k, n);
    return Operator::diagonal(diag);
}

ProtocolTranscript run_finite_protocol(const FiniteConfig& config,
                                       const OutcomeSelector& selector) {
    config.validate();
    const std::size_t n = config.n();
    const std::vector<double> probs = finite_distribution(config);

    std::size_t j = 0;
    if (selector.mode == OutcomeSelector::Mode::Forced) {
        if (selector.index >= n)
            throw std::out_of_range("run_finite_protocol: forced outcome out of range");
        j = selector.index;
    } else {
        j = sample_index(probs, Xoshiro256StarStar(selector.seed).uniform());
    }

    // Alice projects onto phi_j; Bob's unnormalized conditional state is
    // R phi_j with amplitudes alpha_k e^{i (phi_k - 2 pi j k / N)} / sqrt(N).
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    StateVector received(n);
    for (std::size_t k = 0; k < n; ++k)
        received.amps[k] = config.alphas[k] * unit_phase(config.phases[k]) *
                           std::conj(root_of_unity(j, k, n)) * scale;
    const double p = received.norm_sq();
    received = received.normalized_copy();

    ProtocolTranscript t;
    t.resource = "schmidt[" + std::to_string(n) + "]";
    t.pre_measurement = "diag(e^{i phi_k})";
    t.outcome = j;
    t.probability = p;
    t.message = ClassicalMessage::of_integer(static_cast<std::int64_t>(j));
    t.correction = "Z_N power " + std::to_string(j);
    t.received = received;
    t.output = finite_bob_correction(t.message, n).apply(received);
    t.output.normalized = true;
    t.target = target_state(config.alphas, config.phases);
    t.fidelity = fidelity(t.output, t.target);
    return t;
}

ProtocolTranscript run_finite_protocol(const std::vector<double>& alphas,
                                       const std::vector<double>& phases,
                                       const OutcomeSelector& selector) {
    return run_finite_protocol(FiniteConfig{alphas, phases}, selector);
}

}  // namespace rsp
