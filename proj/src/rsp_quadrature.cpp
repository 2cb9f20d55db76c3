#include "rsp/rsp_quadrature.hpp"

#include <cmath>
#include <numbers>

#include "rsp/qmath.hpp"
#include "rsp/rng.hpp"

namespace rsp {

namespace {

Complex unit_phase(double angle) { return Complex{std::cos(angle), std::sin(angle)}; }

Complex grid_root(std::size_t j, std::size_t k, std::size_t m) {
    const double angle =
        2.0 * std::numbers::pi * static_cast<double>((j * k) % m) / static_cast<double>(m);
    return unit_phase(angle);
}

}  // namespace

void GridSpec::validate() const {
    if (m < 2) throw std::invalid_argument("GridSpec: need at least two points");
    if (!(dx > 0.0)) throw std::invalid_argument("GridSpec: dx must be positive");
    if (!std::isfinite(x_min) || !std::isfinite(dx))
        throw std::invalid_argument("GridSpec: non-finite grid");
}

Operator phase_function_premeasurement(const GridSpec& grid, const std::vector<double>& phi) {
    grid.validate();
    if (phi.size() != grid.m)
        throw std::invalid_argument("phase_function_premeasurement: sample count != grid size");
    std::vector<Complex> diag(grid.m);
    for (std::size_t k = 0; k < grid.m; ++k) diag[k] = unit_phase(phi[k]);
    return Operator::diagonal(diag);
}

std::vector<double> polynomial_phase(const GridSpec& grid, double alpha, double beta,
                                     double gamma) {
    grid.validate();
    std::vector<double> phi(grid.m);
    for (std::size_t k = 0; k < grid.m; ++k) {
        const double x = grid.x(k);
        phi[k] = alpha * x + beta * x * x + gamma * x * x * x;
    }
    return phi;
}

std::vector<StateVector> momentum_basis(const GridSpec& grid) {
    grid.validate();
    const std::size_t m = grid.m;
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    std::vector<StateVector> basis;
    basis.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        StateVector v(m);
        for (std::size_t k = 0; k < m; ++k) v.amps[k] = grid_root(j, k, m) * scale;
        v.normalized = true;
        basis.push_back(std::move(v));
    }
    return basis;
}

Operator momentum_displacement(const GridSpec& grid, double p) {
    grid.validate();
    std::vector<Complex> diag(grid.m);
    for (std::size_t k = 0; k < grid.m; ++k) diag[k] = unit_phase(p * grid.x(k));
    return Operator::diagonal(diag);
}

void QuadratureConfig::validate() const {
    grid.validate();
    if (phi.size() != grid.m)
        throw std::invalid_argument("quadrature protocol: phi sample count != grid size");
    for (double v : phi)
        if (!std::isfinite(v))
            throw std::invalid_argument("quadrature protocol: non-finite phase sample");
}

StateVector quadrature_target(const QuadratureConfig& config) {
    config.validate();
    const std::size_t m = config.grid.m;
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    StateVector t(m);
    if (!config.swap_xp) {
        for (std::size_t k = 0; k < m; ++k) t.amps[k] = unit_phase(config.phi[k]) * scale;
    } else {
        // Momentum-side profile e^{i phi(p_j)} expanded through the
        // conjugate momentum vectors: t[l] = (1/m) sum_j e^{-2 pi i j l / m + i phi(p_j)}.
        for (std::size_t l = 0; l < m; ++l) {
            Complex s{0.0, 0.0};
            for (std::size_t j = 0; j < m; ++j)
                s += std::conj(grid_root(j, l, m)) * unit_phase(config.phi[j]);
            t.amps[l] = s * scale / std::sqrt(static_cast<double>(m));
        }
    }
    t.normalized = true;
    return t;
}

std::vector<double> quadrature_distribution(const QuadratureConfig& config) {
    config.validate();
    return std::vector<double>(config.grid.m, 1.0 / static_cast<double>(config.grid.m));
}

Operator quadrature_bob_correction(const ClassicalMessage& message, const GridSpec& grid,
                                   bool swap_xp) {
    grid.validate();
    if (message.kind != ClassicalMessage::Kind::Real)
        throw std::invalid_argument("quadrature protocol: message must be a real number");
    const std::size_t m = grid.m;
    if (!swap_xp) {
        // Momentum displacement by the messaged p, relative to the grid origin:
        // diag(e^{i p k dx}).
        std::vector<Complex> diag(m);
        for (std::size_t k = 0; k < m; ++k)
            diag[k] = unit_phase(message.real * static_cast<double>(k) * grid.dx);
        return Operator::diagonal(diag);
    }
    // Position displacement by the messaged x relative to the grid origin,
    // diagonal in the momentum basis: F^dag diag(e^{-i (x - x_min) p_j}) F.
    const double offset = message.real - grid.x_min;
    Operator out(m);
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) {
            Complex s{0.0, 0.0};
            for (std::size_t j = 0; j < m; ++j)
                s += std::conj(grid_root(j, k, m)) * unit_phase(-offset * grid.p(j)) *
                     grid_root(j, l, m);
            out.at(k, l) = s / static_cast<double>(m);
        }
    return out;
}

ProtocolTranscript run_quadrature_protocol(const QuadratureConfig& config,
                                           const OutcomeSelector& selector) {
    config.validate();
    const std::size_t m = config.grid.m;
    const std::vector<double> probs = quadrature_distribution(config);

    std::size_t outcome = 0;
    if (selector.mode == OutcomeSelector::Mode::Forced) {
        if (selector.index >= m)
            throw std::out_of_range("run_quadrature_protocol: forced outcome out of range");
        outcome = selector.index;
    } else {
        outcome = sample_index(probs, Xoshiro256StarStar(selector.seed).uniform());
    }

    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    StateVector received(m);
    ClassicalMessage message;
    if (!config.swap_xp) {
        // Momentum outcome j: received[k] = e^{i (phi(x_k) - 2 pi j k / m)} / sqrt(m).
        for (std::size_t k = 0; k < m; ++k)
            received.amps[k] =
                unit_phase(config.phi[k]) * std::conj(grid_root(outcome, k, m)) * scale;
        message = ClassicalMessage::of_real(config.grid.p(outcome));
    } else {
        // Position outcome k: received[l] = (1/m) sum_j e^{i phi(p_j)} e^{2 pi i j (k - l)/m}.
        for (std::size_t l = 0; l < m; ++l) {
            Complex s{0.0, 0.0};
            for (std::size_t j = 0; j < m; ++j)
                s += unit_phase(config.phi[j]) * grid_root(j, outcome, m) *
                     std::conj(grid_root(j, l, m));
            received.amps[l] = s / static_cast<double>(m);
        }
        message = ClassicalMessage::of_real(config.grid.x(outcome));
    }
    received.normalized = true;

    ProtocolTranscript t;
    t.resource = "regularized-epr-grid[" + std::to_string(m) + "]";
    t.pre_measurement = config.swap_xp ? "e^{i phi(P)}" : "e^{i phi(X)}";
    t.outcome = outcome;
    t.probability = probs[outcome];
    t.message = message;
    t.correction = config.swap_xp ? "position displacement" : "momentum displacement";
    t.received = received;
    t.output = quadrature_bob_correction(message, config.grid, config.swap_xp).apply(received);
    t.output.normalized = true;
    t.target = quadrature_target(config);
    t.fidelity = fidelity(t.output, t.target);
    return t;
}

}  // namespace rsp
