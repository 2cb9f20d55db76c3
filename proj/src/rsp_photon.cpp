#include "rsp/rsp_photon.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "rsp/qmath.hpp"
#include "rsp/rng.hpp"

namespace rsp {

namespace {

Complex unit_phase(double angle) { return Complex{std::cos(angle), std::sin(angle)}; }

Complex root_of_unity(std::size_t j, std::size_t k, std::size_t n) {
    const double angle =
        2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / static_cast<double>(n);
    return unit_phase(angle);
}

// Coefficient lookup with zero default.
Complex coeff_at(const std::map<int, Complex>& coeffs, int n) {
    const auto it = coeffs.find(n);
    return it == coeffs.end() ? Complex{} : it->second;
}

}  // namespace

Operator down_shift(std::size_t m, std::size_t cutoff) {
    if (cutoff == 0) throw std::invalid_argument("down_shift: cutoff must be positive");
    Operator op(cutoff);
    for (std::size_t n = 0; n + m < cutoff; ++n) op.at(n, n + m) = Complex{1.0, 0.0};
    return op;
}

std::vector<Operator> ladder_unitaries(std::size_t n) {
    if (n == 0) throw std::invalid_argument("ladder_unitaries: n must be positive");
    std::vector<Operator> us;
    us.reserve(n);
    for (std::size_t m = 0; m < n; ++m) {
        Operator u(n);
        for (std::size_t k = 0; k < n; ++k) u.at((k + n - m) % n, k) = Complex{1.0, 0.0};
        us.push_back(std::move(u));
    }
    return us;
}

FinitePremeasurement finite_fourier_premeasurement(const std::vector<double>& phases) {
    const std::size_t n = phases.size();
    if (n == 0)
        throw std::invalid_argument("finite_fourier_premeasurement: empty phase list");

    FinitePremeasurement out;
    out.coeffs.resize(n);
    for (std::size_t m = 0; m < n; ++m) {
        Complex s{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j)
            s += std::conj(root_of_unity(j, m, n)) * unit_phase(phases[j]);
        out.coeffs[m] = s / static_cast<double>(n);
    }

    // V = sum_j e^{i phi_j} |theta_j><theta_j| expands entrywise to
    // V_{ab} = (1/n) sum_j e^{i phi_j} e^{2 pi i j (a - b) / n} = f_{(b-a) mod n}.
    out.v = Operator(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) out.v.at(a, b) = out.coeffs[(b + n - a) % n];
    return out;
}

std::vector<double> remote_fock_distribution(std::size_t m, std::size_t d) {
    if (m >= d)
        throw std::invalid_argument("remote_fock_prep: target exceeds the regularized dimension");
    // Outcomes n = 0 .. d-1-m survive Alice's down-shift, each with equal
    // weight; probabilities are conditioned on the filter passing.
    std::vector<double> probs(d, 0.0);
    for (std::size_t n = 0; n + m < d; ++n) probs[n] = 1.0 / static_cast<double>(d - m);
    return probs;
}

ProtocolTranscript remote_fock_prep(std::size_t m, std::size_t d,
                                    const OutcomeSelector& selector) {
    const std::vector<double> probs = remote_fock_distribution(m, d);

    std::size_t outcome = 0;
    if (selector.mode == OutcomeSelector::Mode::Forced) {
        if (selector.index >= d)
            throw std::out_of_range("remote_fock_prep: forced outcome out of range");
        outcome = selector.index;
    } else {
        outcome = sample_index(probs, Xoshiro256StarStar(selector.seed).uniform());
    }

    ProtocolTranscript t;
    t.resource = "regularized-epr[" + std::to_string(d) + "]";
    t.pre_measurement = "down-shift " + std::to_string(m);
    t.outcome = outcome;
    t.probability = probs[outcome];
    t.message = ClassicalMessage::of_integer(static_cast<std::int64_t>(outcome));
    t.correction = "down-shift " + std::to_string(outcome);
    t.target = StateVector::basis(d, m);
    if (probs[outcome] == 0.0) {
        t.discarded = true;  // zero-probability branch beyond the surviving range
        t.fidelity = 0.0;
        return t;
    }
    t.received = StateVector::basis(d, outcome + m);
    t.output = down_shift(outcome, d).apply(t.received);
    t.output.normalized = true;
    t.fidelity = fidelity(t.output, t.target);
    return t;
}

void PhotonFiniteConfig::validate() const {
    if (n == 0) throw std::invalid_argument("photon_finite protocol: n must be positive");
    if (phases.size() != n)
        throw std::invalid_argument("photon_finite protocol: need one phase per phase state");
    for (double v : phases)
        if (!std::isfinite(v))
            throw std::invalid_argument("photon_finite protocol: non-finite phase");
}

std::vector<double> photon_finite_distribution(const PhotonFiniteConfig& config) {
    config.validate();
    return std::vector<double>(config.n, 1.0 / static_cast<double>(config.n));
}

Operator photon_finite_bob_correction(const ClassicalMessage& message, std::size_t n) {
    if (message.kind != ClassicalMessage::Kind::Integer)
        throw std::invalid_argument("photon_finite protocol: message must be a photon count");
    const auto m = static_cast<std::size_t>(message.integer);
    if (message.integer < 0 || m >= n)
        throw std::out_of_range("photon_finite protocol: message out of range");
    Operator u(n);
    for (std::size_t k = 0; k < n; ++k) u.at((k + n - m) % n, k) = Complex{1.0, 0.0};
    return u;
}

ProtocolTranscript run_photon_finite(const PhotonFiniteConfig& config,
                                     const OutcomeSelector& selector) {
    config.validate();
    const std::size_t n = config.n;
    const std::vector<double> probs = photon_finite_distribution(config);

    std::size_t outcome = 0;
    if (selector.mode == OutcomeSelector::Mode::Forced) {
        if (selector.index >= n)
            throw std::out_of_range("run_photon_finite: forced outcome out of range");
        outcome = selector.index;
    } else {
        outcome = sample_index(probs, Xoshiro256StarStar(selector.seed).uniform());
    }

    const FinitePremeasurement pre = finite_fourier_premeasurement(config.phases);

    // Counting m photons on A leaves Bob with row m of V over the shared
    // index: received[k] = f_{(k-m) mod n} (normalized; rows of V have unit
    // norm by the coefficient sum rule).
    StateVector received(n);
    for (std::size_t k = 0; k < n; ++k) received.amps[k] = pre.v.at(outcome, k);
    received = received.normalized_copy();

    ProtocolTranscript t;
    t.resource = "phase-correlated[" + std::to_string(n) + "]";
    t.pre_measurement = "sum_j e^{i phi_j} |theta_j><theta_j|";
    t.outcome = outcome;
    t.probability = probs[outcome];
    t.message = ClassicalMessage::of_integer(static_cast<std::int64_t>(outcome));
    t.correction = "cyclic down-shift " + std::to_string(outcome);
    t.received = received;
    t.output = photon_finite_bob_correction(t.message, n).apply(received);
    t.output.normalized = true;
    t.target = StateVector(n);
    for (std::size_t k = 0; k < n; ++k) t.target.amps[k] = pre.coeffs[k];
    t.target.normalized = true;
    t.fidelity = fidelity(t.output, t.target);
    return t;
}

namespace {

// Adaptive Simpson quadrature for a complex integrand.
Complex simpson_estimate(double a, double b, Complex fa, Complex fm, Complex fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

Complex adaptive_simpson(const std::function<Complex(double)>& f, double a, double b,
                         Complex fa, Complex fm, Complex fb, Complex whole, double tol,
                         int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const Complex flm = f(lm);
    const Complex frm = f(rm);
    const Complex left = simpson_estimate(a, m, fa, flm, fm);
    const Complex right = simpson_estimate(m, b, fm, frm, fb);
    const Complex delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

Complex integrate_periodic(const std::function<Complex(double)>& f, int panels, double tol) {
    const double period = 2.0 * std::numbers::pi;
    const double h = period / panels;
    Complex total{0.0, 0.0};
    for (int p = 0; p < panels; ++p) {
        const double a = p * h;
        const double b = a + h;
        const double m = 0.5 * (a + b);
        const Complex fa = f(a);
        const Complex fm = f(m);
        const Complex fb = f(b);
        const Complex whole = simpson_estimate(a, b, fa, fm, fb);
        total += adaptive_simpson(f, a, b, fa, fm, fb, whole, tol / panels, 20);
    }
    return total;
}

}  // namespace

FourierCoeffs continuous_fourier_coeffs(const FourierPhaseProfile& profile, int n_min,
                                        int n_max) {
    if (!profile.has_function())
        throw std::invalid_argument("continuous_fourier_coeffs: profile has no function handle");
    if (n_min > n_max)
        throw std::invalid_argument("continuous_fourier_coeffs: empty index range");

    FourierCoeffs out;
    double weight = 0.0;
    for (int n = n_min; n <= n_max; ++n) {
        const auto integrand = [&](double theta) {
            const double phi = profile.periodic_phase(theta);
            if (!std::isfinite(phi))
                throw std::invalid_argument(
                    "continuous_fourier_coeffs: non-finite phase function value");
            return unit_phase(phi - static_cast<double>(n) * theta);
        };
        // Enough initial panels to resolve the e^{-i n theta} oscillation.
        const int panels = std::max(8, 2 * std::abs(n) + 2);
        const Complex f_n =
            integrate_periodic(integrand, panels, 1e-11) / (2.0 * std::numbers::pi);
        out.coeffs[n] = f_n;
        weight += std::norm(f_n);
    }
    out.parseval_defect = 1.0 - weight;
    return out;
}

void PhotonCutoffConfig::validate() const {
    if (cutoff == 0) throw std::invalid_argument("photon_cutoff protocol: cutoff must be positive");
    if (resource_dim == 0)
        throw std::invalid_argument("photon_cutoff protocol: resource_dim must be positive");
    for (const auto& [n, f] : coeffs)
        if (!is_finite(f))
            throw std::invalid_argument("photon_cutoff protocol: non-finite coefficient");
}

Operator cutoff_premeasurement(const PhotonCutoffConfig& config) {
    config.validate();
    const std::size_t d = config.resource_dim;
    const int band = static_cast<int>(config.cutoff);
    // V_{ab} = f_{b-a} on the band |b-a| < cutoff: down-shifts carry the
    // positive-index coefficients, their adjoints the negative ones.
    Operator v(d);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            const int n = static_cast<int>(b) - static_cast<int>(a);
            if (n <= -band || n >= band) continue;
            v.at(a, b) = coeff_at(config.coeffs, n);
        }
    return v;
}

namespace {

PhotonCutoffTarget cutoff_target_impl(const PhotonCutoffConfig& config) {
    PhotonCutoffTarget out;
    out.state = StateVector(config.resource_dim);
    double kept = 0.0;
    double dropped = 0.0;
    for (const auto& [n, f] : config.coeffs) {
        if (std::abs(n) >= static_cast<int>(config.cutoff)) continue;
        if (n < 0) {
            dropped += std::norm(f);
        } else if (n < static_cast<int>(config.resource_dim)) {
            out.state.amps[static_cast<std::size_t>(n)] = f;
            kept += std::norm(f);
        }
    }
    out.dropped = dropped;
    if (kept > kZeroProb) {
        out.state = out.state.normalized_copy();
    }
    return out;
}

}  // namespace

PhotonCutoffTarget photon_cutoff_target(const PhotonCutoffConfig& config) {
    config.validate();
    return cutoff_target_impl(config);
}

std::vector<double> photon_cutoff_distribution(const PhotonCutoffConfig& config) {
    config.validate();
    const Operator v = cutoff_premeasurement(config);
    const std::size_t d = config.resource_dim;
    // Outcome n carries the norm of row n of V (resource weight 1/d per
    // shared index), Born-normalized over the post-pre-measurement state.
    std::vector<double> probs(d, 0.0);
    double total = 0.0;
    for (std::size_t n = 0; n < d; ++n) {
        double w = 0.0;
        for (std::size_t b = 0; b < d; ++b) w += std::norm(v.at(n, b));
        probs[n] = w;
        total += w;
    }
    if (total < kZeroProb)
        throw std::invalid_argument("photon_cutoff protocol: pre-measurement annihilates the resource");
    for (auto& p : probs) p /= total;
    return probs;
}

Operator photon_cutoff_bob_correction(const ClassicalMessage& message, std::size_t dim) {
    if (message.kind != ClassicalMessage::Kind::Integer)
        throw std::invalid_argument("photon_cutoff protocol: message must be a photon count");
    const auto n = static_cast<std::size_t>(message.integer);
    if (message.integer < 0 || n >= dim)
        throw std::out_of_range("photon_cutoff protocol: message out of range");
    return down_shift(n, dim);
}

OutcomeRange photon_cutoff_retained_range(const PhotonCutoffConfig& config) {
    config.validate();
    const int band = static_cast<int>(config.cutoff);
    int min_idx = 0;
    int max_idx = 0;
    bool any = false;
    for (const auto& [n, f] : config.coeffs) {
        if (std::abs(n) >= band || std::norm(f) == 0.0) continue;
        if (!any) {
            min_idx = max_idx = n;
            any = true;
        } else {
            min_idx = std::min(min_idx, n);
            max_idx = std::max(max_idx, n);
        }
    }
    OutcomeRange out;
    if (!any) return out;
    const int d = static_cast<int>(config.resource_dim);
    const int first = std::max(0, -min_idx);
    const int last = d - 1 - std::max(0, max_idx);
    if (first > last) return out;
    out.first = static_cast<std::size_t>(first);
    out.last = static_cast<std::size_t>(last);
    out.empty = false;
    return out;
}

ProtocolTranscript run_photon_cutoff(const PhotonCutoffConfig& config,
                                     const OutcomeSelector& selector) {
    config.validate();
    const std::size_t d = config.resource_dim;
    const std::vector<double> probs = photon_cutoff_distribution(config);

    std::size_t outcome = 0;
    if (selector.mode == OutcomeSelector::Mode::Forced) {
        if (selector.index >= d)
            throw std::out_of_range("run_photon_cutoff: forced outcome out of range");
        outcome = selector.index;
    } else {
        outcome = sample_index(probs, Xoshiro256StarStar(selector.seed).uniform());
    }

    const PhotonCutoffTarget target = cutoff_target_impl(config);

    double band_weight = 0.0;
    for (const auto& [n, f] : config.coeffs)
        if (std::abs(n) < static_cast<int>(config.cutoff)) band_weight += std::norm(f);
    char defect[48];
    std::snprintf(defect, sizeof(defect), "%.3e", 1.0 - band_weight);

    ProtocolTranscript t;
    t.resource = "regularized-epr[" + std::to_string(d) + "]";
    t.pre_measurement = std::string("banded sum f_n D_n (truncation defect ") + defect + ")";
    t.outcome = outcome;
    t.probability = probs[outcome];
    t.message = ClassicalMessage::of_integer(static_cast<std::int64_t>(outcome));
    t.correction = "down-shift " + std::to_string(outcome);
    t.target = target.state;

    // Received state from row `outcome` of V: components f_{k-outcome} |k>.
    const Operator v = cutoff_premeasurement(config);
    StateVector received(d);
    for (std::size_t k = 0; k < d; ++k) received.amps[k] = v.at(outcome, k);
    const double received_weight = received.norm_sq();
    if (received_weight < kZeroProb) {
        t.discarded = true;  // zero-probability outcome: nothing to correct
        t.probability = 0.0;
        t.fidelity = 0.0;
        return t;
    }
    received = received.normalized_copy();

    StateVector corrected = photon_cutoff_bob_correction(t.message, d).apply(received);
    const double kept = corrected.norm_sq();
    t.dropped_weight = 1.0 - kept;
    t.received = received;
    if (kept < kZeroProb) {
        t.discarded = true;  // the correction removed every surviving component
        t.fidelity = 0.0;
        return t;
    }
    t.output = corrected.normalized_copy();
    t.fidelity = fidelity(t.output, t.target);
    return t;
}

}  // namespace rsp
