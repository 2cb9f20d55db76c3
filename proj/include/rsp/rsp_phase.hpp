// Optical-phase RSP: two-mode squeezed vacuum resource, number-dependent
// (Kerr-type) pre-measurement, truncated phase-state measurement with a
// discard branch, and phase-shift corrections.  The success probability has
// the closed form 1 - tanh(r)^(2N).

#pragma once

#include "rsp/transcript.hpp"
#include "rsp/types.hpp"

namespace rsp {

// diag(e^{i theta n}), n = 0 .. cutoff-1.
Operator phase_shift_unitary(double theta, std::size_t cutoff);

struct PhaseProtocolConfig {
    double r = 0.0;           // squeezing parameter, >= 0
    std::size_t n_meas = 1;   // truncation N of Alice's phase measurement
    std::size_t cutoff = 0;   // Fock cutoff for state storage, >= n_meas
    std::vector<double> phi_n;  // number-dependent phase shifts (entries past
                                // n_meas-1 never reach the retained outcomes)

    void validate() const;
    // Samples of phi_n = chi n^2 + theta n.
    static std::vector<double> kerr_phases(double chi, double theta, std::size_t count);
};

// Fock cutoff large enough that the resource weight beyond it stays below
// 1e-13, with a floor of n_meas + 4.
std::size_t default_phase_cutoff(double r, std::size_t n_meas);

// diag(e^{i phi_n}) on the cutoff space (missing samples padded with zero phase).
Operator kerr_premeasurement(const PhaseProtocolConfig& config);

struct PeggBarnettMeasurement {
    std::vector<StateVector> states;  // truncated phase states on the cutoff space
    Operator discard_projector;       // projector onto Fock components n >= n_meas
};

// Truncated phase states |theta_j>, amps[n] = e^{2 pi i j n / N} / sqrt(N)
// for n < N and zero above; together with the discard projector they form a
// complete POVM on the cutoff space.
PeggBarnettMeasurement pegg_barnett_states(std::size_t n_meas, std::size_t cutoff);

// 1 - tanh(r)^(2 n_meas).
double success_probability(double r, std::size_t n_meas);

// Normalized truncation of the preparable ensemble:
// amps[n] = (tanh(r)^n / cosh(r)) e^{i phi_n} / sqrt(1 - tanh(r)^(2N)), n < N.
StateVector phase_target_state(const PhaseProtocolConfig& config);

// Outcome space: indices 0 .. N-1 are the phase outcomes, index N is the
// discard branch.  Probabilities are Born-normalized against the truncated
// resource norm, so they sum to one at any cutoff.
std::vector<double> phase_distribution(const PhaseProtocolConfig& config);

// Bob's phase-shift correction from the messaged angle alone.
Operator phase_bob_correction(const ClassicalMessage& message, std::size_t cutoff);

ProtocolTranscript run_phase_protocol(const PhaseProtocolConfig& config,
                                      const OutcomeSelector& selector);

}  // namespace rsp
