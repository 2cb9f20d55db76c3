// Finite N-dimensional minimum RSP: cyclic Z_N corrections, equal-weighted
// input state, phase-tuned measurement basis, and the exact protocol run.
//
// The free parameters phi_k are Alice's; the target ensemble is
// sum_k alpha_k e^{i phi_k} |k>, reached deterministically with a single
// index message and uniform outcome probability 1/N.

#pragma once

#include "rsp/transcript.hpp"
#include "rsp/types.hpp"

namespace rsp {

// U_j = diag(e^{2 pi i j k / n}); composition follows addition mod n.
std::vector<Operator> zn_unitaries(std::size_t n);

// Equal-weighted superposition amps[k] = e^{-i phi_k} / sqrt(N).
StateVector alice_input_state(const std::vector<double>& phases);

// Target amps[k] = alpha_k e^{i phi_k}; alphas pair with phases by index.
StateVector target_state(const std::vector<double>& alphas, const std::vector<double>& phases);

// phi_j with amps[k] = e^{i (2 pi j k / N - phi_k)} / sqrt(N); equals
// pre_measurement(phases)^dag applied to the DFT columns.
std::vector<StateVector> measurement_basis(const std::vector<double>& phases);

// V = diag(e^{i phi_k}).
Operator pre_measurement(const std::vector<double>& phases);

struct FiniteConfig {
    std::vector<double> alphas;  // Schmidt coefficients of the shared resource
    std::vector<double> phases;  // Alice's free parameters

    std::size_t n() const { return phases.size(); }
    void validate() const;
};

// Exact outcome distribution (uniform 1/N for a normalized resource).
std::vector<double> finite_distribution(const FiniteConfig& config);

// Bob's correction from the classical message alone: U_j on an N-dimensional
// system.  Takes no protocol parameters beyond the public dimension.
Operator finite_bob_correction(const ClassicalMessage& message, std::size_t n);

ProtocolTranscript run_finite_protocol(const FiniteConfig& config,
                                       const OutcomeSelector& selector);
ProtocolTranscript run_finite_protocol(const std::vector<double>& alphas,
                                       const std::vector<double>& phases,
                                       const OutcomeSelector& selector);

}  // namespace rsp
