// Photon-counting RSP.  The exact finite protocol runs on the truncated
// phase-correlated resource with cyclic ladder corrections; its infinite
// limit replaces them with non-unitary down-shifts and drives Alice's
// pre-measurement from the Fourier coefficients of a periodic phase profile.

#pragma once

#include <functional>
#include <map>

#include "rsp/transcript.hpp"
#include "rsp/types.hpp"

namespace rsp {

// Non-unitary down-shift by m: <n|U|n+m> = 1, components below m drop out.
Operator down_shift(std::size_t m, std::size_t cutoff);

// Cyclic (modular) down-shift unitaries on an n-dimensional number basis;
// the truncated phase states are their eigenvectors with eigenvalues
// e^{2 pi i j m / n}.
std::vector<Operator> ladder_unitaries(std::size_t n);

struct FinitePremeasurement {
    Operator v;                   // sum_j e^{i phi_j} |theta_j><theta_j|
    std::vector<Complex> coeffs;  // f_m = (1/n) sum_j e^{-2 pi i j m / n} e^{i phi_j}
};

// Alice's unitary pre-measurement for the finite protocol; V also equals
// sum_m f_m U_m with unit-sum |f_m|^2.
FinitePremeasurement finite_fourier_premeasurement(const std::vector<double>& phases);

// Warm-up: remotely prepare the Fock state |m> over a regularized
// d-dimensional maximally entangled resource.  Outcomes are uniform over
// the surviving range; Bob's down-shift lands on |m> exactly.
ProtocolTranscript remote_fock_prep(std::size_t m, std::size_t d,
                                    const OutcomeSelector& selector);
std::vector<double> remote_fock_distribution(std::size_t m, std::size_t d);

struct PhotonFiniteConfig {
    std::size_t n = 0;
    std::vector<double> phases;  // phi_j, one per truncated phase state

    void validate() const;
};

std::vector<double> photon_finite_distribution(const PhotonFiniteConfig& config);
Operator photon_finite_bob_correction(const ClassicalMessage& message, std::size_t n);
ProtocolTranscript run_photon_finite(const PhotonFiniteConfig& config,
                                     const OutcomeSelector& selector);

// Periodic phase profile, either as a function handle on [0, 2pi) or as
// direct Fourier coefficient input (index may be negative).
struct FourierPhaseProfile {
    std::function<double(double)> periodic_phase;
    std::map<int, Complex> coeffs;

    bool has_function() const { return static_cast<bool>(periodic_phase); }
    static FourierPhaseProfile from_function(std::function<double(double)> f) {
        FourierPhaseProfile p;
        p.periodic_phase = std::move(f);
        return p;
    }
    static FourierPhaseProfile from_coeffs(std::map<int, Complex> c) {
        FourierPhaseProfile p;
        p.coeffs = std::move(c);
        return p;
    }
};

struct FourierCoeffs {
    std::map<int, Complex> coeffs;
    double parseval_defect = 0.0;  // 1 - sum |f_n|^2 over the computed range
};

// f_n = (1/2pi) integral of e^{-i n theta} e^{i phi(theta)} d theta by
// adaptive quadrature (absolute target 1e-11 per coefficient).
FourierCoeffs continuous_fourier_coeffs(const FourierPhaseProfile& profile, int n_min,
                                        int n_max);

struct PhotonCutoffConfig {
    std::map<int, Complex> coeffs;  // f_n, truncated to |n| < cutoff
    std::size_t cutoff = 0;         // coefficient band limit
    std::size_t resource_dim = 0;   // regularized resource dimension

    void validate() const;
};

// Alice's pre-measuring operator f_0 I + sum_{n>0} (f_n D_n + f_{-n} D_n^dag)
// as a banded matrix on the resource space; non-unitary under truncation.
Operator cutoff_premeasurement(const PhotonCutoffConfig& config);

// Target sum_{n>=0} f_n |n> renormalized; `dropped` is the negative-index
// weight the down-shift correction removes.
struct PhotonCutoffTarget {
    StateVector state;
    double dropped = 0.0;
};
PhotonCutoffTarget photon_cutoff_target(const PhotonCutoffConfig& config);

std::vector<double> photon_cutoff_distribution(const PhotonCutoffConfig& config);
Operator photon_cutoff_bob_correction(const ClassicalMessage& message, std::size_t dim);
ProtocolTranscript run_photon_cutoff(const PhotonCutoffConfig& config,
                                     const OutcomeSelector& selector);

// Inclusive outcome range where the coefficient band fits inside the
// resource window, so the corrected output matches the renormalized target
// exactly and the dropped weight equals the full negative-index weight.
struct OutcomeRange {
    std::size_t first = 0;
    std::size_t last = 0;
    bool empty = true;
};
OutcomeRange photon_cutoff_retained_range(const PhotonCutoffConfig& config);

}  // namespace rsp
