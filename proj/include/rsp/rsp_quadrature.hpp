// Quadrature RSP on a finite position grid.  The delta-correlated EPR
// resource is regularized as the maximally entangled grid state; Alice
// applies e^{i phi(X)}, measures the (cyclic) momentum basis, and Bob
// corrects with a momentum displacement.  On the grid the whole protocol
// reduces exactly to the finite Z_M scheme with phi_k = phi(x_k).

#pragma once

#include <numbers>

#include "rsp/transcript.hpp"
#include "rsp/types.hpp"

namespace rsp {

struct GridSpec {
    std::size_t m = 0;   // number of points, >= 2
    double x_min = 0.0;
    double dx = 0.0;     // spacing, > 0

    double x(std::size_t k) const { return x_min + static_cast<double>(k) * dx; }
    // Conjugate momenta of the cyclic grid.
    double p(std::size_t j) const {
        return 2.0 * std::numbers::pi * static_cast<double>(j) /
               (static_cast<double>(m) * dx);
    }
    void validate() const;
};

// diag(e^{i phi(x_k)}) from samples of phi on the grid.
Operator phase_function_premeasurement(const GridSpec& grid, const std::vector<double>& phi);

// Samples of the polynomial phase alpha x + beta x^2 + gamma x^3 on the grid.
std::vector<double> polynomial_phase(const GridSpec& grid, double alpha, double beta,
                                     double gamma);

// Discrete momentum eigenvectors, state j amps[k] = e^{2 pi i j k / m} / sqrt(m).
std::vector<StateVector> momentum_basis(const GridSpec& grid);

// diag(e^{i p x_k}).
Operator momentum_displacement(const GridSpec& grid, double p);

struct QuadratureConfig {
    GridSpec grid;
    std::vector<double> phi;  // sampled on the position grid (momentum grid when swapped)
    bool swap_xp = false;     // interchange the roles of position and momentum

    void validate() const;
};

// Target wavefunction e^{i phi(x_k)} / sqrt(m) (swap mode: the state whose
// momentum-side expansion carries e^{i phi(p_j)} / sqrt(m)).
StateVector quadrature_target(const QuadratureConfig& config);

// Uniform 1/m for any phi.
std::vector<double> quadrature_distribution(const QuadratureConfig& config);

// Bob's correction from the message alone.  The message is the physical
// momentum p_j (position x_k when swapped); internally the displacement is
// taken relative to the grid origin, so the correction is the cyclic
// index-domain shift the message encodes.
Operator quadrature_bob_correction(const ClassicalMessage& message, const GridSpec& grid,
                                   bool swap_xp);

ProtocolTranscript run_quadrature_protocol(const QuadratureConfig& config,
                                           const OutcomeSelector& selector);

}  // namespace rsp
