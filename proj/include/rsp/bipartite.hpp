// Entangled-resource factory and antilinear-operator machinery.
//
// A Schmidt-form resource sum_k alpha_k |a_k>|b_k> is encoded by the
// conjugate-linear map R: phi |-> <phi|Psi>, whose polar decomposition
// R = sqrt(rho_B) J splits it into the reduced density operator of B and
// an antiunitary J carrying A's Schmidt vectors onto B's.

#pragma once

#include <optional>

#include "rsp/qmath.hpp"
#include "rsp/types.hpp"

namespace rsp {

// Schmidt-form bipartite state: coefficients plus local bases (columns are
// Schmidt vectors).  `neglected_weight` carries the weight lost to a Fock
// truncation when the state is stored non-renormalized.
struct BipartiteState {
    std::vector<double> schmidt_coeffs;  // descending
    Operator basis_a;
    Operator basis_b;
    bool normalized = true;
    double neglected_weight = 0.0;
    std::string tag;  // provenance, e.g. "schmidt", "tmsv", "regularized-epr"

    std::size_t dim_a() const { return basis_a.dim; }
    std::size_t dim_b() const { return basis_b.dim; }
};

// Conjugate-linear map, stored as a plain matrix with the convention
//   apply(phi) = matrix * conj(phi).
// Composition rules: linear after antilinear stays antilinear
// (L * M), antilinear after linear conjugates the inner factor
// (M * conj(L)), and two antilinear maps compose to a linear one
// (M2 * conj(M1)).
struct AntilinearMap {
    std::size_t dim_in = 0;
    std::size_t dim_out = 0;
    std::vector<Complex> matrix;  // row-major dim_out x dim_in

    AntilinearMap() = default;
    AntilinearMap(std::size_t din, std::size_t dout)
        : dim_in(din), dim_out(dout), matrix(din * dout) {}

    Complex& at(std::size_t i, std::size_t j) { return matrix[i * dim_in + j]; }
    const Complex& at(std::size_t i, std::size_t j) const { return matrix[i * dim_in + j]; }

    StateVector apply(const StateVector& phi) const;

    // Adjoint of an antilinear map: <psi|A phi> = <phi|A^dag psi> gives the
    // plain (unconjugated) transpose.
    AntilinearMap adjoint() const;
};

// L ∘ A (antilinear), matrix L * M.
AntilinearMap compose(const Operator& l, const AntilinearMap& a);
// A ∘ L (antilinear), matrix M * conj(L).
AntilinearMap compose(const AntilinearMap& a, const Operator& l);
// A2 ∘ A1 (linear), matrix M2 * conj(M1).
Operator compose(const AntilinearMap& a2, const AntilinearMap& a1);

// Canonical-basis Schmidt state from nonnegative coefficients with
// sum alpha^2 = 1 (within 1e-10).  Coefficients are stored descending; the
// stable sorting permutation is applied to the basis columns so the joint
// state is unchanged.
BipartiteState make_schmidt_state(const std::vector<double>& alphas);

// Two-mode squeezed vacuum truncated at `cutoff`: coeffs[n] = tanh(r)^n / cosh(r).
// Non-renormalized by default; the truncated-away weight tanh(r)^(2 cutoff)
// is recorded so downstream success probabilities stay exact.
BipartiteState make_two_mode_squeezed(double r, std::size_t cutoff, bool renormalize = false);

// Maximally entangled state of dimension n in the truncated number basis,
// coeffs[k] = 1/sqrt(n).  Doubles as the regularized stand-in for the
// unnormalizable EPR resources.
BipartiteState make_truncated_phase_resource(std::size_t n);

// Expand the Schmidt form into the full joint amplitude vector.
JointState joint_form(const BipartiteState& psi);

// Reduced density operator of subsystem B.
Operator rho_b(const BipartiteState& psi);

// R: phi |-> <phi|Psi>, matrix sum_k alpha_k b_k a_k^T.
AntilinearMap r_operator(const BipartiteState& psi);

struct PolarDecomposition {
    Operator sqrt_rho_b;   // Hermitian positive semidefinite
    AntilinearMap j_map;   // antiunitary (unitary matrix)
};

// R = sqrt(rho_B) ∘ J via the SVD of R's matrix.
PolarDecomposition polar_decompose(const AntilinearMap& r);

struct ConditionalState {
    double probability = 0.0;
    std::optional<StateVector> state;  // empty on a zero-probability outcome
};

// Bob's state conditioned on Alice projecting onto phi: p = |R phi|^2,
// state = R phi / sqrt(p).
ConditionalState conditional_state(const AntilinearMap& r, const StateVector& phi);

struct RspConditionReport {
    double max_commutator_norm = 0.0;    // max_j |[rho_B, U_j]|_F
    std::vector<StateVector> basis;      // phi_j = J^dag U_j^dag J phi
    double gram_deviation = 0.0;         // max |<phi_j|phi_l> - delta_jl|
    bool support_complete = false;       // all Schmidt coefficients above rank cutoff
    bool pass = false;
};

// Sufficiency check for deterministic exact RSP: Bob's unitaries must commute
// with rho_B, and the induced measurement basis must be orthonormal.  A
// resource missing support on some Schmidt vector fails basis completeness.
RspConditionReport check_rsp_conditions(const BipartiteState& psi,
                                        const std::vector<Operator>& unitaries,
                                        const StateVector& phi, double tol);

}  // namespace rsp
