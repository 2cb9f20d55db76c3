// Dense complex linear-algebra kernel: tensor products, antilinear partial
// inner products, SVD-based Schmidt decomposition, fidelity, and DFT
// matrices.  All operations are side-effect free.

#pragma once

#include "rsp/types.hpp"

namespace rsp {

// |a> (x) |b>, amps[i * dim_b + j] = a[i] * b[j].
JointState tensor_product(const StateVector& a, const StateVector& b);

// <phi|psi> over subsystem A: returns the unnormalized B-side vector
// out[j] = sum_i conj(phi[i]) psi[i, j].  Antilinear in phi.
StateVector partial_inner_left(const StateVector& phi, const JointState& psi);

struct SchmidtDecomposition {
    std::vector<double> coeffs;  // nonnegative, descending; < 1e-13 snapped to 0
    Operator basis_a;            // columns are Schmidt vectors of A
    Operator basis_b;            // columns are Schmidt vectors of B
    std::size_t rank = 0;        // count of coefficients above the rank cutoff
};

// psi = sum_k coeffs[k] colA_k (x) colB_k, coefficients sorted descending
// (stable in the original singular-value order on ties).
SchmidtDecomposition schmidt_decompose(const JointState& psi);

// |<a|b>|^2; invariant under a global phase on either argument.
double fidelity(const StateVector& a, const StateVector& b);

// entries[j][k] = exp(2 pi i j k / n) / sqrt(n).
Operator dft_unitary(std::size_t n);

}  // namespace rsp
