#include "rsp/qmath.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <numbers>
#include <numeric>

namespace rsp {

JointState tensor_product(const StateVector& a, const StateVector& b) {
    if (a.dim() == 0 || b.dim() == 0)
        throw std::invalid_argument("tensor_product: dimensions must be positive");
    JointState out(a.dim(), b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j) out.at(i, j) = a.amps[i] * b.amps[j];
    out.normalized = a.normalized && b.normalized;
    return out;
}

StateVector partial_inner_left(const StateVector& phi, const JointState& psi) {
    if (phi.dim() != psi.dim_a)
        throw std::invalid_argument("partial_inner_left: dimension mismatch");
    StateVector out(psi.dim_b);
    for (std::size_t i = 0; i < psi.dim_a; ++i) {
        const Complex c = std::conj(phi.amps[i]);
        if (c == Complex{}) continue;
        for (std::size_t j = 0; j < psi.dim_b; ++j) out.amps[j] += c * psi.at(i, j);
    }
    return out;
}

SchmidtDecomposition schmidt_decompose(const JointState& psi) {
    if (!psi.finite())
        throw std::invalid_argument("schmidt_decompose: non-finite joint state");
    const auto da = static_cast<Eigen::Index>(psi.dim_a);
    const auto db = static_cast<Eigen::Index>(psi.dim_b);

    Eigen::MatrixXcd m(da, db);
    for (Eigen::Index i = 0; i < da; ++i)
        for (Eigen::Index j = 0; j < db; ++j)
            m(i, j) = psi.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& u = svd.matrixU();
    const auto& v = svd.matrixV();
    const auto& sigma = svd.singularValues();

    // With m = U S V^dag the B-side Schmidt vectors are the columns of conj(V):
    // psi = sum_k sigma_k u_k (x) conj(v_k).
    const std::size_t nsv = static_cast<std::size_t>(sigma.size());
    std::vector<std::size_t> order(nsv);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return sigma(static_cast<Eigen::Index>(a)) > sigma(static_cast<Eigen::Index>(b));
    });

    SchmidtDecomposition out;
    out.coeffs.resize(nsv);
    out.basis_a = Operator(psi.dim_a);
    out.basis_b = Operator(psi.dim_b);
    for (std::size_t c = 0; c < nsv; ++c) {
        const auto src = static_cast<Eigen::Index>(order[c]);
        double s = sigma(src);
        if (s < kRankEps) s = 0.0;
        out.coeffs[c] = s;
        if (s > 0.0) ++out.rank;
        for (std::size_t i = 0; i < psi.dim_a; ++i)
            out.basis_a.at(i, c) = u(static_cast<Eigen::Index>(i), src);
        for (std::size_t j = 0; j < psi.dim_b; ++j)
            out.basis_b.at(j, c) = std::conj(v(static_cast<Eigen::Index>(j), src));
    }
    // Unselected columns (when dim_a != dim_b) complete the unitary bases.
    for (std::size_t c = nsv; c < psi.dim_a; ++c)
        for (std::size_t i = 0; i < psi.dim_a; ++i)
            out.basis_a.at(i, c) = u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c));
    for (std::size_t c = nsv; c < psi.dim_b; ++c)
        for (std::size_t j = 0; j < psi.dim_b; ++j)
            out.basis_b.at(j, c) =
                std::conj(v(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(c)));
    return out;
}

double fidelity(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("fidelity: dimension mismatch");
    // Rounding on normalized inputs can land a hair above one; the
    // mathematical value cannot.
    return std::min(std::norm(inner(a, b)), 1.0);
}

Operator dft_unitary(std::size_t n) {
    if (n == 0) throw std::invalid_argument("dft_unitary: n must be positive");
    Operator f(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            // Reduce j*k mod n before the exponential so large n stays exact.
            const double angle =
                2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / static_cast<double>(n);
            f.at(j, k) = Complex{std::cos(angle), std::sin(angle)} * scale;
        }
    return f;
}

}  // namespace rsp
