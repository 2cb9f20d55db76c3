#include "rsp/bipartite.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rsp {

StateVector AntilinearMap::apply(const StateVector& phi) const {
    if (phi.dim() != dim_in)
        throw std::invalid_argument("AntilinearMap::apply: dimension mismatch");
    StateVector out(dim_out);
    for (std::size_t i = 0; i < dim_out; ++i) {
        Complex s{0.0, 0.0};
        for (std::size_t j = 0; j < dim_in; ++j) s += at(i, j) * std::conj(phi.amps[j]);
        out.amps[i] = s;
    }
    return out;
}

AntilinearMap AntilinearMap::adjoint() const {
    AntilinearMap out(dim_out, dim_in);
    for (std::size_t i = 0; i < dim_out; ++i)
        for (std::size_t j = 0; j < dim_in; ++j) out.at(j, i) = at(i, j);
    return out;
}

AntilinearMap compose(const Operator& l, const AntilinearMap& a) {
    if (l.dim != a.dim_out)
        throw std::invalid_argument("compose: dimension mismatch");
    AntilinearMap out(a.dim_in, a.dim_out);
    for (std::size_t i = 0; i < a.dim_out; ++i)
        for (std::size_t j = 0; j < a.dim_in; ++j) {
            Complex s{0.0, 0.0};
            for (std::size_t k = 0; k < a.dim_out; ++k) s += l.at(i, k) * a.at(k, j);
            out.at(i, j) = s;
        }
    return out;
}

AntilinearMap compose(const AntilinearMap& a, const Operator& l) {
    if (a.dim_in != l.dim)
        throw std::invalid_argument("compose: dimension mismatch");
    AntilinearMap out(l.dim, a.dim_out);
    for (std::size_t i = 0; i < a.dim_out; ++i)
        for (std::size_t j = 0; j < l.dim; ++j) {
            Complex s{0.0, 0.0};
            for (std::size_t k = 0; k < a.dim_in; ++k) s += a.at(i, k) * std::conj(l.at(k, j));
            out.at(i, j) = s;
        }
    return out;
}

Operator compose(const AntilinearMap& a2, const AntilinearMap& a1) {
    if (a2.dim_in != a1.dim_out)
        throw std::invalid_argument("compose: dimension mismatch");
    if (a1.dim_in != a2.dim_out)
        throw std::invalid_argument("compose: antilinear pair must close to a square map");
    Operator out(a1.dim_in);
    for (std::size_t i = 0; i < a2.dim_out; ++i)
        for (std::size_t j = 0; j < a1.dim_in; ++j) {
            Complex s{0.0, 0.0};
            for (std::size_t k = 0; k < a1.dim_out; ++k) s += a2.at(i, k) * std::conj(a1.at(k, j));
            out.at(i, j) = s;
        }
    return out;
}

BipartiteState make_schmidt_state(const std::vector<double>& alphas) {
    if (alphas.empty())
        throw std::invalid_argument("make_schmidt_state: empty coefficient list");
    double sum = 0.0;
    for (double a : alphas) {
        if (!(a >= 0.0))
            throw std::invalid_argument("make_schmidt_state: coefficients must be nonnegative");
        sum += a * a;
    }
    if (std::abs(sum - 1.0) > kDefaultTol)
        throw std::invalid_argument("make_schmidt_state: coefficients must satisfy sum alpha^2 = 1");

    const std::size_t n = alphas.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return alphas[a] > alphas[b]; });

    BipartiteState psi;
    psi.schmidt_coeffs.resize(n);
    psi.basis_a = Operator(n);
    psi.basis_b = Operator(n);
    for (std::size_t c = 0; c < n; ++c) {
        psi.schmidt_coeffs[c] = alphas[order[c]];
        psi.basis_a.at(order[c], c) = Complex{1.0, 0.0};
        psi.basis_b.at(order[c], c) = Complex{1.0, 0.0};
    }
    psi.normalized = true;
    psi.tag = "schmidt";
    return psi;
}

BipartiteState make_two_mode_squeezed(double r, std::size_t cutoff, bool renormalize) {
    if (r < 0.0) throw std::invalid_argument("make_two_mode_squeezed: r must be nonnegative");
    if (cutoff == 0) throw std::invalid_argument("make_two_mode_squeezed: cutoff must be positive");

    const double t = std::tanh(r);
    const double c = std::cosh(r);
    BipartiteState psi;
    psi.schmidt_coeffs.resize(cutoff);
    double w = 1.0 / c;
    for (std::size_t n = 0; n < cutoff; ++n) {
        psi.schmidt_coeffs[n] = w;
        w *= t;
    }
    psi.basis_a = Operator::identity(cutoff);
    psi.basis_b = Operator::identity(cutoff);
    psi.neglected_weight = std::pow(t, 2.0 * static_cast<double>(cutoff));
    psi.tag = "tmsv";
    if (renormalize) {
        const double kept = 1.0 - psi.neglected_weight;
        const double scale = 1.0 / std::sqrt(kept);
        for (auto& a : psi.schmidt_coeffs) a *= scale;
        psi.neglected_weight = 0.0;
        psi.normalized = true;
    } else {
        psi.normalized = psi.neglected_weight < kKernelTol;
    }
    return psi;
}

BipartiteState make_truncated_phase_resource(std::size_t n) {
    if (n == 0)
        throw std::invalid_argument("make_truncated_phase_resource: n must be positive");
    BipartiteState psi;
    psi.schmidt_coeffs.assign(n, 1.0 / std::sqrt(static_cast<double>(n)));
    psi.basis_a = Operator::identity(n);
    psi.basis_b = Operator::identity(n);
    psi.normalized = true;
    psi.tag = "regularized-epr";
    return psi;
}

JointState joint_form(const BipartiteState& psi) {
    JointState out(psi.dim_a(), psi.dim_b());
    const std::size_t nk = psi.schmidt_coeffs.size();
    for (std::size_t k = 0; k < nk; ++k) {
        const double a = psi.schmidt_coeffs[k];
        if (a == 0.0) continue;
        for (std::size_t i = 0; i < psi.dim_a(); ++i) {
            const Complex ai = psi.basis_a.at(i, k);
            if (ai == Complex{}) continue;
            for (std::size_t j = 0; j < psi.dim_b(); ++j)
                out.at(i, j) += a * ai * psi.basis_b.at(j, k);
        }
    }
    out.normalized = psi.normalized;
    return out;
}

Operator rho_b(const BipartiteState& psi) {
    Operator rho(psi.dim_b());
    for (std::size_t k = 0; k < psi.schmidt_coeffs.size(); ++k) {
        const double w = psi.schmidt_coeffs[k] * psi.schmidt_coeffs[k];
        if (w == 0.0) continue;
        for (std::size_t i = 0; i < psi.dim_b(); ++i)
            for (std::size_t j = 0; j < psi.dim_b(); ++j)
                rho.at(i, j) += w * psi.basis_b.at(i, k) * std::conj(psi.basis_b.at(j, k));
    }
    return rho;
}

AntilinearMap r_operator(const BipartiteState& psi) {
    AntilinearMap r(psi.dim_a(), psi.dim_b());
    for (std::size_t k = 0; k < psi.schmidt_coeffs.size(); ++k) {
        const double a = psi.schmidt_coeffs[k];
        if (a == 0.0) continue;
        for (std::size_t i = 0; i < psi.dim_b(); ++i) {
            const Complex bi = psi.basis_b.at(i, k);
            if (bi == Complex{}) continue;
            for (std::size_t j = 0; j < psi.dim_a(); ++j)
                r.at(i, j) += a * bi * psi.basis_a.at(j, k);
        }
    }
    return r;
}

PolarDecomposition polar_decompose(const AntilinearMap& r) {
    if (r.dim_in != r.dim_out)
        throw std::invalid_argument("polar_decompose: map must be square");
    const auto n = static_cast<Eigen::Index>(r.dim_in);
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            m(i, j) = r.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    // m = U S V^dag gives sqrt(rho_B) = U S U^dag and the antiunitary part
    // U V^dag; the gauge freedom of degenerate singular blocks cancels in
    // the product.
    const Eigen::MatrixXcd sqrt_rho =
        svd.matrixU() * svd.singularValues().asDiagonal() * svd.matrixU().adjoint();
    const Eigen::MatrixXcd jm = svd.matrixU() * svd.matrixV().adjoint();

    PolarDecomposition out;
    out.sqrt_rho_b = Operator(r.dim_out);
    out.j_map = AntilinearMap(r.dim_in, r.dim_out);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            out.sqrt_rho_b.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                sqrt_rho(i, j);
            out.j_map.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = jm(i, j);
        }
    return out;
}

ConditionalState conditional_state(const AntilinearMap& r, const StateVector& phi) {
    const StateVector unnorm = r.apply(phi);
    ConditionalState out;
    out.probability = unnorm.norm_sq();
    if (out.probability < kZeroProb) {
        out.probability = out.probability < 0.0 ? 0.0 : out.probability;
        return out;  // zero-probability outcome, no conditional state
    }
    out.state = unnorm.scaled(Complex{1.0 / std::sqrt(out.probability), 0.0});
    out.state->normalized = true;
    return out;
}

RspConditionReport check_rsp_conditions(const BipartiteState& psi,
                                        const std::vector<Operator>& unitaries,
                                        const StateVector& phi, double tol) {
    RspConditionReport report;

    const Operator rho = rho_b(psi);
    for (const auto& u : unitaries) {
        const Operator comm = rho * u - u * rho;
        report.max_commutator_norm = std::max(report.max_commutator_norm, comm.frobenius_norm());
    }

    // Measurement basis phi_j = J^dag U_j^dag J phi.
    const AntilinearMap j = polar_decompose(r_operator(psi)).j_map;
    const AntilinearMap jdag = j.adjoint();
    report.basis.reserve(unitaries.size());
    for (const auto& u : unitaries) {
        const AntilinearMap inner_map = compose(u.dagger(), j);  // U_j^dag J, antilinear
        const Operator full = compose(jdag, inner_map);          // J^dag (U_j^dag J), linear
        StateVector phi_j = full.apply(phi);
        phi_j.normalized = true;
        report.basis.push_back(std::move(phi_j));
    }

    for (std::size_t a = 0; a < report.basis.size(); ++a)
        for (std::size_t b = 0; b < report.basis.size(); ++b) {
            const Complex g = inner(report.basis[a], report.basis[b]);
            const Complex expected = (a == b) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
            report.gram_deviation = std::max(report.gram_deviation, std::abs(g - expected));
        }

    report.support_complete = true;
    for (double a : psi.schmidt_coeffs)
        if (a < kRankEps) report.support_complete = false;

    report.pass = report.support_complete && report.max_commutator_norm <= tol &&
                  report.gram_deviation <= tol;
    return report;
}

}  // namespace rsp
