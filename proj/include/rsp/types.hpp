// Core value types for the RSP simulator: complex state vectors, dense
// square operators, and bipartite joint states.  Everything is finite
// dimensional; continuous-variable objects enter only after truncation
// (Fock cutoff) or discretization (position grid).

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsp {

using Complex = std::complex<double>;

// Default comparison tolerance for user-facing checks.
inline constexpr double kDefaultTol = 1e-10;
// Kernel-internal identities (SVD round trips, DFT unitarity) hold to this.
inline constexpr double kKernelTol = 1e-12;
// Schmidt coefficients below this are truncated to exact zeros.
inline constexpr double kRankEps = 1e-13;
// Measurement outcomes below this probability signal a zero-probability branch.
inline constexpr double kZeroProb = 1e-14;

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// |psi> = sum_k amps[k] |k>.  The `normalized` flag asserts sum |amps|^2 = 1;
// constructors that guarantee unit norm set it.
struct StateVector {
    std::vector<Complex> amps;
    bool normalized = false;

    StateVector() = default;
    explicit StateVector(std::size_t dim) : amps(dim) {}
    StateVector(std::vector<Complex> a, bool norm_flag)
        : amps(std::move(a)), normalized(norm_flag) {}

    std::size_t dim() const { return amps.size(); }
    Complex& operator[](std::size_t i) { return amps[i]; }
    const Complex& operator[](std::size_t i) const { return amps[i]; }

    double norm_sq() const {
        double s = 0.0;
        for (const auto& a : amps) s += std::norm(a);
        return s;
    }
    double norm() const { return std::sqrt(norm_sq()); }

    // Basis ket |k>.
    static StateVector basis(std::size_t dim, std::size_t k) {
        if (k >= dim) throw std::out_of_range("StateVector::basis: index out of range");
        StateVector v(dim);
        v.amps[k] = Complex{1.0, 0.0};
        v.normalized = true;
        return v;
    }

    StateVector normalized_copy() const {
        const double n = norm();
        if (n < kZeroProb)
            throw std::domain_error("StateVector: cannot normalize a zero vector");
        StateVector out(dim());
        for (std::size_t i = 0; i < dim(); ++i) out.amps[i] = amps[i] / n;
        out.normalized = true;
        return out;
    }

    StateVector scaled(Complex c) const {
        StateVector out(dim());
        for (std::size_t i = 0; i < dim(); ++i) out.amps[i] = c * amps[i];
        return out;
    }

    bool finite() const {
        for (const auto& a : amps)
            if (!is_finite(a)) return false;
        return true;
    }
};

// <a|b>, conjugate linear in the first argument.
inline Complex inner(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("inner: dimension mismatch");
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a.amps[i]) * b.amps[i];
    return s;
}

// Dense square complex matrix, row major.
struct Operator {
    std::size_t dim = 0;
    std::vector<Complex> entries;

    Operator() = default;
    explicit Operator(std::size_t n) : dim(n), entries(n * n) {}

    Complex& at(std::size_t i, std::size_t j) { return entries[i * dim + j]; }
    const Complex& at(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }

    static Operator identity(std::size_t n) {
        Operator op(n);
        for (std::size_t i = 0; i < n; ++i) op.at(i, i) = Complex{1.0, 0.0};
        return op;
    }

    static Operator diagonal(const std::vector<Complex>& d) {
        Operator op(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) op.at(i, i) = d[i];
        return op;
    }

    // Rank-1 |a><b| contributions are assembled by callers; this keeps the
    // type a plain container plus the predicates below.

    Operator dagger() const {
        Operator out(dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) out.at(j, i) = std::conj(at(i, j));
        return out;
    }

    StateVector apply(const StateVector& v) const {
        if (v.dim() != dim) throw std::invalid_argument("Operator::apply: dimension mismatch");
        StateVector out(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            Complex s{0.0, 0.0};
            for (std::size_t j = 0; j < dim; ++j) s += at(i, j) * v.amps[j];
            out.amps[i] = s;
        }
        return out;
    }

    friend Operator operator*(const Operator& a, const Operator& b) {
        if (a.dim != b.dim) throw std::invalid_argument("Operator product: dimension mismatch");
        Operator out(a.dim);
        for (std::size_t i = 0; i < a.dim; ++i)
            for (std::size_t k = 0; k < a.dim; ++k) {
                const Complex aik = a.at(i, k);
                if (aik == Complex{}) continue;
                for (std::size_t j = 0; j < a.dim; ++j) out.at(i, j) += aik * b.at(k, j);
            }
        return out;
    }

    friend Operator operator-(const Operator& a, const Operator& b) {
        if (a.dim != b.dim) throw std::invalid_argument("Operator difference: dimension mismatch");
        Operator out(a.dim);
        for (std::size_t i = 0; i < a.entries.size(); ++i)
            out.entries[i] = a.entries[i] - b.entries[i];
        return out;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& e : entries) s += std::norm(e);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& e : entries) m = std::max(m, std::abs(e));
        return m;
    }

    // Exact test of U U^dag = I within tol (max entry deviation).
    bool is_unitary(double tol) const {
        const Operator p = (*this) * dagger();
        return (p - identity(dim)).max_abs() <= tol;
    }

    bool is_hermitian(double tol) const {
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                if (std::abs(at(i, j) - std::conj(at(j, i))) > tol) return false;
        return true;
    }

    bool is_diagonal(double tol) const {
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                if (i != j && std::abs(at(i, j)) > tol) return false;
        return true;
    }

    bool finite() const {
        for (const auto& e : entries)
            if (!is_finite(e)) return false;
        return true;
    }
};

// Pure state of an A x B system, amps in row-major (A-index major) order:
// amps[i * dim_b + j] multiplies |i>_A |j>_B.  May carry a norm below one
// when it represents a truncated (non-renormalized) resource.
struct JointState {
    std::size_t dim_a = 0;
    std::size_t dim_b = 0;
    std::vector<Complex> amps;
    bool normalized = false;

    JointState() = default;
    JointState(std::size_t da, std::size_t db)
        : dim_a(da), dim_b(db), amps(da * db) {}

    Complex& at(std::size_t i, std::size_t j) { return amps[i * dim_b + j]; }
    const Complex& at(std::size_t i, std::size_t j) const { return amps[i * dim_b + j]; }

    double norm_sq() const {
        double s = 0.0;
        for (const auto& a : amps) s += std::norm(a);
        return s;
    }

    bool finite() const {
        for (const auto& a : amps)
            if (!is_finite(a)) return false;
        return true;
    }
};

}  // namespace rsp
