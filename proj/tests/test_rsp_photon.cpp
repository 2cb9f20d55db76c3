#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rsp/qmath.hpp"
#include "rsp/rsp_phase.hpp"
#include "rsp/rsp_photon.hpp"
#include "test_helpers.hpp"

using namespace rsp;
using rsp_test::max_amp_diff;
using rsp_test::random_phases;

TEST_SUITE("rsp_photon") {

TEST_CASE("down_shift action") {
    CHECK((down_shift(0, 4) - Operator::identity(4)).max_abs() == 0.0);

    const Operator d1 = down_shift(1, 4);
    const StateVector dropped = d1.apply(StateVector::basis(4, 0));
    CHECK(dropped.norm_sq() == 0.0);
    const StateVector shifted = d1.apply(StateVector::basis(4, 3));
    CHECK(std::abs(shifted.amps[2] - Complex{1.0, 0.0}) == 0.0);
}

TEST_CASE("down_shift composition within the cutoff") {
    const std::size_t dim = 10;
    for (std::size_t a : {0, 1, 2, 4})
        for (std::size_t b : {0, 1, 3})
            CHECK((down_shift(a, dim) * down_shift(b, dim) - down_shift(a + b, dim)).max_abs() ==
                  0.0);
}

TEST_CASE("remote_fock_prep lands on the target for every surviving outcome") {
    // m = 0: Bob ends in |0> whatever Alice counts.
    for (std::size_t n = 0; n < 8; ++n) {
        const auto t = remote_fock_prep(0, 8, OutcomeSelector::forced(n));
        CHECK(t.fidelity == doctest::Approx(1.0));
        CHECK(std::abs(t.output.amps[0] - Complex{1.0, 0.0}) == 0.0);
    }

    const auto t = remote_fock_prep(2, 8, OutcomeSelector::forced(3));
    CHECK(std::abs(t.received.amps[5] - Complex{1.0, 0.0}) == 0.0);
    CHECK(std::abs(t.output.amps[2] - Complex{1.0, 0.0}) == 0.0);
    CHECK(t.message.integer == 3);

    const auto probs = remote_fock_distribution(2, 8);
    for (std::size_t n = 0; n < 6; ++n) CHECK(probs[n] == doctest::Approx(1.0 / 6.0));
    CHECK(probs[6] == 0.0);
    CHECK(probs[7] == 0.0);

    CHECK_THROWS_AS(remote_fock_prep(8, 8, OutcomeSelector::forced(0)),
                    std::invalid_argument);
}

TEST_CASE("ladder_unitaries cycle the number basis") {
    const auto u2 = ladder_unitaries(2);
    CHECK(std::abs(u2[1].at(0, 1) - Complex{1.0, 0.0}) == 0.0);
    CHECK(std::abs(u2[1].at(1, 0) - Complex{1.0, 0.0}) == 0.0);

    const std::size_t n = 8;
    const auto us = ladder_unitaries(n);
    for (const auto& u : us) CHECK(u.is_unitary(0.0));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            CHECK((us[a] * us[b] - us[(a + b) % n]).max_abs() < 1e-13);
}

TEST_CASE("ladder unitaries have the truncated phase states as eigenvectors") {
    const std::size_t n = 8;
    const auto us = ladder_unitaries(n);
    const auto povm = pegg_barnett_states(n, n);
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t j = 0; j < n; ++j) {
            const StateVector lhs = us[m].apply(povm.states[j]);
            const double angle = 2.0 * std::numbers::pi *
                                 static_cast<double>((j * m) % n) / static_cast<double>(n);
            const StateVector rhs = povm.states[j].scaled(Complex{std::cos(angle),
                                                                  std::sin(angle)});
            CHECK(max_amp_diff(lhs, rhs) < 1e-12);
        }
}

TEST_CASE("finite_fourier_premeasurement trivial and linear phase profiles") {
    const auto flat = finite_fourier_premeasurement({0.0, 0.0, 0.0});
    CHECK((flat.v - Operator::identity(3)).max_abs() < 1e-15);
    CHECK(std::abs(flat.coeffs[0] - Complex{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(flat.coeffs[1]) < 1e-15);

    // phi_j = theta_j concentrates the series on m = 1.
    const std::size_t n = 6;
    std::vector<double> linear(n);
    for (std::size_t j = 0; j < n; ++j)
        linear[j] = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    const auto pre = finite_fourier_premeasurement(linear);
    CHECK(std::abs(pre.coeffs[1] - Complex{1.0, 0.0}) < 1e-14);
    for (std::size_t m = 0; m < n; ++m)
        if (m != 1) CHECK(std::abs(pre.coeffs[m]) < 1e-14);
}

TEST_CASE("pre-measurement reconstructs from the coefficient ladder sum") {
    Xoshiro256StarStar rng(113);
    for (const std::size_t n : {1, 4, 16}) {
        const auto pre = finite_fourier_premeasurement(random_phases(rng, n));
        double weight = 0.0;
        for (const auto& f : pre.coeffs) weight += std::norm(f);
        CHECK(std::abs(weight - 1.0) < 1e-12);
        CHECK(pre.v.is_unitary(1e-12));

        const auto ladders = ladder_unitaries(n);
        Operator sum(n);
        for (std::size_t m = 0; m < n; ++m)
            for (std::size_t i = 0; i < n * n; ++i)
                sum.entries[i] += pre.coeffs[m] * ladders[m].entries[i];
        CHECK((sum - pre.v).max_abs() < 1e-12);
    }
}

TEST_CASE("run_photon_finite trivial case") {
    const PhotonFiniteConfig config{2, {0.0, 0.0}};
    for (std::size_t m = 0; m < 2; ++m) {
        const auto t = run_photon_finite(config, OutcomeSelector::forced(m));
        CHECK(t.probability == doctest::Approx(0.5));
        CHECK(std::abs(t.output.amps[0] - Complex{1.0, 0.0}) < 1e-14);
        CHECK(t.fidelity > 1.0 - 1e-12);
    }
}

TEST_CASE("run_photon_finite against the joint-state oracle") {
    Xoshiro256StarStar rng(127);
    const std::size_t n = 6;
    const PhotonFiniteConfig config{n, random_phases(rng, n)};
    const auto pre = finite_fourier_premeasurement(config.phases);
    const auto ladders = ladder_unitaries(n);

    // Oracle: full joint vector, V on A, project onto |m>_A, correct.
    JointState joint(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k) joint.at(k, k) = Complex{scale, 0.0};
    JointState transformed(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t k = 0; k < n; ++k)
                transformed.at(a, b) += pre.v.at(a, k) * joint.at(k, b);

    for (std::size_t m = 0; m < n; ++m) {
        const StateVector projected =
            partial_inner_left(StateVector::basis(n, m), transformed);
        const double p = projected.norm_sq();
        const StateVector expected = ladders[m].apply(projected.normalized_copy());

        const auto t = run_photon_finite(config, OutcomeSelector::forced(m));
        CHECK(std::abs(t.probability - p) < 1e-12);
        CHECK(max_amp_diff(t.output, expected) < 1e-12);
        CHECK(t.fidelity > 1.0 - 1e-10);
    }
}

TEST_CASE("photon finite output equals the phase-state expansion") {
    Xoshiro256StarStar rng(131);
    const std::size_t n = 5;
    const PhotonFiniteConfig config{n, random_phases(rng, n)};

    // (1/sqrt(n)) sum_j e^{i phi_j} |-theta_j> expanded in the number basis.
    StateVector expansion(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t neg = (n - j) % n;
        for (std::size_t k = 0; k < n; ++k) {
            const double angle = 2.0 * std::numbers::pi *
                                 static_cast<double>((neg * k) % n) / static_cast<double>(n);
            expansion.amps[k] += Complex{std::cos(config.phases[j]), std::sin(config.phases[j])} *
                                 Complex{std::cos(angle), std::sin(angle)} /
                                 static_cast<double>(n);
        }
    }
    const auto t = run_photon_finite(config, OutcomeSelector::forced(2));
    CHECK(max_amp_diff(t.output, expansion) < 1e-12);
}

TEST_CASE("continuous_fourier_coeffs on trivial profiles") {
    const auto zero = continuous_fourier_coeffs(
        FourierPhaseProfile::from_function([](double) { return 0.0; }), -3, 3);
    CHECK(std::abs(zero.coeffs.at(0) - Complex{1.0, 0.0}) < 1e-10);
    for (int n = -3; n <= 3; ++n)
        if (n != 0) CHECK(std::abs(zero.coeffs.at(n)) < 1e-10);
    CHECK(std::abs(zero.parseval_defect) < 1e-9);

    const auto harmonic = continuous_fourier_coeffs(
        FourierPhaseProfile::from_function([](double theta) { return theta; }), -3, 3);
    CHECK(std::abs(harmonic.coeffs.at(1) - Complex{1.0, 0.0}) < 1e-10);
    CHECK(std::abs(harmonic.coeffs.at(0)) < 1e-10);
}

TEST_CASE("sinusoidal phase profile reproduces Bessel coefficients") {
    const auto profile = FourierPhaseProfile::from_function(
        [](double theta) { return 0.5 * std::sin(theta); });
    const auto coeffs = continuous_fourier_coeffs(profile, -6, 6);

    // High-resolution DFT oracle.
    const std::size_t m = 8192;
    for (int n = -6; n <= 6; ++n) {
        Complex oracle{0.0, 0.0};
        for (std::size_t l = 0; l < m; ++l) {
            const double theta =
                2.0 * std::numbers::pi * static_cast<double>(l) / static_cast<double>(m);
            const double phase = 0.5 * std::sin(theta) - static_cast<double>(n) * theta;
            oracle += Complex{std::cos(phase), std::sin(phase)};
        }
        oracle /= static_cast<double>(m);
        CHECK(std::abs(coeffs.coeffs.at(n) - oracle) < 1e-10);
    }
    // Jacobi-Anger: coefficients are Bessel J_n(0.5), with J_{-n} = (-1)^n J_n.
    for (int n = 0; n <= 4; ++n) {
        const double jn = std::cyl_bessel_j(static_cast<double>(n), 0.5);
        CHECK(std::abs(coeffs.coeffs.at(n) - Complex{jn, 0.0}) < 1e-9);
        const double sign = n % 2 == 0 ? 1.0 : -1.0;
        CHECK(std::abs(coeffs.coeffs.at(-n) - Complex{sign * jn, 0.0}) < 1e-9);
    }
    CHECK(std::abs(coeffs.parseval_defect) < 1e-9);
}

TEST_CASE("continuous_fourier_coeffs rejects non-finite profiles") {
    const auto bad = FourierPhaseProfile::from_function(
        [](double theta) { return theta > 3.0 ? std::nan("") : 0.0; });
    CHECK_THROWS_AS(continuous_fourier_coeffs(bad, 0, 0), std::invalid_argument);
}

TEST_CASE("run_photon_cutoff with a delta profile") {
    PhotonCutoffConfig config;
    config.coeffs = {{0, Complex{1.0, 0.0}}};
    config.cutoff = 1;
    config.resource_dim = 8;
    for (std::size_t n = 0; n < 8; ++n) {
        const auto t = run_photon_cutoff(config, OutcomeSelector::forced(n));
        CHECK_FALSE(t.discarded);
        CHECK(t.fidelity == doctest::Approx(1.0));
        CHECK(*t.dropped_weight == 0.0);
        // Alice's count n leaves |n>_B; the down-shift lands on |0>.
        CHECK(std::abs(t.received.amps[n]) == doctest::Approx(1.0));
        CHECK(std::abs(t.output.amps[0]) == doctest::Approx(1.0));
    }
}

TEST_CASE("finite-support profiles are exact on the retained window") {
    PhotonCutoffConfig config;
    const double s = 0.5;
    config.coeffs = {{0, Complex{s, 0.0}},
                     {1, Complex{0.0, s}},
                     {2, Complex{-s, 0.0}},
                     {3, Complex{0.0, -s}}};
    config.cutoff = 4;
    config.resource_dim = 16;

    const auto range = photon_cutoff_retained_range(config);
    REQUIRE_FALSE(range.empty);
    CHECK(range.first == 0);
    CHECK(range.last == 12);

    const auto target = photon_cutoff_target(config);
    for (std::size_t n = range.first; n <= range.last; ++n) {
        const auto t = run_photon_cutoff(config, OutcomeSelector::forced(n));
        CHECK(t.fidelity > 1.0 - 1e-9);
        CHECK(max_amp_diff(t.output, target.state) < 1e-12);
        CHECK(*t.dropped_weight == doctest::Approx(0.0));
    }
    // Clipped outcomes past the window lose support and fall below one.
    const auto clipped = run_photon_cutoff(config, OutcomeSelector::forced(15));
    CHECK(clipped.fidelity < 1.0 - 1e-3);
}

TEST_CASE("negative support is dropped and reported") {
    PhotonCutoffConfig config;
    const double s = std::sqrt(1.0 / 3.0);
    config.coeffs = {{-1, Complex{s, 0.0}}, {0, Complex{0.0, s}}, {1, Complex{s, 0.0}}};
    config.cutoff = 2;
    config.resource_dim = 12;

    const auto range = photon_cutoff_retained_range(config);
    REQUIRE_FALSE(range.empty);
    CHECK(range.first == 1);
    CHECK(range.last == 10);

    for (std::size_t n = range.first; n <= range.last; ++n) {
        const auto t = run_photon_cutoff(config, OutcomeSelector::forced(n));
        CHECK(std::abs(*t.dropped_weight - 1.0 / 3.0) < 1e-9);
        CHECK(t.fidelity > 1.0 - 1e-9);  // fidelity against the renormalized target
    }

    const auto target = photon_cutoff_target(config);
    CHECK(target.dropped == doctest::Approx(1.0 / 3.0));
    CHECK(std::abs(target.state.norm_sq() - 1.0) < 1e-12);
}

TEST_CASE("run_photon_cutoff flags zero-probability outcomes") {
    PhotonCutoffConfig config;
    config.coeffs = {{1, Complex{1.0, 0.0}}};
    config.cutoff = 2;
    config.resource_dim = 6;
    // Outcome 5 would need coefficient index range [-5, 0]; nothing survives.
    const auto t = run_photon_cutoff(config, OutcomeSelector::forced(5));
    CHECK(t.discarded);
    CHECK(t.probability == 0.0);
}

TEST_CASE("photon cutoff distribution is Born normalized") {
    PhotonCutoffConfig config;
    const double s = 0.5;
    config.coeffs = {{-2, Complex{s, 0.0}},
                     {0, Complex{0.0, s}},
                     {1, Complex{-s, 0.0}},
                     {3, Complex{0.0, s}}};
    config.cutoff = 4;
    config.resource_dim = 14;
    const auto probs = photon_cutoff_distribution(config);
    double total = 0.0;
    for (double p : probs) total += p;
    CHECK(std::abs(total - 1.0) < 1e-12);
}

}  // TEST_SUITE
