#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rsp/qmath.hpp"
#include "rsp/rsp_finite.hpp"
#include "rsp/rsp_quadrature.hpp"
#include "test_helpers.hpp"

using namespace rsp;
using rsp_test::max_amp_diff;
using rsp_test::random_phases;

namespace {

QuadratureConfig make_config(std::size_t m, double x_min, double dx,
                             std::vector<double> phi, bool swap = false) {
    QuadratureConfig c;
    c.grid = GridSpec{m, x_min, dx};
    c.phi = std::move(phi);
    c.swap_xp = swap;
    return c;
}

// Joint-state oracle for the unswapped protocol: maximally entangled grid
// resource, V on A, projection onto the momentum vector, correction.
StateVector oracle_output(const QuadratureConfig& config, std::size_t j) {
    const std::size_t m = config.grid.m;
    JointState joint(m, m);
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    for (std::size_t k = 0; k < m; ++k) joint.at(k, k) = Complex{scale, 0.0};

    const Operator v = phase_function_premeasurement(config.grid, config.phi);
    JointState transformed(m, m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t k = 0; k < m; ++k)
                transformed.at(a, b) += v.at(a, k) * joint.at(k, b);

    const StateVector mom = momentum_basis(config.grid)[j];
    const StateVector projected = partial_inner_left(mom, transformed);
    StateVector received = projected.normalized_copy();
    // Displacement relative to the grid origin (x_min = 0 grids make this
    // the plain physical displacement).
    GridSpec origin = config.grid;
    origin.x_min = 0.0;
    return momentum_displacement(origin, config.grid.p(j)).apply(received);
}

}  // namespace

TEST_SUITE("rsp_quadrature") {

TEST_CASE("grid validation") {
    const GridSpec too_small{1, 0.0, 0.1};
    const GridSpec zero_dx{4, 0.0, 0.0};
    const GridSpec fine{4, -1.0, 0.5};
    CHECK_THROWS_AS(too_small.validate(), std::invalid_argument);
    CHECK_THROWS_AS(zero_dx.validate(), std::invalid_argument);
    CHECK_NOTHROW(fine.validate());
}

TEST_CASE("phase_function_premeasurement diagonals") {
    const GridSpec grid{4, 0.0, 0.5};
    const Operator id = phase_function_premeasurement(grid, {0.0, 0.0, 0.0, 0.0});
    CHECK((id - Operator::identity(4)).max_abs() == 0.0);

    // Linear phi(x) = p x is the momentum-displacement diagonal.
    const double p = 1.3;
    const Operator lin = phase_function_premeasurement(grid, polynomial_phase(grid, p, 0.0, 0.0));
    CHECK((lin - momentum_displacement(grid, p)).max_abs() < 1e-15);

    const GridSpec g16{16, -2.0, 0.25};
    const Operator v =
        phase_function_premeasurement(g16, polynomial_phase(g16, 0.3, 0.1, 0.0));
    CHECK(v.is_unitary(1e-14));
    CHECK_THROWS_AS(phase_function_premeasurement(g16, {0.0}), std::invalid_argument);
}

TEST_CASE("momentum basis is the DFT frame") {
    const GridSpec grid{8, 0.0, 1.0};
    const auto basis = momentum_basis(grid);
    for (std::size_t k = 0; k < 8; ++k)
        CHECK(std::abs(basis[0].amps[k] - Complex{1.0 / std::sqrt(8.0), 0.0}) < 1e-15);

    const GridSpec g2{2, 0.0, 1.0};
    const auto b2 = momentum_basis(g2);
    CHECK(std::abs(b2[1].amps[1] - Complex{-1.0 / std::sqrt(2.0), 0.0}) < 1e-15);

    for (std::size_t a = 0; a < 8; ++a)
        for (std::size_t b = 0; b < 8; ++b) {
            const Complex g = inner(basis[a], basis[b]);
            const Complex expected = a == b ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
            CHECK(std::abs(g - expected) < 1e-12);
        }
}

TEST_CASE("momentum displacement composes to identity") {
    const GridSpec grid{8, -1.0, 0.3};
    CHECK((momentum_displacement(grid, 0.0) - Operator::identity(8)).max_abs() == 0.0);
    const Operator fwd = momentum_displacement(grid, 0.7);
    const Operator back = momentum_displacement(grid, -0.7);
    CHECK((fwd * back - Operator::identity(8)).max_abs() < 1e-15);
}

TEST_CASE("grid momentum displacement cycles the momentum basis") {
    const GridSpec grid{8, 0.0, 0.5};
    const Operator d = momentum_displacement(grid, grid.p(1));
    const auto basis = momentum_basis(grid);
    for (std::size_t j = 0; j < 8; ++j) {
        const StateVector shifted = d.apply(basis[j]);
        CHECK(std::abs(fidelity(shifted, basis[(j + 1) % 8]) - 1.0) < 1e-12);
    }
}

TEST_CASE("uniform phase gives the uniform target") {
    const auto config = make_config(8, 0.0, 0.4, std::vector<double>(8, 0.0));
    for (std::size_t j = 0; j < 8; ++j) {
        const auto t = run_quadrature_protocol(config, OutcomeSelector::forced(j));
        CHECK(t.fidelity == doctest::Approx(1.0).epsilon(1e-12));
        for (std::size_t k = 0; k < 8; ++k)
            CHECK(std::abs(t.target.amps[k] - Complex{1.0 / std::sqrt(8.0), 0.0}) < 1e-14);
    }
}

TEST_CASE("quadratic phase against the joint-state oracle") {
    GridSpec grid{16, 0.0, 0.3};
    QuadratureConfig config = make_config(16, 0.0, 0.3,
                                          polynomial_phase(grid, 0.0, 0.5, 0.0));
    for (std::size_t j = 0; j < 16; ++j) {
        const auto t = run_quadrature_protocol(config, OutcomeSelector::forced(j));
        CHECK(t.fidelity > 1.0 - 1e-10);
        CHECK(t.probability == doctest::Approx(1.0 / 16.0).epsilon(1e-13));
        CHECK(max_amp_diff(t.output, oracle_output(config, j)) < 1e-12);
        CHECK(t.message.kind == ClassicalMessage::Kind::Real);
        CHECK(t.message.real == doctest::Approx(config.grid.p(j)));
    }
}

TEST_CASE("transcripts equal the finite protocol under the index mapping") {
    Xoshiro256StarStar rng(71);
    for (const std::size_t m : {4, 8, 16, 32}) {
        for (int rep = 0; rep < 5; ++rep) {
            const auto phi = random_phases(rng, m);
            const auto quad = make_config(m, 0.0, 0.2 + rng.uniform(), phi);
            const FiniteConfig fin{
                std::vector<double>(m, 1.0 / std::sqrt(static_cast<double>(m))), phi};
            for (std::size_t j = 0; j < m; ++j) {
                const auto tq = run_quadrature_protocol(quad, OutcomeSelector::forced(j));
                const auto tf = run_finite_protocol(fin, OutcomeSelector::forced(j));
                CHECK(std::abs(tq.probability - tf.probability) < 1e-12);
                CHECK(max_amp_diff(tq.received, tf.received) < 1e-12);
                CHECK(max_amp_diff(tq.output, tf.output) < 1e-12);
                CHECK(max_amp_diff(tq.target, tf.target) < 1e-12);
                CHECK(std::abs(tq.fidelity - tf.fidelity) < 1e-12);
            }
        }
    }
}

TEST_CASE("outputs are outcome independent on shifted grids") {
    Xoshiro256StarStar rng(79);
    const auto config = make_config(12, -3.0, 0.45, random_phases(rng, 12));
    std::vector<StateVector> outputs;
    for (std::size_t j = 0; j < 12; ++j) {
        const auto t = run_quadrature_protocol(config, OutcomeSelector::forced(j));
        CHECK(t.fidelity > 1.0 - 1e-10);
        outputs.push_back(t.output);
    }
    for (std::size_t a = 0; a < outputs.size(); ++a)
        for (std::size_t b = a + 1; b < outputs.size(); ++b)
            CHECK(fidelity(outputs[a], outputs[b]) > 1.0 - 1e-10);
}

TEST_CASE("swap mode prepares the momentum-side target exactly") {
    Xoshiro256StarStar rng(83);
    const auto config = make_config(10, -1.0, 0.35, random_phases(rng, 10), true);
    std::vector<StateVector> outputs;
    for (std::size_t j = 0; j < 10; ++j) {
        const auto t = run_quadrature_protocol(config, OutcomeSelector::forced(j));
        CHECK(t.probability == doctest::Approx(0.1).epsilon(1e-12));
        CHECK(t.fidelity > 1.0 - 1e-10);
        CHECK(t.message.kind == ClassicalMessage::Kind::Real);
        CHECK(t.message.real == doctest::Approx(config.grid.x(j)));
        outputs.push_back(t.output);
    }
    for (std::size_t a = 0; a + 1 < outputs.size(); ++a)
        CHECK(fidelity(outputs[a], outputs[a + 1]) > 1.0 - 1e-10);
}

TEST_CASE("swap and unswapped targets are DFT partners of each other") {
    // For phi sampled on matching grids the swapped target is the conjugate
    // DFT image of the unswapped one.
    Xoshiro256StarStar rng(89);
    const auto phi = random_phases(rng, 8);
    const auto plain = quadrature_target(make_config(8, 0.0, 0.5, phi, false));
    const auto swapped = quadrature_target(make_config(8, 0.0, 0.5, phi, true));
    const Operator fdag = dft_unitary(8).dagger();
    CHECK(max_amp_diff(swapped, fdag.apply(plain)) < 1e-12);
}

}  // TEST_SUITE
