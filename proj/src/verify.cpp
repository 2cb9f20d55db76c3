#include "rsp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rsp/bipartite.hpp"
#include "rsp/engine.hpp"
#include "rsp/qmath.hpp"
#include "rsp/rng.hpp"

namespace rsp {

namespace {

// Fixed-seed draws keep every verification run bit-reproducible.
constexpr std::uint64_t kVerifySeed = 0x5256534653554954ULL;

double uniform_angle(Xoshiro256StarStar& rng) {
    return 2.0 * std::numbers::pi * rng.uniform();
}

std::vector<double> random_phases(Xoshiro256StarStar& rng, std::size_t n) {
    std::vector<double> phi(n);
    for (auto& v : phi) v = uniform_angle(rng);
    return phi;
}

std::vector<double> random_alphas(Xoshiro256StarStar& rng, std::size_t n) {
    std::vector<double> a(n);
    double sum = 0.0;
    for (auto& v : a) {
        v = 0.05 + rng.uniform();
        sum += v * v;
    }
    const double scale = 1.0 / std::sqrt(sum);
    for (auto& v : a) v *= scale;
    return a;
}

StateVector random_state(Xoshiro256StarStar& rng, std::size_t n) {
    StateVector v(n);
    for (auto& amp : v.amps) amp = Complex{rng.uniform() - 0.5, rng.uniform() - 0.5};
    return v.normalized_copy();
}

JointState random_joint(Xoshiro256StarStar& rng, std::size_t da, std::size_t db) {
    JointState psi(da, db);
    for (auto& amp : psi.amps) amp = Complex{rng.uniform() - 0.5, rng.uniform() - 0.5};
    const double n = std::sqrt(psi.norm_sq());
    for (auto& amp : psi.amps) amp /= n;
    psi.normalized = true;
    return psi;
}

InvariantResult result(std::string name, double deviation, double tolerance) {
    InvariantResult r;
    r.name = std::move(name);
    r.deviation = deviation;
    r.tolerance = tolerance;
    r.pass = deviation <= tolerance;
    return r;
}

std::vector<InvariantResult> suite_qmath() {
    std::vector<InvariantResult> out;
    Xoshiro256StarStar rng(kVerifySeed);

    double dev = 0.0;
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t da = 2 + static_cast<std::size_t>(rng.uniform() * 6);
        const std::size_t db = 2 + static_cast<std::size_t>(rng.uniform() * 6);
        const JointState psi = random_joint(rng, da, db);
        const StateVector phi = random_state(rng, da);
        const Complex c{rng.uniform() - 0.5, rng.uniform() - 0.5};
        const StateVector lhs = partial_inner_left(phi.scaled(c), psi);
        const StateVector rhs = partial_inner_left(phi, psi).scaled(std::conj(c));
        for (std::size_t j = 0; j < lhs.dim(); ++j)
            dev = std::max(dev, std::abs(lhs.amps[j] - rhs.amps[j]));
    }
    out.push_back(result("partial_inner_left antilinearity", dev, 1e-14));

    dev = 0.0;
    for (const auto& [da, db] : {std::pair<std::size_t, std::size_t>{2, 2},
                                 {3, 5},
                                 {8, 8},
                                 {16, 9},
                                 {32, 32}}) {
        const JointState psi = random_joint(rng, da, db);
        const SchmidtDecomposition sd = schmidt_decompose(psi);
        JointState rec(da, db);
        for (std::size_t k = 0; k < sd.coeffs.size(); ++k)
            for (std::size_t i = 0; i < da; ++i)
                for (std::size_t j = 0; j < db; ++j)
                    rec.at(i, j) += sd.coeffs[k] * sd.basis_a.at(i, k) * sd.basis_b.at(j, k);
        for (std::size_t i = 0; i < psi.amps.size(); ++i)
            dev = std::max(dev, std::abs(rec.amps[i] - psi.amps[i]));
    }
    out.push_back(result("schmidt_decompose round trip", dev, 1e-12));

    dev = 0.0;
    for (std::size_t n : {1, 2, 3, 4, 8, 64, 256}) {
        const Operator f = dft_unitary(n);
        dev = std::max(dev, (f * f.dagger() - Operator::identity(n)).max_abs());
    }
    out.push_back(result("dft_unitary unitarity", dev, 1e-12));

    dev = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        const StateVector a = random_state(rng, 6);
        const StateVector b = random_state(rng, 6);
        dev = std::max(dev, std::abs(fidelity(a, b) - fidelity(b, a)));
    }
    out.push_back(result("fidelity symmetry", dev, 0.0));
    return out;
}

std::vector<InvariantResult> suite_bipartite() {
    std::vector<InvariantResult> out;
    Xoshiro256StarStar rng(kVerifySeed ^ 0xB1);

    double dev = 0.0;
    for (std::size_t n : {2, 3, 5, 8}) {
        const BipartiteState psi = make_schmidt_state(random_alphas(rng, n));
        const AntilinearMap r = r_operator(psi);
        const auto basis = measurement_basis(random_phases(rng, n));
        double total = 0.0;
        for (const auto& phi : basis) total += conditional_state(r, phi).probability;
        dev = std::max(dev, std::abs(total - 1.0));
    }
    out.push_back(result("probability conservation over orthonormal bases", dev, 1e-12));

    dev = 0.0;
    for (std::size_t n : {2, 4, 7}) {
        const BipartiteState psi = make_schmidt_state(random_alphas(rng, n));
        const AntilinearMap r = r_operator(psi);
        const StateVector phi = alice_input_state(random_phases(rng, n));
        const auto us = zn_unitaries(n);
        const auto report = check_rsp_conditions(psi, us, phi, 1e-10);
        for (const auto& phi_j : report.basis) {
            const double p = conditional_state(r, phi_j).probability;
            dev = std::max(dev, std::abs(p - 1.0 / static_cast<double>(n)));
        }
    }
    out.push_back(result("compliant setups have uniform outcome probability", dev, 1e-12));

    dev = 0.0;
    for (std::size_t n : {2, 4, 6}) {
        const BipartiteState psi = make_schmidt_state(random_alphas(rng, n));
        const AntilinearMap r = r_operator(psi);
        const PolarDecomposition polar = polar_decompose(r);
        for (int rep = 0; rep < 100; ++rep) {
            const StateVector phi = random_state(rng, n);
            const StateVector lhs = r.apply(phi);
            const StateVector rhs = polar.sqrt_rho_b.apply(polar.j_map.apply(phi));
            for (std::size_t i = 0; i < lhs.dim(); ++i)
                dev = std::max(dev, std::abs(lhs.amps[i] - rhs.amps[i]));
        }
    }
    out.push_back(result("polar identity R = sqrt(rho_B) J", dev, 1e-12));

    dev = 0.0;
    for (std::size_t n : {2, 3, 5}) {
        const BipartiteState psi = make_schmidt_state(random_alphas(rng, n));
        const AntilinearMap r = r_operator(psi);
        const StateVector phi = alice_input_state(random_phases(rng, n));
        const auto us = zn_unitaries(n);
        const auto report = check_rsp_conditions(psi, us, phi, 1e-10);
        const auto reference = conditional_state(r, phi);
        for (std::size_t j = 0; j < us.size(); ++j) {
            const auto cond = conditional_state(r, report.basis[j]);
            const StateVector recovered = us[j].apply(*cond.state);
            dev = std::max(dev, 1.0 - fidelity(recovered, *reference.state));
        }
    }
    out.push_back(result("recovery identity U_j restores the target", dev, 1e-10));
    return out;
}

std::vector<InvariantResult> suite_finite(const VerifyOptions& options) {
    std::vector<InvariantResult> out;
    Xoshiro256StarStar rng(kVerifySeed ^ 0xF1);

    double fid_dev = 0.0;
    double prob_dev = 0.0;
    for (std::size_t n = 1; n <= 16; ++n) {
        for (int rep = 0; rep < 50; ++rep) {
            const FiniteConfig config{random_alphas(rng, n), random_phases(rng, n)};
            for (std::size_t j = 0; j < n; ++j) {
                const auto t = run_finite_protocol(config, OutcomeSelector::forced(j));
                fid_dev = std::max(fid_dev, 1.0 - t.fidelity);
                prob_dev = std::max(prob_dev,
                                    std::abs(t.probability - 1.0 / static_cast<double>(n)));
            }
        }
    }
    out.push_back(result("corrected fidelity equals one for every outcome", fid_dev, 1e-10));
    out.push_back(result("outcome distribution is uniform 1/N", prob_dev, 1e-12));

    double obliv_dev = 0.0;
    for (std::size_t n : {2, 5, 9}) {
        const auto alphas = random_alphas(rng, n);
        const FiniteConfig a{alphas, random_phases(rng, n)};
        const FiniteConfig b{alphas, random_phases(rng, n)};
        const auto report = obliviousness_check(a, b);
        obliv_dev = std::max(obliv_dev, report.tv_distance);
    }
    out.push_back(result("message distribution is parameter independent", obliv_dev, 1e-12));

    double basis_dev = 0.0;
    for (std::size_t n : {2, 4, 8}) {
        const auto phases = random_phases(rng, n);
        const auto basis = measurement_basis(phases);
        const Operator vdag = pre_measurement(phases).dagger();
        const Operator f = dft_unitary(n);
        for (std::size_t j = 0; j < n; ++j) {
            StateVector col(n);
            for (std::size_t k = 0; k < n; ++k) col.amps[k] = f.at(k, j);
            const StateVector expect = vdag.apply(col);
            for (std::size_t k = 0; k < n; ++k)
                basis_dev = std::max(basis_dev, std::abs(basis[j].amps[k] - expect.amps[k]));
        }
    }
    out.push_back(result("measurement basis equals V^dag DFT columns", basis_dev, 1e-12));

    double group_dev = 0.0;
    for (std::size_t n : {2, 3, 8, 12}) {
        auto us = zn_unitaries(n);
        if (options.perturb_finite) us[n - 1].at(0, 0) += Complex{1e-6, 0.0};
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t m = 0; m < n; ++m)
                group_dev = std::max(group_dev,
                                     (us[j] * us[m] - us[(j + m) % n]).max_abs());
    }
    out.push_back(result("Z_N composition matches addition mod N", group_dev, 1e-12));
    return out;
}

std::vector<InvariantResult> suite_quadrature() {
    std::vector<InvariantResult> out;
    Xoshiro256StarStar rng(kVerifySeed ^ 0x9D);

    double red_dev = 0.0;
    for (std::size_t m : {4, 8, 16, 32}) {
        for (int rep = 0; rep < 20; ++rep) {
            QuadratureConfig quad;
            quad.grid = GridSpec{m, 0.0, 0.25 + rng.uniform()};
            quad.phi = random_phases(rng, m);
            const FiniteConfig fin{std::vector<double>(
                                       m, 1.0 / std::sqrt(static_cast<double>(m))),
                                   quad.phi};
            for (std::size_t j = 0; j < m; ++j) {
                const auto tq = run_quadrature_protocol(quad, OutcomeSelector::forced(j));
                const auto tf = run_finite_protocol(fin, OutcomeSelector::forced(j));
                red_dev = std::max(red_dev, std::abs(tq.probability - tf.probability));
                for (std::size_t k = 0; k < m; ++k) {
                    red_dev = std::max(red_dev,
                                       std::abs(tq.received.amps[k] - tf.received.amps[k]));
                    red_dev =
                        std::max(red_dev, std::abs(tq.output.amps[k] - tf.output.amps[k]));
                }
            }
        }
    }
    out.push_back(result("grid protocol reduces exactly to the Z_M protocol", red_dev, 1e-12));

    double indep_dev = 0.0;
    double unif_dev = 0.0;
    for (const bool swap : {false, true}) {
        QuadratureConfig quad;
        quad.grid = GridSpec{16, -2.0, 0.3};
        quad.phi = random_phases(rng, 16);
        quad.swap_xp = swap;
        std::vector<StateVector> outputs;
        for (std::size_t j = 0; j < 16; ++j) {
            const auto t = run_quadrature_protocol(quad, OutcomeSelector::forced(j));
            unif_dev = std::max(unif_dev, std::abs(t.probability - 1.0 / 16.0));
            indep_dev = std::max(indep_dev, 1.0 - t.fidelity);
            outputs.push_back(t.output);
        }
        for (std::size_t a = 0; a < outputs.size(); ++a)
            for (std::size_t b = a + 1; b < outputs.size(); ++b)
                indep_dev = std::max(indep_dev, 1.0 - fidelity(outputs[a], outputs[b]));
    }
    out.push_back(result("corrected outputs are outcome independent", indep_dev, 1e-10));
    out.push_back(result("outcome distribution is uniform 1/m", unif_dev, 1e-12));
    return out;
}

std::vector<InvariantResult> suite_phase() {
    std::vector<InvariantResult> out;
    Xoshiro256StarStar rng(kVerifySeed ^ 0xFA);

    double complete_dev = 0.0;
    for (const double r : {0.0, 0.4, 1.2}) {
        for (const std::size_t extra : {std::size_t{0}, std::size_t{3}, std::size_t{25}}) {
            PhaseProtocolConfig config;
            config.r = r;
            config.n_meas = 6;
            config.cutoff = config.n_meas + extra;
            config.phi_n = random_phases(rng, config.n_meas);
            const auto probs = phase_distribution(config);
            double total = 0.0;
            for (double p : probs) total += p;
            complete_dev = std::max(complete_dev, std::abs(total - 1.0));
        }
    }
    out.push_back(result("POVM probabilities sum to one at any cutoff", complete_dev, 1e-10));

    double equal_dev = 0.0;
    {
        PhaseProtocolConfig a;
        a.r = 0.5;
        a.n_meas = 8;
        a.cutoff = default_phase_cutoff(a.r, a.n_meas);
        a.phi_n = random_phases(rng, a.n_meas);
        PhaseProtocolConfig b = a;
        b.phi_n = random_phases(rng, b.n_meas);
        const auto pa = phase_distribution(a);
        for (std::size_t j = 0; j + 1 < pa.size(); ++j)
            equal_dev = std::max(equal_dev, std::abs(pa[j] - pa[0]));
        equal_dev = std::max(equal_dev, obliviousness_check(ProtocolConfig{a},
                                                            ProtocolConfig{b}).tv_distance);
    }
    out.push_back(result("phase outcomes are equiprobable and parameter independent",
                         equal_dev, 1e-12));

    double success_dev = 0.0;
    for (const double r : {0.25, 0.5, 1.0})
        for (std::size_t n = 1; n <= 10; ++n) {
            PhaseProtocolConfig config;
            config.r = r;
            config.n_meas = n;
            config.cutoff = default_phase_cutoff(r, n);
            config.phi_n = random_phases(rng, n);
            const auto probs = phase_distribution(config);
            double success = 0.0;
            for (std::size_t j = 0; j < n; ++j) success += probs[j];
            success_dev = std::max(success_dev,
                                   std::abs(success - success_probability(r, n)));
        }
    out.push_back(result("simulated success matches 1 - tanh(r)^(2N)", success_dev, 1e-9));

    double fid_dev = 0.0;
    {
        PhaseProtocolConfig config;
        config.r = 0.5;
        config.n_meas = 8;
        config.cutoff = default_phase_cutoff(config.r, config.n_meas);
        config.phi_n = random_phases(rng, config.n_meas);
        std::vector<StateVector> outputs;
        for (std::size_t j = 0; j < config.n_meas; ++j) {
            const auto t = run_phase_protocol(config, OutcomeSelector::forced(j));
            fid_dev = std::max(fid_dev, 1.0 - t.fidelity);
            outputs.push_back(t.output);
        }
        for (std::size_t a = 0; a < outputs.size(); ++a)
            for (std::size_t b = a + 1; b < outputs.size(); ++b)
                fid_dev = std::max(fid_dev, 1.0 - fidelity(outputs[a], outputs[b]));
    }
    out.push_back(result("corrected outputs agree with the target ensemble", fid_dev, 1e-10));
    return out;
}

std::vector<InvariantResult> suite_photon() {
    std::vector<InvariantResult> out;
    Xoshiro256StarStar rng(kVerifySeed ^ 0xC0);

    double parseval_dev = 0.0;
    double recon_dev = 0.0;
    for (std::size_t n = 1; n <= 16; ++n) {
        const auto pre = finite_fourier_premeasurement(random_phases(rng, n));
        double weight = 0.0;
        for (const auto& f : pre.coeffs) weight += std::norm(f);
        parseval_dev = std::max(parseval_dev, std::abs(weight - 1.0));

        const auto ladders = ladder_unitaries(n);
        Operator sum(n);
        for (std::size_t m = 0; m < n; ++m)
            for (std::size_t i = 0; i < n * n; ++i)
                sum.entries[i] += pre.coeffs[m] * ladders[m].entries[i];
        recon_dev = std::max(recon_dev, (sum - pre.v).max_abs());
    }
    out.push_back(result("Fourier coefficients satisfy sum |f_m|^2 = 1", parseval_dev, 1e-12));
    out.push_back(result("V reconstructs as sum f_m U_m", recon_dev, 1e-12));

    double fid_dev = 0.0;
    double unif_dev = 0.0;
    for (std::size_t n = 1; n <= 16; ++n) {
        const PhotonFiniteConfig config{n, random_phases(rng, n)};
        for (std::size_t j = 0; j < n; ++j) {
            const auto t = run_photon_finite(config, OutcomeSelector::forced(j));
            fid_dev = std::max(fid_dev, 1.0 - t.fidelity);
            unif_dev = std::max(unif_dev,
                                std::abs(t.probability - 1.0 / static_cast<double>(n)));
        }
    }
    out.push_back(result("finite photon protocol is exact", fid_dev, 1e-10));
    out.push_back(result("photon counting outcomes are uniform", unif_dev, 1e-12));

    double shift_dev = 0.0;
    {
        const std::size_t dim = 12;
        for (std::size_t a : {0, 1, 3})
            for (std::size_t b : {0, 2, 5})
                shift_dev = std::max(shift_dev, (down_shift(a, dim) * down_shift(b, dim) -
                                                 down_shift(a + b, dim))
                                                    .max_abs());
        // D_m after the raise by m acts as identity on the subspace the
        // raise retains (k < dim - m).
        for (std::size_t m : {1, 4}) {
            const Operator composed = down_shift(m, dim) * down_shift(m, dim).dagger();
            Operator retained(dim);
            for (std::size_t k = 0; k + m < dim; ++k) retained.at(k, k) = Complex{1.0, 0.0};
            shift_dev = std::max(shift_dev, (composed - retained).max_abs());
        }
    }
    out.push_back(result("down-shift composition and retained-subspace identity", shift_dev, 0.0));

    double cutoff_dev = 0.0;
    double monotone_dev = 0.0;
    {
        PhotonCutoffConfig config;
        config.coeffs = {{0, Complex{0.5, 0.0}},
                         {1, Complex{0.0, 0.5}},
                         {2, Complex{-0.5, 0.0}},
                         {4, Complex{0.0, -0.5}}};
        config.cutoff = 5;
        double prev_min = 0.0;
        for (const std::size_t d : {16, 24, 32}) {
            config.resource_dim = d;
            const auto range = photon_cutoff_retained_range(config);
            double min_fid = 1.0;
            for (std::size_t j = range.first; j <= range.last; ++j) {
                const auto t = run_photon_cutoff(config, OutcomeSelector::forced(j));
                min_fid = std::min(min_fid, t.fidelity);
            }
            cutoff_dev = std::max(cutoff_dev, 1.0 - min_fid);
            monotone_dev = std::max(monotone_dev, prev_min - min_fid);
            prev_min = min_fid;
        }
    }
    out.push_back(result("cutoff protocol is exact on window-complete outcomes",
                         cutoff_dev, 1e-9));
    out.push_back(result("minimum fidelity never drops as the resource grows",
                         monotone_dev, 0.0));

    double neg_dev = 0.0;
    {
        PhotonCutoffConfig config;
        const double s = 1.0 / std::sqrt(4.0);
        config.coeffs = {{-2, Complex{s, 0.0}},
                         {-1, Complex{0.0, s}},
                         {0, Complex{s, 0.0}},
                         {1, Complex{0.0, s}}};
        config.cutoff = 3;
        config.resource_dim = 16;
        const auto range = photon_cutoff_retained_range(config);
        for (std::size_t j = range.first; j <= range.last; ++j) {
            const auto t = run_photon_cutoff(config, OutcomeSelector::forced(j));
            neg_dev = std::max(neg_dev, std::abs(*t.dropped_weight - 0.5));
        }
    }
    out.push_back(result("negative-index weight is reported as dropped", neg_dev, 1e-9));
    return out;
}

std::vector<InvariantResult> suite_engine() {
    std::vector<InvariantResult> out;
    Xoshiro256StarStar rng(kVerifySeed ^ 0xE5);

    std::vector<ProtocolConfig> configs;
    configs.push_back(FiniteConfig{random_alphas(rng, 4), random_phases(rng, 4)});
    {
        QuadratureConfig quad;
        quad.grid = GridSpec{8, -1.0, 0.4};
        quad.phi = random_phases(rng, 8);
        configs.push_back(quad);
    }
    {
        PhaseProtocolConfig phase;
        phase.r = 0.5;
        phase.n_meas = 4;
        phase.cutoff = default_phase_cutoff(phase.r, phase.n_meas);
        phase.phi_n = random_phases(rng, phase.n_meas);
        configs.push_back(phase);
    }
    configs.push_back(PhotonFiniteConfig{6, random_phases(rng, 6)});
    {
        PhotonCutoffConfig photon;
        const double s = 1.0 / std::sqrt(3.0);
        photon.coeffs = {{0, Complex{s, 0.0}}, {1, Complex{0.0, s}}, {2, Complex{-s, 0.0}}};
        photon.cutoff = 3;
        photon.resource_dim = 16;
        configs.push_back(photon);
    }

    double separation_dev = 0.0;
    double sum_dev = 0.0;
    double determinism_dev = 0.0;
    for (const auto& config : configs) {
        const RunBatch batch = execute(config, EnumerateMode{});
        double total = 0.0;
        for (const auto& t : batch.runs) {
            total += t.probability;
            if (t.discarded) continue;
            const StateVector rebuilt = bob_output_from_message(config, t.message, t.received);
            for (std::size_t k = 0; k < rebuilt.dim(); ++k)
                separation_dev =
                    std::max(separation_dev, std::abs(rebuilt.amps[k] - t.output.amps[k]));
        }
        sum_dev = std::max(sum_dev, std::abs(total - 1.0));

        const SampleMode mode{64, 12345};
        const RunBatch s1 = execute(config, RunMode{mode});
        const RunBatch s2 = execute(config, RunMode{mode});
        for (std::size_t i = 0; i < s1.runs.size(); ++i)
            if (s1.runs[i].outcome != s2.runs[i].outcome) determinism_dev += 1.0;
    }
    out.push_back(result("Bob's output rebuilds from the message alone", separation_dev, 1e-12));
    out.push_back(result("enumerated probabilities sum to one", sum_dev, 1e-10));
    out.push_back(result("identical seeds give identical outcome sequences",
                         determinism_dev, 0.0));
    return out;
}

}  // namespace

std::vector<std::string> verify_suite_names() {
    return {"qmath", "bipartite", "finite", "quadrature", "phase", "photon", "engine"};
}

std::vector<InvariantResult> verify_suite(const std::string& suite,
                                          const VerifyOptions& options) {
    // Module-style names ("rsp_phase") alias the short suite names.
    const std::string name = suite.rfind("rsp_", 0) == 0 ? suite.substr(4) : suite;
    if (name == "qmath") return suite_qmath();
    if (name == "bipartite") return suite_bipartite();
    if (name == "finite") return suite_finite(options);
    if (name == "quadrature") return suite_quadrature();
    if (name == "phase") return suite_phase();
    if (name == "photon") return suite_photon();
    if (name == "engine") return suite_engine();
    if (suite == "all") {
        std::vector<InvariantResult> out;
        for (const auto& name : verify_suite_names()) {
            auto part = verify_suite(name, options);
            for (auto& r : part) r.name = name + ": " + r.name;
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    throw std::invalid_argument("verify_suite: unknown suite \"" + suite + "\"");
}

}  // namespace rsp
