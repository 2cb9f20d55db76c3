#include "rsp/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <thread>

#include "rsp/rng.hpp"

namespace rsp {

namespace {

struct Dispatch {
    std::string id;
    std::vector<double> (*distribution)(const ProtocolConfig&);
    ProtocolTranscript (*run)(const ProtocolConfig&, std::size_t);
};

template <class T>
const T& as(const ProtocolConfig& c) {
    return std::get<T>(c);
}

std::size_t worker_count() {
    const char* env = std::getenv("RSP_THREADS");
    if (!env) return 1;
    const long v = std::strtol(env, nullptr, 10);
    if (v <= 1) return 1;
    return static_cast<std::size_t>(v);
}

}  // namespace

std::string protocol_id(const ProtocolConfig& config) {
    switch (config.index()) {
        case 0: return "finite";
        case 1: return "quadrature";
        case 2: return "phase";
        case 3: return "photon_finite";
        case 4: return "photon_cutoff";
    }
    throw std::logic_error("protocol_id: unhandled config variant");
}

std::string config_descriptor(const ProtocolConfig& config) {
    char buf[128];
    std::visit(
        [&](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, FiniteConfig>) {
                std::snprintf(buf, sizeof(buf), "finite[N=%zu]", c.n());
            } else if constexpr (std::is_same_v<T, QuadratureConfig>) {
                std::snprintf(buf, sizeof(buf), "quadrature[m=%zu,x_min=%g,dx=%g,swap=%d]",
                              c.grid.m, c.grid.x_min, c.grid.dx, c.swap_xp ? 1 : 0);
            } else if constexpr (std::is_same_v<T, PhaseProtocolConfig>) {
                std::snprintf(buf, sizeof(buf), "phase[r=%g,N=%zu,cutoff=%zu]", c.r, c.n_meas,
                              c.cutoff);
            } else if constexpr (std::is_same_v<T, PhotonFiniteConfig>) {
                std::snprintf(buf, sizeof(buf), "photon_finite[n=%zu]", c.n);
            } else {
                std::snprintf(buf, sizeof(buf), "photon_cutoff[dim=%zu,band=%zu,terms=%zu]",
                              c.resource_dim, c.cutoff, c.coeffs.size());
            }
        },
        config);
    return buf;
}

std::vector<double> outcome_distribution(const ProtocolConfig& config) {
    return std::visit(
        [](const auto& c) -> std::vector<double> {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, FiniteConfig>) return finite_distribution(c);
            else if constexpr (std::is_same_v<T, QuadratureConfig>)
                return quadrature_distribution(c);
            else if constexpr (std::is_same_v<T, PhaseProtocolConfig>)
                return phase_distribution(c);
            else if constexpr (std::is_same_v<T, PhotonFiniteConfig>)
                return photon_finite_distribution(c);
            else
                return photon_cutoff_distribution(c);
        },
        config);
}

ProtocolTranscript run_forced(const ProtocolConfig& config, std::size_t outcome) {
    const OutcomeSelector sel = OutcomeSelector::forced(outcome);
    return std::visit(
        [&](const auto& c) -> ProtocolTranscript {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, FiniteConfig>) return run_finite_protocol(c, sel);
            else if constexpr (std::is_same_v<T, QuadratureConfig>)
                return run_quadrature_protocol(c, sel);
            else if constexpr (std::is_same_v<T, PhaseProtocolConfig>)
                return run_phase_protocol(c, sel);
            else if constexpr (std::is_same_v<T, PhotonFiniteConfig>)
                return run_photon_finite(c, sel);
            else
                return run_photon_cutoff(c, sel);
        },
        config);
}

StateVector bob_output_from_message(const ProtocolConfig& config,
                                    const ClassicalMessage& message,
                                    const StateVector& received) {
    // Only public layout data is extracted from the config; the free RSP
    // parameters never reach Bob's side.
    Operator correction = std::visit(
        [&](const auto& c) -> Operator {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, FiniteConfig>)
                return finite_bob_correction(message, c.n());
            else if constexpr (std::is_same_v<T, QuadratureConfig>)
                return quadrature_bob_correction(message, c.grid, c.swap_xp);
            else if constexpr (std::is_same_v<T, PhaseProtocolConfig>)
                return phase_bob_correction(message, c.cutoff);
            else if constexpr (std::is_same_v<T, PhotonFiniteConfig>)
                return photon_finite_bob_correction(message, c.n);
            else
                return photon_cutoff_bob_correction(message, c.resource_dim);
        },
        config);
    StateVector out = correction.apply(received);
    const double n = out.norm();
    if (n <= kZeroProb) return out;  // the correction removed every component
    if (std::abs(n - 1.0) > kKernelTol) return out.normalized_copy();
    out.normalized = true;
    return out;
}

namespace {

BatchSummary summarize(const std::vector<ProtocolTranscript>& runs, std::size_t outcome_space,
                       bool enumerated) {
    BatchSummary s;
    s.run_count = runs.size();
    s.histogram.assign(outcome_space, 0);
    double fid_sum = 0.0;
    double fid_min = 1.0;
    std::size_t kept = 0;
    double discard_mass = 0.0;
    std::size_t discard_count = 0;
    for (const auto& t : runs) {
        if (t.outcome < outcome_space) ++s.histogram[t.outcome];
        if (t.discarded) {
            ++discard_count;
            discard_mass += t.probability;
            continue;
        }
        ++kept;
        fid_sum += t.fidelity;
        fid_min = std::min(fid_min, t.fidelity);
    }
    s.mean_fidelity = kept ? fid_sum / static_cast<double>(kept) : 0.0;
    s.min_fidelity = kept ? fid_min : 0.0;
    s.discard_rate = enumerated
                         ? discard_mass
                         : (runs.empty() ? 0.0
                                         : static_cast<double>(discard_count) /
                                               static_cast<double>(runs.size()));
    return s;
}

}  // namespace

RunBatch execute(const ProtocolConfig& config, const RunMode& mode) {
    RunBatch batch;
    batch.protocol = protocol_id(config);
    batch.config = config_descriptor(config);

    const std::vector<double> probs = outcome_distribution(config);
    const std::size_t outcomes = probs.size();

    if (std::holds_alternative<EnumerateMode>(mode)) {
        batch.enumerated = true;
        batch.runs.reserve(outcomes);
        for (std::size_t j = 0; j < outcomes; ++j) batch.runs.push_back(run_forced(config, j));
        batch.summary = summarize(batch.runs, outcomes, true);
        return batch;
    }

    const auto& sample = std::get<SampleMode>(mode);
    batch.seed = sample.seed;
    batch.runs.resize(sample.runs);

    const auto fill = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            Xoshiro256StarStar stream = run_stream(sample.seed, i);
            const std::size_t j = sample_index(probs, stream.uniform());
            batch.runs[i] = run_forced(config, j);
        }
    };

    const std::size_t workers = std::min<std::size_t>(worker_count(), sample.runs ? sample.runs : 1);
    if (workers <= 1) {
        fill(0, sample.runs);
    } else {
        // Per-run RNG streams make the partition order-independent; the
        // transcript vector keeps the sequential order by construction.
        std::vector<std::thread> pool;
        const std::size_t chunk = (sample.runs + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(sample.runs, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(fill, begin, end);
        }
        for (auto& th : pool) th.join();
    }
    batch.summary = summarize(batch.runs, outcomes, false);
    return batch;
}

namespace {

// The two settings must share the public protocol layout; only the free
// parameters may differ.
void require_same_layout(const ProtocolConfig& a, const ProtocolConfig& b) {
    if (a.index() != b.index())
        throw std::invalid_argument("obliviousness_check: protocols differ");
    bool same = true;
    if (const auto* fa = std::get_if<FiniteConfig>(&a)) {
        const auto& fb = std::get<FiniteConfig>(b);
        same = fa->alphas == fb.alphas;
    } else if (const auto* qa = std::get_if<QuadratureConfig>(&a)) {
        const auto& qb = std::get<QuadratureConfig>(b);
        same = qa->grid.m == qb.grid.m && qa->grid.x_min == qb.grid.x_min &&
               qa->grid.dx == qb.grid.dx && qa->swap_xp == qb.swap_xp;
    } else if (const auto* pa = std::get_if<PhaseProtocolConfig>(&a)) {
        const auto& pb = std::get<PhaseProtocolConfig>(b);
        same = pa->r == pb.r && pa->n_meas == pb.n_meas && pa->cutoff == pb.cutoff;
    } else if (const auto* na = std::get_if<PhotonFiniteConfig>(&a)) {
        same = na->n == std::get<PhotonFiniteConfig>(b).n;
    } else if (const auto* ca = std::get_if<PhotonCutoffConfig>(&a)) {
        const auto& cb = std::get<PhotonCutoffConfig>(b);
        same = ca->resource_dim == cb.resource_dim && ca->cutoff == cb.cutoff;
    }
    if (!same)
        throw std::invalid_argument("obliviousness_check: public protocol layouts differ");
}

}  // namespace

ObliviousnessReport obliviousness_check(const ProtocolConfig& a, const ProtocolConfig& b) {
    require_same_layout(a, b);

    ObliviousnessReport report;
    report.distribution_a = outcome_distribution(a);
    report.distribution_b = outcome_distribution(b);
    if (report.distribution_a.size() != report.distribution_b.size())
        throw std::invalid_argument("obliviousness_check: outcome spaces differ");

    double tv = 0.0;
    for (std::size_t j = 0; j < report.distribution_a.size(); ++j)
        tv += std::abs(report.distribution_a[j] - report.distribution_b[j]);
    report.tv_distance = 0.5 * tv;
    report.pass = report.tv_distance < kKernelTol;
    return report;
}

}  // namespace rsp
