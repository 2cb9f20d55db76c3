// Two-party protocol harness.  The engine holds the quantum state as a
// neutral referee: Alice's side fixes the pre-measurement and outcome
// distribution, exactly one classical message crosses per run, and Bob's
// correction is reconstructible from (protocol, message, public config)
// alone.  Batches are bit-reproducible from their seed.

#pragma once

#include <cstdint>
#include <variant>

#include "rsp/rsp_finite.hpp"
#include "rsp/rsp_phase.hpp"
#include "rsp/rsp_photon.hpp"
#include "rsp/rsp_quadrature.hpp"
#include "rsp/transcript.hpp"

namespace rsp {

using ProtocolConfig = std::variant<FiniteConfig, QuadratureConfig, PhaseProtocolConfig,
                                    PhotonFiniteConfig, PhotonCutoffConfig>;

// "finite", "quadrature", "phase", "photon_finite" or "photon_cutoff".
std::string protocol_id(const ProtocolConfig& config);

// Short human-readable summary of the public protocol layout.
std::string config_descriptor(const ProtocolConfig& config);

// Exact outcome distribution, including the discard branch where one exists.
std::vector<double> outcome_distribution(const ProtocolConfig& config);

// Run with a forced outcome index (the engine's enumeration primitive).
ProtocolTranscript run_forced(const ProtocolConfig& config, std::size_t outcome);

// Rebuild Bob's output from the transcript's message and received state;
// only public configuration (dimensions, grid) reaches the correction.
StateVector bob_output_from_message(const ProtocolConfig& config,
                                    const ClassicalMessage& message,
                                    const StateVector& received);

struct SampleMode {
    std::size_t runs = 0;
    std::uint64_t seed = 0;
};
struct EnumerateMode {};
using RunMode = std::variant<EnumerateMode, SampleMode>;

struct BatchSummary {
    std::vector<std::size_t> histogram;  // counts per outcome index
    double mean_fidelity = 0.0;          // over non-discarded runs
    double min_fidelity = 0.0;
    double discard_rate = 0.0;  // sampled: run fraction; enumerated: probability mass
    std::size_t run_count = 0;
};

struct RunBatch {
    std::string protocol;
    std::string config;  // descriptor of the public layout
    bool enumerated = false;
    std::uint64_t seed = 0;  // meaningful for sampled batches
    std::vector<ProtocolTranscript> runs;
    BatchSummary summary;
};

// enumerate: every outcome once with its exact probability.  sample: i.i.d.
// outcomes via per-run split RNG streams; identical (config, mode) inputs
// produce bit-identical batches.  RSP_THREADS caps worker parallelism; the
// transcript order always equals the sequential order.
RunBatch execute(const ProtocolConfig& config, const RunMode& mode);

struct ObliviousnessReport {
    std::vector<double> distribution_a;
    std::vector<double> distribution_b;
    double tv_distance = 0.0;
    bool pass = false;  // tv below 1e-12
};

// Bob learns nothing from the message iff the exact outcome distributions
// coincide across parameter settings.  Both configs must share the public
// protocol layout (dimensions, resource); the free parameters may differ.
ObliviousnessReport obliviousness_check(const ProtocolConfig& a, const ProtocolConfig& b);

}  // namespace rsp
