// Record of one two-step protocol run: Alice's pre-measurement and outcome,
// the single classical message, Bob's correction, and the resulting state
// with its fidelity against the target.

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rsp/types.hpp"

namespace rsp {

// Exactly one message crosses the classical channel per run.
struct ClassicalMessage {
    enum class Kind { Integer, Real };
    Kind kind = Kind::Integer;
    std::int64_t integer = 0;
    double real = 0.0;

    static ClassicalMessage of_integer(std::int64_t v) {
        ClassicalMessage m;
        m.kind = Kind::Integer;
        m.integer = v;
        return m;
    }
    static ClassicalMessage of_real(double v) {
        ClassicalMessage m;
        m.kind = Kind::Real;
        m.real = v;
        return m;
    }
};

struct ProtocolTranscript {
    std::string resource;         // resource descriptor
    std::string pre_measurement;  // pre-measurement descriptor
    std::size_t outcome = 0;      // outcome index in the protocol's outcome space
    double probability = 0.0;
    ClassicalMessage message;
    std::string correction;       // Bob's correction descriptor
    StateVector received;         // Bob's conditional state before correction
    StateVector output;           // state after Bob's correction
    StateVector target;
    double fidelity = 0.0;        // meaningful only when not discarded
    bool discarded = false;
    std::optional<double> dropped_weight;    // weight removed by a non-unitary correction
    std::optional<double> neglected_weight;  // resource weight lost to truncation
};

// Outcome selection: forced index for deterministic enumeration, or a
// one-shot seeded draw from the exact outcome distribution.
struct OutcomeSelector {
    enum class Mode { Forced, Sampled };
    Mode mode = Mode::Forced;
    std::size_t index = 0;
    std::uint64_t seed = 0;

    static OutcomeSelector forced(std::size_t j) {
        OutcomeSelector s;
        s.mode = Mode::Forced;
        s.index = j;
        return s;
    }
    static OutcomeSelector sampled(std::uint64_t seed) {
        OutcomeSelector s;
        s.mode = Mode::Sampled;
        s.seed = seed;
        return s;
    }
};

}  // namespace rsp
