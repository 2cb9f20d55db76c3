// Machine-readable run reports.  One column schema serves every protocol;
// numbers carry 17 significant digits so files round-trip doubles exactly
// and identical (config, seed) inputs produce byte-identical output.

#pragma once

#include <string>
#include <vector>

#include "rsp/engine.hpp"

namespace rsp {

// %.17g rendering, round-trip exact for doubles.
std::string format_g17(double v);

// Header: outcome_id,message_kind,message_value,probability,fidelity,
// discarded,dropped_weight.  Message and fidelity cells are blank on
// discarded rows; dropped_weight is blank where the protocol has none.
std::string batch_csv(const RunBatch& batch);

// Mirrors the CSV rows and adds the batch summary block.
std::string batch_json(const RunBatch& batch);

struct SweepRow {
    std::string axis;
    double value = 0.0;
    std::string metric;        // "success_probability" or "min_fidelity"
    double analytic = 0.0;
    double simulated = 0.0;
    double abs_deviation = 0.0;
};

std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string sweep_json(const std::vector<SweepRow>& rows);

// Write-then-rename so readers never observe a partial report.
void atomic_write(const std::string& path, const std::string& content);

}  // namespace rsp
