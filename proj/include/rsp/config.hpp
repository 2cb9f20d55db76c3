// JSON configuration ingestion for the CLI.  Schemas are strict: unknown
// keys are rejected at every level before anything executes.

#pragma once

#include <stdexcept>
#include <string>

#include "rsp/engine.hpp"
#include "rsp/report.hpp"

namespace rsp {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutputSpec {
    std::string format = "csv";  // "csv" or "json"
    std::string path;
};

struct RunConfig {
    ProtocolConfig protocol;
    RunMode mode;
    OutputSpec output;
};

struct SweepSpec {
    std::string axis;
    std::vector<double> values;
};

struct SweepConfig {
    std::string protocol_name;
    ProtocolConfig base;  // axis field is overwritten per grid point
    SweepSpec sweep;
    OutputSpec output;
    std::vector<double> quad_poly;   // polynomial coefficients for quadrature m-sweeps
    std::vector<double> phase_kerr;  // {chi, theta} when phase sweeps use the Kerr builder
};

// Parse and validate a run configuration document.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

// Parse and validate a sweep configuration document.
SweepConfig parse_sweep_config(const std::string& json_text);
SweepConfig load_sweep_config(const std::string& path);

// Instantiate the protocol at one sweep grid point.
ProtocolConfig sweep_point(const SweepConfig& config, double value);

// Execute the sweep: one row per grid point with the analytic reference
// value where a closed form exists.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

}  // namespace rsp
