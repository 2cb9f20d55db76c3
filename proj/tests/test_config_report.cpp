#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rsp/config.hpp"
#include "rsp/report.hpp"

using namespace rsp;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

const char* kFiniteConfig = R"({
  "protocol": "finite",
  "params": {"alphas": [0.8, 0.6], "phases": [0.0, 1.2]},
  "mode": "enumerate",
  "output": {"format": "csv", "path": "out.csv"}
})";

}  // namespace

TEST_SUITE("config_report") {

TEST_CASE("run config round trip") {
    const RunConfig config = parse_run_config(kFiniteConfig);
    CHECK(protocol_id(config.protocol) == "finite");
    CHECK(std::holds_alternative<EnumerateMode>(config.mode));
    CHECK(config.output.format == "csv");
    const auto& fin = std::get<FiniteConfig>(config.protocol);
    CHECK(fin.alphas == std::vector<double>{0.8, 0.6});
}

TEST_CASE("alphas default to the uniform resource") {
    const RunConfig config = parse_run_config(R"({
      "protocol": "finite",
      "params": {"phases": [0.0, 0.0, 0.0, 0.0]},
      "mode": "enumerate",
      "output": {"format": "json", "path": "o.json"}
    })");
    const auto& fin = std::get<FiniteConfig>(config.protocol);
    for (double a : fin.alphas) CHECK(a == doctest::Approx(0.5));
}

TEST_CASE("malformed and invalid configs are rejected") {
    CHECK_THROWS_AS(parse_run_config("{ not json"), ConfigError);
    CHECK_THROWS_AS(parse_run_config(R"({"protocol": "finite"})"), ConfigError);
    // Unknown keys anywhere are fatal.
    CHECK_THROWS_AS(parse_run_config(R"({
      "protocol": "finite",
      "params": {"phases": [0.0], "extra": 1},
      "mode": "enumerate",
      "output": {"format": "csv", "path": "x"}
    })"),
                    ConfigError);
    CHECK_THROWS_AS(parse_run_config(R"({
      "protocol": "finite",
      "params": {"phases": [0.0]},
      "mode": "enumerate",
      "output": {"format": "csv", "path": "x"},
      "unexpected": true
    })"),
                    ConfigError);
    // Unknown protocol, bad mode, bad format.
    CHECK_THROWS_AS(parse_run_config(R"({
      "protocol": "teleportation",
      "params": {},
      "mode": "enumerate",
      "output": {"format": "csv", "path": "x"}
    })"),
                    ConfigError);
    CHECK_THROWS_AS(parse_run_config(R"({
      "protocol": "finite",
      "params": {"phases": [0.0]},
      "mode": "sample",
      "output": {"format": "csv", "path": "x"}
    })"),
                    ConfigError);
    CHECK_THROWS_AS(parse_run_config(R"({
      "protocol": "finite",
      "params": {"phases": [0.0]},
      "mode": "enumerate",
      "output": {"format": "xml", "path": "x"}
    })"),
                    ConfigError);
    // Protocol-level invariants surface as config errors too.
    CHECK_THROWS(parse_run_config(R"({
      "protocol": "finite",
      "params": {"alphas": [0.9, 0.9], "phases": [0.0, 0.0]},
      "mode": "enumerate",
      "output": {"format": "csv", "path": "x"}
    })"));
}

TEST_CASE("photon_cutoff coefficients must be normalized") {
    CHECK_THROWS_AS(parse_run_config(R"({
      "protocol": "photon_cutoff",
      "params": {"coeffs": [[0, 1.0, 0.0], [1, 1.0, 0.0]], "resource_dim": 8},
      "mode": "enumerate",
      "output": {"format": "csv", "path": "x"}
    })"),
                    ConfigError);
    const RunConfig ok = parse_run_config(R"({
      "protocol": "photon_cutoff",
      "params": {"coeffs": [[0, 0.6, 0.0], [2, 0.0, 0.8]], "resource_dim": 8},
      "mode": "enumerate",
      "output": {"format": "csv", "path": "x"}
    })");
    const auto& photon = std::get<PhotonCutoffConfig>(ok.protocol);
    CHECK(photon.cutoff == 3);  // defaults to max |n| + 1
}

TEST_CASE("sample mode parses runs and seed") {
    const RunConfig config = parse_run_config(R"({
      "protocol": "photon_finite",
      "params": {"n": 3, "phases": [0.0, 0.5, 1.0]},
      "mode": {"sample": {"runs": 50, "seed": 11}},
      "output": {"format": "json", "path": "r.json"}
    })");
    const auto& mode = std::get<SampleMode>(config.mode);
    CHECK(mode.runs == 50);
    CHECK(mode.seed == 11);
}

TEST_CASE("format_g17 round-trips doubles") {
    for (const double v : {1.0 / 3.0, 0.1, 2.5e-13, 1.0, 0.0}) {
        const std::string s = format_g17(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("csv schema is stable") {
    const RunConfig config = parse_run_config(kFiniteConfig);
    const RunBatch batch = execute(config.protocol, config.mode);
    const std::string csv = batch_csv(batch);
    CHECK(csv.rfind("outcome_id,message_kind,message_value,probability,fidelity,discarded,"
                    "dropped_weight\n",
                    0) == 0);
    // Two outcome rows plus the header.
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    CHECK(csv.find("integer") != std::string::npos);
    // Identical batches render identical bytes.
    CHECK(csv == batch_csv(execute(config.protocol, config.mode)));
}

TEST_CASE("discarded rows leave message and fidelity blank") {
    PhaseProtocolConfig config;
    config.r = 0.9;
    config.n_meas = 2;
    config.cutoff = default_phase_cutoff(config.r, config.n_meas);
    config.phi_n = {0.0, 0.0};
    const RunBatch batch = execute(ProtocolConfig{config}, EnumerateMode{});
    const std::string csv = batch_csv(batch);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);  // header
    std::getline(lines, line);
    std::getline(lines, line);
    std::getline(lines, line);  // discard row
    CHECK(line.rfind("2,,,", 0) == 0);
    CHECK(line.find("true") != std::string::npos);
}

TEST_CASE("json report carries rows and summary") {
    const RunConfig config = parse_run_config(kFiniteConfig);
    const RunBatch batch = execute(config.protocol, config.mode);
    const std::string json = batch_json(batch);
    CHECK(json.find("\"protocol\": \"finite\"") != std::string::npos);
    CHECK(json.find("\"mode\": \"enumerate\"") != std::string::npos);
    CHECK(json.find("\"summary\"") != std::string::npos);
    CHECK(json.find("\"outcome_histogram\": [1, 1]") != std::string::npos);
    CHECK(json == batch_json(execute(config.protocol, config.mode)));
}

TEST_CASE("atomic_write replaces the target in one step") {
    const auto dir = std::filesystem::temp_directory_path() / "rsp_report_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "report.csv").string();
    atomic_write(path, "first\n");
    CHECK(slurp(path) == "first\n");
    atomic_write(path, "second\n");
    CHECK(slurp(path) == "second\n");
    CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("sweep config drives the phase closed form") {
    const SweepConfig config = parse_sweep_config(R"({
      "protocol": "phase",
      "params": {"r": 0.5, "kerr": {"chi": 0.1, "theta": 0.0}},
      "sweep": {"axis": "n_meas", "values": [1, 2, 3, 4]},
      "output": {"format": "csv", "path": "sweep.csv"}
    })");
    const auto rows = run_sweep(config);
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].metric == "success_probability");
        const double expected = success_probability(0.5, i + 1);
        CHECK(rows[i].analytic == doctest::Approx(expected).epsilon(1e-14));
        CHECK(rows[i].abs_deviation < 1e-9);
    }
}

TEST_CASE("sweep over the quadrature grid keeps fidelity one") {
    const SweepConfig config = parse_sweep_config(R"({
      "protocol": "quadrature",
      "params": {"m": 4, "dx": 0.3, "poly": [0.4, 0.2, 0.05]},
      "sweep": {"axis": "m", "values": [4, 8, 16]},
      "output": {"format": "csv", "path": "sweep.csv"}
    })");
    const auto rows = run_sweep(config);
    REQUIRE(rows.size() == 3);
    for (const auto& row : rows) {
        CHECK(row.metric == "min_fidelity");
        CHECK(row.simulated > 1.0 - 1e-10);
        CHECK(row.abs_deviation < 1e-10);
    }
}

TEST_CASE("sweep rejects an empty axis and unsupported axes") {
    CHECK_THROWS_AS(parse_sweep_config(R"({
      "protocol": "phase",
      "params": {"r": 0.5, "phi_n": [0.0]},
      "sweep": {"axis": "n_meas", "values": []},
      "output": {"format": "csv", "path": "s.csv"}
    })"),
                    ConfigError);
    CHECK_THROWS_AS(parse_sweep_config(R"({
      "protocol": "finite",
      "params": {"phases": [0.0]},
      "sweep": {"axis": "n", "values": [1, 2]},
      "output": {"format": "csv", "path": "s.csv"}
    })"),
                    ConfigError);
}

TEST_CASE("sweep csv columns") {
    std::vector<SweepRow> rows(1);
    rows[0] = SweepRow{"n_meas", 3.0, "success_probability", 0.5, 0.5, 0.0};
    const std::string csv = sweep_csv(rows);
    CHECK(csv.rfind("axis,value,metric,analytic,simulated,abs_deviation\n", 0) == 0);
    CHECK(csv.find("n_meas,3,success_probability,0.5,0.5,0\n") != std::string::npos);
}

}  // TEST_SUITE
