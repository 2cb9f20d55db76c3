#include "rsp/config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace rsp {

namespace {

using nlohmann::json;

void require_object(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
}

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key))
            throw ConfigError(where + ": unknown key \"" + key + "\"");
}

const json& require_key(const json& j, const std::string& where, const std::string& key) {
    const auto it = j.find(key);
    if (it == j.end()) throw ConfigError(where + ": missing key \"" + key + "\"");
    return *it;
}

double as_number(const json& j, const std::string& where) {
    if (!j.is_number()) throw ConfigError(where + ": expected a number");
    return j.get<double>();
}

std::size_t as_positive_int(const json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<std::int64_t>() <= 0)
        throw ConfigError(where + ": expected a positive integer");
    return static_cast<std::size_t>(j.get<std::int64_t>());
}

std::vector<double> as_number_array(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where + ": expected an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(as_number(v, where));
    return out;
}

FiniteConfig parse_finite(const json& params) {
    check_keys(params, "params(finite)", {"alphas", "phases"});
    FiniteConfig c;
    c.phases = as_number_array(require_key(params, "params(finite)", "phases"),
                               "params.phases");
    if (c.phases.empty()) throw ConfigError("params.phases: must not be empty");
    if (params.contains("alphas")) {
        c.alphas = as_number_array(params["alphas"], "params.alphas");
        if (c.alphas.size() != c.phases.size())
            throw ConfigError("params.alphas: length must match params.phases");
    } else {
        c.alphas.assign(c.phases.size(),
                        1.0 / std::sqrt(static_cast<double>(c.phases.size())));
    }
    return c;
}

QuadratureConfig parse_quadrature(const json& params) {
    check_keys(params, "params(quadrature)", {"m", "x_min", "dx", "phi", "poly", "swap_xp"});
    QuadratureConfig c;
    c.grid.m = as_positive_int(require_key(params, "params(quadrature)", "m"), "params.m");
    c.grid.dx = as_number(require_key(params, "params(quadrature)", "dx"), "params.dx");
    if (params.contains("x_min")) c.grid.x_min = as_number(params["x_min"], "params.x_min");
    if (params.contains("swap_xp")) {
        if (!params["swap_xp"].is_boolean())
            throw ConfigError("params.swap_xp: expected a boolean");
        c.swap_xp = params["swap_xp"].get<bool>();
    }
    const bool has_phi = params.contains("phi");
    const bool has_poly = params.contains("poly");
    if (has_phi == has_poly)
        throw ConfigError("params(quadrature): provide exactly one of \"phi\" or \"poly\"");
    if (has_phi) {
        c.phi = as_number_array(params["phi"], "params.phi");
        if (c.phi.size() != c.grid.m)
            throw ConfigError("params.phi: need one sample per grid point");
    } else {
        const auto poly = as_number_array(params["poly"], "params.poly");
        if (poly.empty() || poly.size() > 3)
            throw ConfigError("params.poly: expected 1 to 3 coefficients");
        const double a = poly.size() > 0 ? poly[0] : 0.0;
        const double b = poly.size() > 1 ? poly[1] : 0.0;
        const double g = poly.size() > 2 ? poly[2] : 0.0;
        c.grid.validate();
        c.phi = polynomial_phase(c.grid, a, b, g);
    }
    return c;
}

PhaseProtocolConfig parse_phase(const json& params) {
    check_keys(params, "params(phase)", {"r", "n_meas", "cutoff", "phi_n", "kerr"});
    PhaseProtocolConfig c;
    c.r = as_number(require_key(params, "params(phase)", "r"), "params.r");
    c.n_meas = as_positive_int(require_key(params, "params(phase)", "n_meas"), "params.n_meas");
    c.cutoff = params.contains("cutoff")
                   ? as_positive_int(params["cutoff"], "params.cutoff")
                   : default_phase_cutoff(c.r, c.n_meas);
    const bool has_list = params.contains("phi_n");
    const bool has_kerr = params.contains("kerr");
    if (has_list == has_kerr)
        throw ConfigError("params(phase): provide exactly one of \"phi_n\" or \"kerr\"");
    if (has_list) {
        c.phi_n = as_number_array(params["phi_n"], "params.phi_n");
    } else {
        const json& kerr = params["kerr"];
        require_object(kerr, "params.kerr");
        check_keys(kerr, "params.kerr", {"chi", "theta"});
        const double chi = kerr.contains("chi") ? as_number(kerr["chi"], "params.kerr.chi") : 0.0;
        const double theta =
            kerr.contains("theta") ? as_number(kerr["theta"], "params.kerr.theta") : 0.0;
        c.phi_n = PhaseProtocolConfig::kerr_phases(chi, theta, c.cutoff);
    }
    return c;
}

PhotonFiniteConfig parse_photon_finite(const json& params) {
    check_keys(params, "params(photon_finite)", {"n", "phases"});
    PhotonFiniteConfig c;
    c.n = as_positive_int(require_key(params, "params(photon_finite)", "n"), "params.n");
    c.phases = as_number_array(require_key(params, "params(photon_finite)", "phases"),
                               "params.phases");
    if (c.phases.size() != c.n)
        throw ConfigError("params.phases: need exactly n entries");
    return c;
}

PhotonCutoffConfig parse_photon_cutoff(const json& params) {
    check_keys(params, "params(photon_cutoff)", {"coeffs", "resource_dim", "cutoff"});
    PhotonCutoffConfig c;
    const json& coeffs = require_key(params, "params(photon_cutoff)", "coeffs");
    if (!coeffs.is_array() || coeffs.empty())
        throw ConfigError("params.coeffs: expected a non-empty array of [n, re, im] triples");
    int max_abs_index = 0;
    double weight = 0.0;
    for (const auto& entry : coeffs) {
        if (!entry.is_array() || entry.size() != 3)
            throw ConfigError("params.coeffs: each entry must be [n, re, im]");
        if (!entry[0].is_number_integer())
            throw ConfigError("params.coeffs: index must be an integer");
        const int n = entry[0].get<int>();
        const double re = as_number(entry[1], "params.coeffs");
        const double im = as_number(entry[2], "params.coeffs");
        if (c.coeffs.count(n)) throw ConfigError("params.coeffs: duplicate index");
        c.coeffs[n] = Complex{re, im};
        max_abs_index = std::max(max_abs_index, std::abs(n));
        weight += re * re + im * im;
    }
    if (std::abs(weight - 1.0) > kDefaultTol)
        throw ConfigError("params.coeffs: coefficients must satisfy sum |f_n|^2 = 1");
    c.resource_dim = as_positive_int(
        require_key(params, "params(photon_cutoff)", "resource_dim"), "params.resource_dim");
    c.cutoff = params.contains("cutoff") ? as_positive_int(params["cutoff"], "params.cutoff")
                                         : static_cast<std::size_t>(max_abs_index) + 1;
    return c;
}

ProtocolConfig parse_protocol(const std::string& name, const json& params) {
    require_object(params, "params");
    if (name == "finite") return parse_finite(params);
    if (name == "quadrature") return parse_quadrature(params);
    if (name == "phase") return parse_phase(params);
    if (name == "photon_finite") return parse_photon_finite(params);
    if (name == "photon_cutoff") return parse_photon_cutoff(params);
    throw ConfigError("protocol: unknown protocol \"" + name + "\"");
}

RunMode parse_mode(const json& mode) {
    if (mode.is_string()) {
        if (mode.get<std::string>() != "enumerate")
            throw ConfigError("mode: expected \"enumerate\" or {\"sample\": ...}");
        return EnumerateMode{};
    }
    require_object(mode, "mode");
    check_keys(mode, "mode", {"sample"});
    const json& sample = require_key(mode, "mode", "sample");
    require_object(sample, "mode.sample");
    check_keys(sample, "mode.sample", {"runs", "seed"});
    SampleMode s;
    s.runs = as_positive_int(require_key(sample, "mode.sample", "runs"), "mode.sample.runs");
    const json& seed = require_key(sample, "mode.sample", "seed");
    if (!seed.is_number_integer() || seed.get<std::int64_t>() < 0)
        throw ConfigError("mode.sample.seed: expected a nonnegative integer");
    s.seed = seed.get<std::uint64_t>();
    return s;
}

OutputSpec parse_output(const json& output) {
    require_object(output, "output");
    check_keys(output, "output", {"format", "path"});
    OutputSpec spec;
    const json& format = require_key(output, "output", "format");
    if (!format.is_string() ||
        (format.get<std::string>() != "csv" && format.get<std::string>() != "json"))
        throw ConfigError("output.format: expected \"csv\" or \"json\"");
    spec.format = format.get<std::string>();
    const json& path = require_key(output, "output", "path");
    if (!path.is_string() || path.get<std::string>().empty())
        throw ConfigError("output.path: expected a non-empty string");
    spec.path = path.get<std::string>();
    return spec;
}

json parse_document(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw ConfigError("config: malformed JSON");
    return doc;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config: cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
    const json doc = parse_document(json_text);
    require_object(doc, "config");
    check_keys(doc, "config", {"protocol", "params", "mode", "output"});
    const json& protocol = require_key(doc, "config", "protocol");
    if (!protocol.is_string()) throw ConfigError("protocol: expected a string");

    RunConfig config;
    config.protocol =
        parse_protocol(protocol.get<std::string>(), require_key(doc, "config", "params"));
    config.mode = parse_mode(require_key(doc, "config", "mode"));
    config.output = parse_output(require_key(doc, "config", "output"));

    // Surface protocol-level validation errors before execution.
    outcome_distribution(config.protocol);
    return config;
}

RunConfig load_run_config(const std::string& path) {
    return parse_run_config(read_file(path));
}

SweepConfig parse_sweep_config(const std::string& json_text) {
    const json doc = parse_document(json_text);
    require_object(doc, "config");
    check_keys(doc, "config", {"protocol", "params", "sweep", "output"});
    const json& protocol = require_key(doc, "config", "protocol");
    if (!protocol.is_string()) throw ConfigError("protocol: expected a string");

    SweepConfig config;
    config.protocol_name = protocol.get<std::string>();

    const json& sweep = require_key(doc, "config", "sweep");
    require_object(sweep, "sweep");
    check_keys(sweep, "sweep", {"axis", "values"});
    const json& axis = require_key(sweep, "sweep", "axis");
    if (!axis.is_string()) throw ConfigError("sweep.axis: expected a string");
    config.sweep.axis = axis.get<std::string>();
    config.sweep.values = as_number_array(require_key(sweep, "sweep", "values"), "sweep.values");
    if (config.sweep.values.empty()) throw ConfigError("sweep.values: axis must not be empty");

    // The axis field may be absent from params; insert a placeholder so the
    // base config parses, then overwrite per grid point.
    json params = require_key(doc, "config", "params");
    require_object(params, "params");
    const std::string& ax = config.sweep.axis;
    const double first = config.sweep.values.front();
    if (config.protocol_name == "phase" && (ax == "n_meas" || ax == "r")) {
        params[ax] = (ax == "n_meas") ? json(static_cast<std::int64_t>(first)) : json(first);
        if (params.contains("kerr") && params["kerr"].is_object()) {
            const json& kerr = params["kerr"];
            config.phase_kerr = {
                kerr.contains("chi") ? as_number(kerr["chi"], "params.kerr.chi") : 0.0,
                kerr.contains("theta") ? as_number(kerr["theta"], "params.kerr.theta") : 0.0};
        }
    } else if (config.protocol_name == "quadrature" && ax == "m") {
        if (!params.contains("poly"))
            throw ConfigError("sweep(quadrature): sweeping m requires polynomial phases");
        config.quad_poly = as_number_array(params["poly"], "params.poly");
        params[ax] = static_cast<std::int64_t>(first);
    } else if (config.protocol_name == "photon_cutoff" && ax == "resource_dim") {
        params[ax] = static_cast<std::int64_t>(first);
    } else {
        throw ConfigError("sweep.axis: unsupported axis \"" + ax + "\" for protocol \"" +
                          config.protocol_name + "\"");
    }
    if (ax == "r" ? first < 0.0 : (first < 1.0 || first != std::floor(first)))
        throw ConfigError("sweep.values: invalid first grid point for axis \"" + ax + "\"");
    config.base = parse_protocol(config.protocol_name, params);
    config.output = parse_output(require_key(doc, "config", "output"));
    return config;
}

SweepConfig load_sweep_config(const std::string& path) {
    return parse_sweep_config(read_file(path));
}

ProtocolConfig sweep_point(const SweepConfig& config, double value) {
    ProtocolConfig point = config.base;
    const std::string& ax = config.sweep.axis;
    if (auto* phase = std::get_if<PhaseProtocolConfig>(&point)) {
        if (ax == "n_meas") {
            if (value < 1.0 || value != std::floor(value))
                throw ConfigError("sweep.values: n_meas must be a positive integer");
            phase->n_meas = static_cast<std::size_t>(value);
        } else {
            if (value < 0.0) throw ConfigError("sweep.values: r must be nonnegative");
            phase->r = value;
        }
        phase->cutoff = default_phase_cutoff(phase->r, phase->n_meas);
        if (config.phase_kerr.size() == 2)
            phase->phi_n = PhaseProtocolConfig::kerr_phases(config.phase_kerr[0],
                                                            config.phase_kerr[1], phase->cutoff);
        return point;
    }
    if (auto* quad = std::get_if<QuadratureConfig>(&point)) {
        if (value < 2.0 || value != std::floor(value))
            throw ConfigError("sweep.values: m must be an integer >= 2");
        quad->grid.m = static_cast<std::size_t>(value);
        const auto& poly = config.quad_poly;
        quad->phi = polynomial_phase(quad->grid, poly.size() > 0 ? poly[0] : 0.0,
                                     poly.size() > 1 ? poly[1] : 0.0,
                                     poly.size() > 2 ? poly[2] : 0.0);
        return point;
    }
    if (auto* photon = std::get_if<PhotonCutoffConfig>(&point)) {
        if (value < 1.0 || value != std::floor(value))
            throw ConfigError("sweep.values: resource_dim must be a positive integer");
        photon->resource_dim = static_cast<std::size_t>(value);
        return point;
    }
    throw ConfigError("sweep: unsupported protocol");
}

namespace {

double batch_success(const RunBatch& batch) {
    double discard_mass = 0.0;
    for (const auto& t : batch.runs)
        if (t.discarded) discard_mass += t.probability;
    return 1.0 - discard_mass;
}

double batch_min_fidelity(const RunBatch& batch, const ProtocolConfig& config) {
    // For the cutoff protocol only the window-complete outcomes are exact by
    // construction; the metric tracks those.
    std::size_t lo = 0;
    std::size_t hi = batch.runs.empty() ? 0 : batch.runs.size() - 1;
    if (const auto* photon = std::get_if<PhotonCutoffConfig>(&config)) {
        const OutcomeRange range = photon_cutoff_retained_range(*photon);
        if (range.empty) return 0.0;
        lo = range.first;
        hi = range.last;
    }
    double min_fid = 1.0;
    bool any = false;
    for (const auto& t : batch.runs) {
        if (t.discarded || t.outcome < lo || t.outcome > hi) continue;
        min_fid = std::min(min_fid, t.fidelity);
        any = true;
    }
    return any ? min_fid : 0.0;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
    std::vector<SweepRow> rows;
    rows.reserve(config.sweep.values.size());
    for (double value : config.sweep.values) {
        const ProtocolConfig point = sweep_point(config, value);
        const RunBatch batch = execute(point, EnumerateMode{});
        SweepRow row;
        row.axis = config.sweep.axis;
        row.value = value;
        if (const auto* phase = std::get_if<PhaseProtocolConfig>(&point)) {
            row.metric = "success_probability";
            row.analytic = success_probability(phase->r, phase->n_meas);
            row.simulated = batch_success(batch);
        } else {
            row.metric = "min_fidelity";
            row.analytic = 1.0;
            row.simulated = batch_min_fidelity(batch, point);
        }
        row.abs_deviation = std::abs(row.simulated - row.analytic);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace rsp
