#include "rsp/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace rsp {

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string message_kind(const ProtocolTranscript& t) {
    if (t.discarded) return "";
    return t.message.kind == ClassicalMessage::Kind::Integer ? "integer" : "real";
}

std::string message_value(const ProtocolTranscript& t) {
    if (t.discarded) return "";
    if (t.message.kind == ClassicalMessage::Kind::Integer)
        return std::to_string(t.message.integer);
    return format_g17(t.message.real);
}

std::string json_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string batch_csv(const RunBatch& batch) {
    std::ostringstream os;
    os << "outcome_id,message_kind,message_value,probability,fidelity,discarded,dropped_weight\n";
    for (const auto& t : batch.runs) {
        os << t.outcome << ',' << message_kind(t) << ',' << message_value(t) << ','
           << format_g17(t.probability) << ',' << (t.discarded ? "" : format_g17(t.fidelity))
           << ',' << (t.discarded ? "true" : "false") << ','
           << (t.dropped_weight ? format_g17(*t.dropped_weight) : "") << '\n';
    }
    return os.str();
}

std::string batch_json(const RunBatch& batch) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"protocol\": " << json_string(batch.protocol) << ",\n";
    os << "  \"config\": " << json_string(batch.config) << ",\n";
    if (batch.enumerated) {
        os << "  \"mode\": \"enumerate\",\n";
    } else {
        os << "  \"mode\": {\"sample\": {\"runs\": " << batch.runs.size()
           << ", \"seed\": " << batch.seed << "}},\n";
    }
    os << "  \"rows\": [\n";
    for (std::size_t i = 0; i < batch.runs.size(); ++i) {
        const auto& t = batch.runs[i];
        os << "    {\"outcome_id\": " << t.outcome << ", \"message_kind\": ";
        if (t.discarded) {
            os << "null, \"message_value\": null";
        } else if (t.message.kind == ClassicalMessage::Kind::Integer) {
            os << "\"integer\", \"message_value\": " << t.message.integer;
        } else {
            os << "\"real\", \"message_value\": " << format_g17(t.message.real);
        }
        os << ", \"probability\": " << format_g17(t.probability);
        os << ", \"fidelity\": " << (t.discarded ? "null" : format_g17(t.fidelity));
        os << ", \"discarded\": " << (t.discarded ? "true" : "false");
        os << ", \"dropped_weight\": "
           << (t.dropped_weight ? format_g17(*t.dropped_weight) : "null");
        os << '}' << (i + 1 < batch.runs.size() ? "," : "") << '\n';
    }
    os << "  ],\n";
    os << "  \"summary\": {\n";
    os << "    \"runs\": " << batch.summary.run_count << ",\n";
    os << "    \"outcome_histogram\": [";
    for (std::size_t i = 0; i < batch.summary.histogram.size(); ++i)
        os << batch.summary.histogram[i] << (i + 1 < batch.summary.histogram.size() ? ", " : "");
    os << "],\n";
    os << "    \"mean_fidelity\": " << format_g17(batch.summary.mean_fidelity) << ",\n";
    os << "    \"min_fidelity\": " << format_g17(batch.summary.min_fidelity) << ",\n";
    os << "    \"discard_rate\": " << format_g17(batch.summary.discard_rate) << "\n";
    os << "  }\n";
    os << "}\n";
    return os.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "axis,value,metric,analytic,simulated,abs_deviation\n";
    for (const auto& r : rows)
        os << r.axis << ',' << format_g17(r.value) << ',' << r.metric << ','
           << format_g17(r.analytic) << ',' << format_g17(r.simulated) << ','
           << format_g17(r.abs_deviation) << '\n';
    return os.str();
}

std::string sweep_json(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "{\n  \"rows\": [\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        os << "    {\"axis\": " << json_string(r.axis) << ", \"value\": " << format_g17(r.value)
           << ", \"metric\": " << json_string(r.metric)
           << ", \"analytic\": " << format_g17(r.analytic)
           << ", \"simulated\": " << format_g17(r.simulated)
           << ", \"abs_deviation\": " << format_g17(r.abs_deviation) << '}'
           << (i + 1 < rows.size() ? "," : "") << '\n';
    }
    os << "  ]\n}\n";
    return os.str();
}

void atomic_write(const std::string& path, const std::string& content) {
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("atomic_write: cannot open " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("atomic_write: write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

}  // namespace rsp
