// SPDX-FileCopyrightText: 2026 The bellkit authors
//
// SPDX-License-Identifier: Apache-2.0

#include "bellkit/report.hpp"

#include <array>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>
#include <utility>

#include "bellkit/error.hpp"

namespace bellkit {

namespace {

constexpr std::array<std::pair<Claim, std::string_view>, 14> kClaimNames{{
    {Claim::QuantumMaximum, "quantum-maximum"},
    {Claim::LocalBound, "local-bound"},
    {Claim::SosCertificate, "sos-certificate"},
    {Claim::OperatorIdentity, "operator-identity"},
    {Claim::SelfTest, "self-test"},
    {Claim::WitnessCorrelation, "witness-correlation"},
    {Claim::ProofIdentity, "proof-identity"},
    {Claim::Truncation, "truncation"},
    {Claim::TernaryRelations, "ternary-relations"},
    {Claim::EmbezzlementIdentity, "embezzlement-identity"},
    {Claim::EmbezzlementCorrelation, "embezzlement-correlation"},
    {Claim::SchmidtSpectrum, "schmidt-spectrum"},
    {Claim::SeesawOptimum, "seesaw-optimum"},
    {Claim::Diagnostic, "diagnostic"},
}};

template <class T>
T field(const Json& j, const char* key)
{
    if (!j.contains(key)) {
        throw ParameterError(key, "present in report metadata");
    }
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception&) {
        throw ParameterError(key, "well-typed");
    }
}

}  // namespace

std::string_view to_string(Claim claim) noexcept
{
    for (const auto& [c, name] : kClaimNames) {
        if (c == claim) {
            return name;
        }
    }
    return "diagnostic";
}

Claim claim_from_string(std::string_view name)
{
    for (const auto& [c, n] : kClaimNames) {
        if (n == name) {
            return c;
        }
    }
    throw ParameterError("claim", "a known claim tag");
}

Format format_from_string(std::string_view name)
{
    if (name == "json") {
        return Format::Json;
    }
    if (name == "csv") {
        return Format::Csv;
    }
    throw ParameterError("format", "one of json, csv");
}

Json table_json(const std::vector<std::string>& columns,
                const std::vector<std::vector<double>>& rows)
{
    Json out{{"columns", columns}, {"rows", Json::array()}};
    for (const auto& row : rows) {
        out["rows"].push_back(row);
    }
    return out;
}

Json correlation_table(const Correlation& p)
{
    const Scenario& sc = p.scenario();
    Json rows = Json::array();
    for (std::size_t s = 0; s < sc.inputs_a; ++s) {
        for (std::size_t t = 0; t < sc.inputs_b; ++t) {
            for (std::size_t a = 0; a < sc.outputs_a; ++a) {
                for (std::size_t b = 0; b < sc.outputs_b; ++b) {
                    rows.push_back(Json::array({s, t, a, b, p(a, b, s, t)}));
                }
            }
        }
    }
    return Json{{"columns", {"s", "t", "a", "b", "p"}},
                {"scenario", {sc.inputs_a, sc.inputs_b, sc.outputs_a, sc.outputs_b}},
                {"rows", std::move(rows)}};
}

Json spectrum_json(const SchmidtSpectrum& s)
{
    return Json{{"coefficients", s.coefficients}, {"rank", s.rank()}};
}

void Report::add(const std::string& key, Claim claim, Json value)
{
    payload[key] = Json{{"claim", std::string(to_string(claim))}, {"value", std::move(value)}};
}

const Json& Report::value(const std::string& key) const
{
    if (!payload.contains(key)) {
        throw ParameterError(key, "present in report payload");
    }
    return payload.at(key).at("value");
}

Json Report::to_json_value() const
{
    return Json{{"metadata",
                 {{"version", version},
                  {"command", command},
                  {"parameters", parameters},
                  {"timestamp", timestamp},
                  {"boundary_policies", boundary_policies},
                  {"csv_table", csv_table}}},
                {"payload", payload}};
}

std::string Report::to_json() const
{
    return to_json_value().dump(2) + "\n";
}

Report Report::from_json(std::string_view text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParameterError("report", std::string("valid JSON (") + e.what() + ")");
    }
    if (!j.is_object() || !j.contains("metadata") || !j.contains("payload")) {
        throw ParameterError("report", "an object with metadata and payload");
    }
    const Json& m = j.at("metadata");
    Report r;
    r.version = field<std::string>(m, "version");
    r.command = field<std::string>(m, "command");
    r.parameters = m.value("parameters", Json::object());
    r.timestamp = field<std::string>(m, "timestamp");
    r.boundary_policies = field<std::vector<std::string>>(m, "boundary_policies");
    r.csv_table = field<std::string>(m, "csv_table");
    r.payload = j.at("payload");
    for (const auto& [key, entry] : r.payload.items()) {
        if (!entry.is_object() || !entry.contains("claim") || !entry.contains("value")) {
            throw ParameterError(key, "an entry with claim and value");
        }
        claim_from_string(entry.at("claim").get<std::string>());
    }
    return r;
}

std::string Report::to_csv() const
{
    std::ostringstream out;
    out << "# version: " << version << "\n";
    out << "# command: " << command << "\n";
    out << "# parameters: " << parameters.dump() << "\n";
    out << "# timestamp: " << timestamp << "\n";
    for (const auto& policy : boundary_policies) {
        out << "# boundary_policy: " << policy << "\n";
    }
    if (csv_table.empty()) {
        return out.str();
    }
    const Json& table = value(csv_table);
    out << "# table: " << csv_table << "\n";
    const auto& columns = table.at("columns");
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out << (i ? "," : "") << columns[i].get<std::string>();
    }
    out << "\n";
    for (const auto& row : table.at("rows")) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << row[i].dump();
        }
        out << "\n";
    }
    return out.str();
}

void Report::write(const std::string& path, Format format) const
{
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
    }
    file << (format == Format::Json ? to_json() : to_csv());
    file.flush();
    if (!file) {
        throw Error(ErrorCode::IoError, "write to " + path + " failed");
    }
}

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace bellkit
