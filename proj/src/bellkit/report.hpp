// SPDX-FileCopyrightText: 2026 The bellkit authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Run reports: metadata plus a payload of tagged values, emitted as canonical
// JSON (sorted keys, shortest round-trip floats) or as CSV.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bellkit/bell_scenario.hpp"

namespace bellkit {

using Json = nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";

/// Which published statement a payload entry checks.
enum class Claim {
    QuantumMaximum,
    LocalBound,
    SosCertificate,
    OperatorIdentity,
    SelfTest,
    WitnessCorrelation,
    ProofIdentity,
    Truncation,
    TernaryRelations,
    EmbezzlementIdentity,
    EmbezzlementCorrelation,
    SchmidtSpectrum,
    SeesawOptimum,
    Diagnostic,  // plumbing values with no published counterpart
};

std::string_view to_string(Claim claim) noexcept;
/// Throws InvalidParameter for unknown names.
Claim claim_from_string(std::string_view name);

enum class Format { Json, Csv };

/// Throws InvalidParameter.
Format format_from_string(std::string_view name);

/// {"columns": [...], "rows": [[...], ...]}.
Json table_json(const std::vector<std::string>& columns,
                const std::vector<std::vector<double>>& rows);
/// Rows (s, t, a, b, p) in table order.
Json correlation_table(const Correlation& p);
Json spectrum_json(const SchmidtSpectrum& s);

struct Report {
    std::string version = kVersion;
    std::string command;
    Json parameters = Json::object();
    std::string timestamp;
    std::vector<std::string> boundary_policies;
    std::string csv_table;  // payload key of the table emitted by to_csv(), may be empty
    Json payload = Json::object();

    /// payload[key] = {"claim": ..., "value": ...}.
    void add(const std::string& key, Claim claim, Json value);
    const Json& value(const std::string& key) const;

    Json to_json_value() const;
    std::string to_json() const;
    /// Throws InvalidParameter on malformed input.
    static Report from_json(std::string_view text);

    /// '#'-prefixed metadata lines, then the csv_table rows with a header.
    std::string to_csv() const;

    /// Throws IoError.
    void write(const std::string& path, Format format) const;
};

/// Current UTC time, ISO 8601 to the second.
std::string utc_timestamp();

}  // namespace bellkit
