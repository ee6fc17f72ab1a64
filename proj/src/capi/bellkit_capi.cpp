// SPDX-FileCopyrightText: 2026 The bellkit authors
//
// SPDX-License-Identifier: Apache-2.0

#include "bellkit/bellkit.h"

#include <exception>
#include <memory>
#include <new>
#include <string>

#include "bellkit/dispatch.hpp"
#include "bellkit/error.hpp"
#include "bellkit/parallel.hpp"
#include "bellkit/report.hpp"

struct bk_report {
    bellkit::Report report;
    std::string json;
    std::string csv;
    std::string scratch;
};

namespace {

thread_local std::string g_last_error = "{}";

bk_status status_of(bellkit::ErrorCode code)
{
    using bellkit::ErrorCode;
    switch (code) {
    case ErrorCode::NotUnitary: return BK_NOT_UNITARY;
    case ErrorCode::NotDthRoot: return BK_NOT_DTH_ROOT;
    case ErrorCode::DimensionMismatch: return BK_DIMENSION_MISMATCH;
    case ErrorCode::InvalidMeasurement: return BK_INVALID_MEASUREMENT;
    case ErrorCode::ScenarioMismatch: return BK_SCENARIO_MISMATCH;
    case ErrorCode::TooLarge: return BK_TOO_LARGE;
    case ErrorCode::SignalingDetected: return BK_SIGNALING_DETECTED;
    case ErrorCode::OutOfRange: return BK_OUT_OF_RANGE;
    case ErrorCode::NotBinaryObservable: return BK_NOT_BINARY_OBSERVABLE;
    case ErrorCode::NotDValuedObservable: return BK_NOT_D_VALUED_OBSERVABLE;
    case ErrorCode::NotSelfAdjoint: return BK_NOT_SELF_ADJOINT;
    case ErrorCode::NotMaximal: return BK_NOT_MAXIMAL;
    case ErrorCode::SupportMismatch: return BK_SUPPORT_MISMATCH;
    case ErrorCode::NoConvergence: return BK_NO_CONVERGENCE;
    case ErrorCode::UnknownCommand: return BK_UNKNOWN_COMMAND;
    case ErrorCode::InvalidParameter: return BK_INVALID_PARAMETER;
    case ErrorCode::IoError: return BK_IO_ERROR;
    }
    return BK_INTERNAL;
}

bk_status fail(bk_status status, const std::string& message, const std::string& field = {},
               const std::string& constraint = {})
{
    bellkit::Json j{{"code", bk_status_string(status)}, {"message", message}};
    if (!field.empty()) {
        j["field"] = field;
        j["constraint"] = constraint;
    }
    g_last_error = j.dump();
    return status;
}

// Runs body, translating exceptions into status codes.
template <class F>
bk_status guarded(F&& body)
{
    try {
        body();
        g_last_error = "{}";
        return BK_OK;
    } catch (const bellkit::ParameterError& e) {
        return fail(BK_INVALID_PARAMETER, e.what(), e.field(), e.constraint());
    } catch (const bellkit::Error& e) {
        return fail(status_of(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(BK_TOO_LARGE, "out of memory");
    } catch (const std::exception& e) {
        return fail(BK_INTERNAL, e.what());
    } catch (...) {
        return fail(BK_INTERNAL, "unknown exception");
    }
}

}  // namespace

extern "C" {

const char* bk_version(void)
{
    return bellkit::kVersion;
}

const char* bk_status_string(bk_status status)
{
    switch (status) {
    case BK_OK: return "Ok";
    case BK_NULL_ARGUMENT: return "NullArgument";
    case BK_INTERNAL: return "Internal";
    default: break;
    }
    for (int c = 0; c <= static_cast<int>(bellkit::ErrorCode::IoError); ++c) {
        const auto code = static_cast<bellkit::ErrorCode>(c);
        if (status_of(code) == status) {
            return bellkit::to_string(code).data();
        }
    }
    return "Unknown";
}

const char* bk_commands(void)
{
    static const std::string list = [] {
        std::string out;
        for (const auto& name : bellkit::commands()) {
            out += name;
            out.push_back('\0');
        }
        return out;
    }();
    return list.c_str();
}

void bk_set_threads(size_t threads)
{
    bellkit::set_thread_count(threads);
}

size_t bk_threads(void)
{
    return bellkit::thread_count();
}

bk_status bk_run(const char* command, const char* params_json, bk_report** out)
{
    if (out == nullptr || command == nullptr) {
        return fail(BK_NULL_ARGUMENT, "command and out must be non-null");
    }
    *out = nullptr;
    return guarded([&] {
        bellkit::Json params = bellkit::Json::object();
        if (params_json != nullptr && *params_json != '\0') {
            try {
                params = bellkit::Json::parse(params_json);
            } catch (const bellkit::Json::parse_error& e) {
                throw bellkit::ParameterError("parameters", std::string("valid JSON (") +
                                                                e.what() + ")");
            }
        }
        auto handle = std::make_unique<bk_report>();
        handle->report = bellkit::dispatch(command, params);
        handle->report.timestamp = bellkit::utc_timestamp();
        handle->json = handle->report.to_json();
        *out = handle.release();
    });
}

bk_status bk_report_parse(const char* json, bk_report** out)
{
    if (out == nullptr || json == nullptr) {
        return fail(BK_NULL_ARGUMENT, "json and out must be non-null");
    }
    *out = nullptr;
    return guarded([&] {
        auto handle = std::make_unique<bk_report>();
        handle->report = bellkit::Report::from_json(json);
        handle->json = handle->report.to_json();
        *out = handle.release();
    });
}

const char* bk_report_json(const bk_report* report)
{
    return report ? report->json.c_str() : nullptr;
}

const char* bk_report_csv(bk_report* report)
{
    if (report == nullptr) {
        return nullptr;
    }
    report->csv = report->report.to_csv();
    return report->csv.c_str();
}

const char* bk_report_value(bk_report* report, const char* key)
{
    if (report == nullptr || key == nullptr || !report->report.payload.contains(key)) {
        return nullptr;
    }
    report->scratch = report->report.payload.at(key).at("value").dump();
    return report->scratch.c_str();
}

bk_status bk_report_write(const bk_report* report, const char* path, bk_format format)
{
    if (report == nullptr || path == nullptr) {
        return fail(BK_NULL_ARGUMENT, "report and path must be non-null");
    }
    return guarded([&] {
        report->report.write(path, format == BK_FORMAT_CSV ? bellkit::Format::Csv
                                                           : bellkit::Format::Json);
    });
}

void bk_report_free(bk_report* report)
{
    delete report;
}

const char* bk_last_error(void)
{
    return g_last_error.c_str();
}

}  // extern "C"
