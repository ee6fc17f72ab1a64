// SPDX-FileCopyrightText: 2026 The bellkit authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "bellkit/report.hpp"

namespace bellkit {

/// Subcommand names accepted by dispatch().
const std::vector<std::string>& commands();

/// Runs one pipeline. `parameters` is a JSON object keyed by flag name
/// (without dashes, '-' replaced by '_'); missing keys take their defaults and
/// the resolved set is stored in the report metadata. The timestamp is left
/// empty for the caller.
/// Throws UnknownCommand, InvalidParameter, or any module error.
Report dispatch(const std::string& command, const Json& parameters);

}  // namespace bellkit
