// Copyright 2026 The ellforge Authors
// SPDX-License-Identifier: Apache-2.0

// Text and JSON renderings of the module outputs, keyed by command name.
// Arguments arrive as a JSON object so that the CLI and the C API share one
// code path; malformed arguments are input errors.

#pragma once

#include <string>
#include <vector>

#include "core/numeric.hpp"
#include "core/series_json.hpp"

namespace ellforge {

struct EmitResult {
  std::string out;
  bool passed = true;  // false when the command is a check and it failed
};

// Commands: modforms, sigma, fgl, fermion, euler, derham, sheaf, sectors.
EmitResult emit(const std::string& command, const Json& args, bool json);
const std::vector<std::string>& emit_commands();

// ["re", "im"] with 17 significant digits.
Json complex_to_json(Complex z);
// Also accepts a number or an "a+bi" string.
Complex complex_from_json(const Json& j);
// "a+bi", "a-bi", "bi", "a".
Complex parse_complex(const std::string& s);

}  // namespace ellforge
