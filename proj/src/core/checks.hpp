// Copyright 2026 The ellforge Authors
// SPDX-License-Identifier: Apache-2.0

// Named check suites over the module invariants.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/series_json.hpp"

namespace ellforge {

inline constexpr std::uint64_t kDefaultSeed = 20260101;

struct CheckItem {
  std::string name;
  bool passed = false;
  bool informational = false;  // reported, not counted
  Json measured = Json::object();
};

struct CheckReport {
  std::string suite;
  bool passed = false;
  std::uint64_t seed = kDefaultSeed;
  std::optional<double> tol;  // primary tolerance, when the suite has one
  Json params = Json::object();
  std::vector<CheckItem> items;
  double runtime_s = 0;
};

struct CheckOptions {
  std::uint64_t seed = kDefaultSeed;
  std::optional<double> tol;
};

const std::vector<std::string>& check_suites();
std::string check_description(const std::string& suite);
// Unknown suite names are input errors.
CheckReport run_check(const std::string& suite, const CheckOptions& opts = {});

Json to_json(const CheckReport& r, bool timing = false);
std::string to_text(const CheckReport& r, bool timing = false);

}  // namespace ellforge
