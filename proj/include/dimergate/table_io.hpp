// Copyright 2026 The dimergate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "dimergate/sweeps.hpp"

namespace dimergate {

/// 17 significant digits, enough to round-trip any double.
std::string format_double(double v);

/// CSV dialect: `# key = value` provenance lines, then a header row, then
/// comma-separated rows; LF line endings.
void write_csv(std::ostream& os, const SweepTable& table);
std::string to_csv(const SweepTable& table);

/// {"provenance": {...}, "columns": [...], "rows": [[...], ...]}
std::string to_json(const SweepTable& table);

/// Inverse of write_csv.
SweepTable read_csv(std::istream& is);

/// Writes to a temporary sibling and renames it over `path`, so a failed
/// run never leaves a partial file behind.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace dimergate
