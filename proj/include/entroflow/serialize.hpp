// Copyright 2026 The Entroflow Authors
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

#include <nlohmann/json.hpp>

#include "entroflow/density.hpp"

namespace entroflow {

/// Operator files:
///
///   {
///     "schema": "entroflow.operator.v1",
///     "rows": 2,
///     "cols": 2,
///     "entries": [[re, im], [re, im], ...]   // row-major, rows*cols pairs
///   }
///
/// Values are plain JSON decimal numbers written with round-trip precision.
inline constexpr const char* kOperatorSchema = "entroflow.operator.v1";

nlohmann::json matrix_to_json(const Matrix& m);
/// Throws ConfigInvalid describing the first schema violation.
Matrix matrix_from_json(const nlohmann::json& j);

void write_matrix_file(const std::filesystem::path& path, const Matrix& m);
/// Throws ConfigInvalid; the message names the file.
Matrix read_matrix_file(const std::filesystem::path& path);

}  // namespace entroflow
