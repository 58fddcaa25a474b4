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

#include "entroflow/serialize.hpp"

#include <fstream>
#include <sstream>

#include "entroflow/errors.hpp"

namespace entroflow {

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) entries.push_back({m(i, j).real(), m(i, j).imag()});
  }
  return {{"schema", kOperatorSchema}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
  auto fail = [](const std::string& why) { throw Error(ErrorCode::ConfigInvalid, why); };
  if (!j.is_object()) fail("operator document must be a JSON object");
  if (j.value("schema", std::string()) != kOperatorSchema) {
    fail(std::string("schema must be \"") + kOperatorSchema + "\"");
  }
  if (!j.contains("rows") || !j["rows"].is_number_unsigned() || !j.contains("cols") ||
      !j["cols"].is_number_unsigned()) {
    fail("rows and cols must be non-negative integers");
  }
  const auto rows = j["rows"].get<Eigen::Index>();
  const auto cols = j["cols"].get<Eigen::Index>();
  if (rows == 0 || cols == 0) fail("rows and cols must be positive");
  const auto it = j.find("entries");
  if (it == j.end() || !it->is_array() || static_cast<Eigen::Index>(it->size()) != rows * cols) {
    fail("entries must be an array of rows*cols = " + std::to_string(rows * cols) + " pairs");
  }
  Matrix m(rows, cols);
  Eigen::Index k = 0;
  for (const auto& pair : *it) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      fail("entry " + std::to_string(k) + " is not a [re, im] pair of numbers");
    }
    m(k / cols, k % cols) = Complex(pair[0].get<double>(), pair[1].get<double>());
    ++k;
  }
  return m;
}

void write_matrix_file(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ConfigInvalid, "cannot write " + path.string());
  out << matrix_to_json(m).dump(2) << '\n';
}

Matrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigInvalid, "cannot open operator file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigInvalid, "operator file " + path.string() + ": " + e.what());
  }
  try {
    return matrix_from_json(j);
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigInvalid, "operator file " + path.string() + ": " + e.what());
  }
}

}  // namespace entroflow
