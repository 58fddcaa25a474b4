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

#include "entroflow/errors.hpp"

#include "entroflow/tolerance.hpp"

namespace entroflow {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::TraceNotOne: return "TraceNotOne";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::BadFactorIndex: return "BadFactorIndex";
    case ErrorCode::NegativeInput: return "NegativeInput";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotDoublyStochastic: return "NotDoublyStochastic";
    case ErrorCode::PartitionNotBipartite: return "PartitionNotBipartite";
    case ErrorCode::DegenerateDraw: return "DegenerateDraw";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void ToleranceSet::check() const {
  const std::pair<const char*, double> fields[] = {
      {"tol_herm", herm},       {"tol_trace", trace},     {"tol_unitary", unitary},
      {"tol_psd", psd},         {"tol_spec", spec},       {"tol_conserve", conserve},
      {"tol_entropy", entropy},
  };
  for (const auto& [name, value] : fields) {
    if (!(value > 0.0)) {
      throw Error(ErrorCode::ConfigInvalid, std::string(name) + " must be positive, got " +
                                                std::to_string(value));
    }
  }
}

}  // namespace entroflow
