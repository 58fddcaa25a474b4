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

namespace entroflow {

/// Numerical slack used by validation and by the property checks. The
/// defaults are sized for double precision at total dimension <= 64.
struct ToleranceSet {
  double herm = 1e-10;
  double trace = 1e-10;
  double unitary = 1e-10;
  double psd = 1e-9;
  double spec = 1e-9;
  double conserve = 1e-9;
  double entropy = 1e-9;

  /// Throws ConfigInvalid unless every field is strictly positive.
  void check() const;
};

/// Boltzmann constant in J/K. The library works in natural units (k_B = 1)
/// unless a caller passes this explicitly.
inline constexpr double kBoltzmannSI = 1.380649e-23;

}  // namespace entroflow
