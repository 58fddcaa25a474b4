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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "entroflow/cli/config_file.hpp"
#include "entroflow/cycle.hpp"
#include "entroflow/tolerance.hpp"

namespace entroflow::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kExitOk = 0, kExitViolation = 1, kExitUsage = 2 };

struct CommandOptions {
  std::filesystem::path config;
  std::optional<std::uint64_t> seed;
  std::filesystem::path out_dir = "entroflow-out";
  std::size_t max_dim = kDefaultMaxDim;
};

/// Reads ENTROFLOW_MAX_DIM; throws ConfigInvalid when it is not a positive integer.
std::size_t max_dim_from_env();

ToleranceSet parse_tolerances(const ConfigFile& file);

struct LemmaSweepConfig {
  std::uint64_t seed = 1;
  std::size_t lemma1_instances = 10000;
  std::size_t lemma2_instances = 10000;
  std::size_t lemma3_instances = 10000;
  std::size_t lemma4_instances = 10000;
  std::size_t max_n = 16;
  /// Optional fixed transition evaluated against every lemma-3 instance vector
  /// of matching size, in addition to the random ones.
  std::optional<std::filesystem::path> lemma3_matrix_file;
  ToleranceSet tolerances;
};

struct ConserveConfig {
  std::uint64_t seed = 1;
  std::vector<std::size_t> dims{2, 4, 8, 16};
  std::size_t trials = 100;
  bool identity_unitary = false;
  ToleranceSet tolerances;
};

struct ClassicalRunConfig {
  std::uint64_t seed = 1;
  ChainConfig chain;
  double uniform_tol = 1e-6;
};

LemmaSweepConfig parse_lemmas(const ConfigFile& file, std::optional<std::uint64_t> seed_override);
CycleConfig parse_cycle(const ConfigFile& file, std::optional<std::uint64_t> seed_override,
                        std::size_t max_dim, std::uint64_t* master_seed = nullptr);
ClassicalRunConfig parse_classical(const ConfigFile& file, std::optional<std::uint64_t> seed_override,
                                   std::size_t max_dim);
ConserveConfig parse_conserve(const ConfigFile& file, std::optional<std::uint64_t> seed_override,
                              std::size_t max_dim);

/// Each command writes its CSV outputs, a JSON summary and manifest.json into
/// options.out_dir and returns 0 (all properties hold), 1 (violation) or 2
/// (usage, config or IO error). Diagnostics go to `err`.
int cmd_lemmas(const CommandOptions& options, std::ostream& err);
int cmd_cycle(const CommandOptions& options, std::ostream& err);
int cmd_classical(const CommandOptions& options, std::ostream& err);
int cmd_conserve(const CommandOptions& options, std::ostream& err);

/// Full command line, as the entroflow executable sees it.
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace entroflow::cli
