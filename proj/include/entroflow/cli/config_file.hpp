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
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace entroflow::cli {

/// Flat key-value configuration with one section per command:
///
///   # comment
///   [cycle]
///   partition = 2x2
///   n_cycles  = 20
///
/// Sections and keys are checked against a fixed schema; anything unknown is
/// a ConfigInvalid error naming the file and line.
class ConfigFile {
 public:
  static ConfigFile parse(const std::string& text, const std::string& origin = "<string>");
  static ConfigFile load(const std::filesystem::path& path);

  /// Empty when the section is absent.
  const std::map<std::string, std::string>& section(const std::string& name) const;
  bool has(const std::string& section, const std::string& key) const;

  std::optional<std::string> get_string(const std::string& section, const std::string& key) const;
  std::optional<double> get_double(const std::string& section, const std::string& key) const;
  std::optional<std::uint64_t> get_uint(const std::string& section, const std::string& key) const;
  /// Accepts "2x2x2" or "2, 2, 2".
  std::optional<std::vector<std::size_t>> get_uint_list(const std::string& section,
                                                        const std::string& key) const;
  std::optional<std::vector<double>> get_double_list(const std::string& section,
                                                     const std::string& key) const;

  /// Directory relative paths inside the file are resolved against.
  const std::filesystem::path& base_dir() const noexcept { return base_dir_; }
  const std::string& origin() const noexcept { return origin_; }

 private:
  [[noreturn]] void fail(const std::string& section, const std::string& key,
                         const std::string& why) const;

  std::string origin_;
  std::filesystem::path base_dir_;
  std::map<std::string, std::map<std::string, std::string>> sections_;
  std::map<std::string, std::size_t> lines_;
};

/// Allowed keys per section.
const std::map<std::string, std::vector<std::string>>& config_schema();

}  // namespace entroflow::cli
