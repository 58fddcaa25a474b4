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

#include "entroflow/cli/config_file.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "entroflow/errors.hpp"

namespace entroflow::cli {
namespace {

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string current;
  for (char c : value) {
    if (c == ',' || c == 'x' || c == 'X') {
      out.push_back(trim(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  out.push_back(trim(current));
  return out;
}

template <typename T>
std::optional<T> parse_number(const std::string& text) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (text.empty()) return std::nullopt;
  if constexpr (std::is_floating_point_v<T>) {
    // from_chars for double is in GCC 11; strtod would depend on the locale.
    const auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
    if (ec != std::errc() || ptr != last) return std::nullopt;
  } else {
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) return std::nullopt;
  }
  return value;
}

std::string line_key(const std::string& section, const std::string& key) { return section + "." + key; }

}  // namespace

const std::map<std::string, std::vector<std::string>>& config_schema() {
  static const std::map<std::string, std::vector<std::string>> schema{
      {"tolerances",
       {"tol_herm", "tol_trace", "tol_unitary", "tol_psd", "tol_spec", "tol_conserve", "tol_entropy"}},
      {"lemmas",
       {"seed", "instances", "lemma1_instances", "lemma2_instances", "lemma3_instances",
        "lemma4_instances", "max_n", "lemma3_matrix_file"}},
      {"cycle",
       {"seed", "partition", "n_cycles", "hamiltonian_seed", "coupling", "evolution_time", "initial",
        "initial_seed", "initial_rank", "initial_file", "k_B"}},
      {"classical",
       {"seed", "n_states", "n_steps", "transition", "k_terms", "transition_seed", "transition_file",
        "initial", "uniform_tol"}},
      {"conserve", {"seed", "dims", "trials", "unitary"}},
  };
  return schema;
}

ConfigFile ConfigFile::parse(const std::string& text, const std::string& origin) {
  ConfigFile file;
  file.origin_ = origin;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  std::size_t line_no = 0;
  const auto& schema = config_schema();
  auto error = [&](const std::string& why) {
    throw Error(ErrorCode::ConfigInvalid, origin + ":" + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') error("malformed section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (!schema.contains(section)) error("unknown section [" + section + "]");
      file.sections_[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) error("expected key = value");
    if (section.empty()) error("key outside of any section");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    const auto& allowed = schema.at(section);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      error("unknown key '" + key + "' in [" + section + "]");
    }
    if (file.sections_[section].contains(key)) error("duplicate key '" + key + "'");
    file.sections_[section][key] = value;
    file.lines_[line_key(section, key)] = line_no;
  }
  return file;
}

ConfigFile ConfigFile::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ConfigInvalid, "cannot open config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  ConfigFile file = parse(buffer.str(), path.string());
  file.base_dir_ = path.parent_path();
  return file;
}

const std::map<std::string, std::string>& ConfigFile::section(const std::string& name) const {
  static const std::map<std::string, std::string> empty;
  const auto it = sections_.find(name);
  return it == sections_.end() ? empty : it->second;
}

bool ConfigFile::has(const std::string& section_name, const std::string& key) const {
  return section(section_name).contains(key);
}

void ConfigFile::fail(const std::string& section_name, const std::string& key, const std::string& why) const {
  const auto it = lines_.find(line_key(section_name, key));
  const std::string where = it == lines_.end() ? "" : ":" + std::to_string(it->second);
  throw Error(ErrorCode::ConfigInvalid, origin_ + where + ": [" + section_name + "] " + key + ": " + why);
}

std::optional<std::string> ConfigFile::get_string(const std::string& section_name, const std::string& key) const {
  const auto& s = section(section_name);
  const auto it = s.find(key);
  if (it == s.end()) return std::nullopt;
  return it->second;
}

std::optional<double> ConfigFile::get_double(const std::string& section_name, const std::string& key) const {
  const auto text = get_string(section_name, key);
  if (!text) return std::nullopt;
  const auto value = parse_number<double>(*text);
  if (!value) fail(section_name, key, "expected a number, got '" + *text + "'");
  return value;
}

std::optional<std::uint64_t> ConfigFile::get_uint(const std::string& section_name, const std::string& key) const {
  const auto text = get_string(section_name, key);
  if (!text) return std::nullopt;
  const auto value = parse_number<std::uint64_t>(*text);
  if (!value) fail(section_name, key, "expected a non-negative integer, got '" + *text + "'");
  return value;
}

std::optional<std::vector<std::size_t>> ConfigFile::get_uint_list(const std::string& section_name,
                                                                  const std::string& key) const {
  const auto text = get_string(section_name, key);
  if (!text) return std::nullopt;
  std::vector<std::size_t> out;
  for (const auto& item : split_list(*text)) {
    const auto value = parse_number<std::size_t>(item);
    if (!value) fail(section_name, key, "expected a list of non-negative integers, got '" + *text + "'");
    out.push_back(*value);
  }
  return out;
}

std::optional<std::vector<double>> ConfigFile::get_double_list(const std::string& section_name,
                                                               const std::string& key) const {
  const auto text = get_string(section_name, key);
  if (!text) return std::nullopt;
  std::vector<double> out;
  std::string current;
  std::istringstream in(*text);
  while (std::getline(in, current, ',')) {
    const auto value = parse_number<double>(trim(current));
    if (!value) fail(section_name, key, "expected a comma-separated list of numbers, got '" + *text + "'");
    out.push_back(*value);
  }
  return out;
}

}  // namespace entroflow::cli
