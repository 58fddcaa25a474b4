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

#include "entroflow/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "entroflow/cli/csv.hpp"
#include "entroflow/composite.hpp"
#include "entroflow/errors.hpp"
#include "entroflow/inequalities.hpp"
#include "entroflow/serialize.hpp"

namespace entroflow::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr std::uint64_t kDefaultSeed = 1;

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

// Runs body(i) for i in [0, count) on a small thread pool. Results must be
// written to per-index slots so output order is independent of scheduling.
template <typename Body>
void parallel_for(std::size_t count, Body body) {
  const std::size_t workers =
      std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) body(i);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

std::uint64_t master_seed(const ConfigFile& file, const std::string& section,
                          std::optional<std::uint64_t> seed_override) {
  if (seed_override) return *seed_override;
  return file.get_uint(section, "seed").value_or(kDefaultSeed);
}

fs::path resolve(const ConfigFile& file, const std::string& value) {
  const fs::path p(value);
  return p.is_absolute() ? p : file.base_dir() / p;
}

Matrix real_matrix_file(const fs::path& path) {
  Matrix m = read_matrix_file(path);
  if (m.imag().cwiseAbs().maxCoeff() != 0.0) {
    throw Error(ErrorCode::ConfigInvalid, "matrix file " + path.string() + " has non-zero imaginary parts");
  }
  return m;
}

DoublyStochasticMatrix doubly_stochastic_file(const fs::path& path, const ToleranceSet& tol) {
  const Matrix m = real_matrix_file(path);
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::ConfigInvalid, "matrix file " + path.string() + " is not square");
  }
  const auto n = static_cast<std::size_t>(m.rows());
  std::vector<double> entries;
  entries.reserve(n * n);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) entries.push_back(m(i, j).real());
  }
  try {
    return DoublyStochasticMatrix::validate(n, std::move(entries), tol);
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigInvalid, "matrix file " + path.string() + ": " + e.what());
  }
}

std::size_t as_size(std::uint64_t v) { return static_cast<std::size_t>(v); }

/// Collects outputs and writes manifest.json last.
class RunContext {
 public:
  RunContext(std::string command, const CommandOptions& options, std::uint64_t seed)
      : command_(std::move(command)), options_(options), seed_(seed), started_(utc_now()) {
    std::error_code ec;
    fs::create_directories(options.out_dir, ec);
    if (ec) throw Error(ErrorCode::ConfigInvalid, "cannot create " + options.out_dir.string() + ": " + ec.message());
  }

  fs::path output(const std::string& name) {
    outputs_.push_back(name);
    return options_.out_dir / name;
  }

  int finish(int exit_code) {
    const json manifest{
        {"command", command_},
        {"config", options_.config.string()},
        {"master_seed", seed_},
        {"tool_version", kToolVersion},
        {"started_at", started_},
        {"finished_at", utc_now()},
        {"outputs", outputs_},
        {"exit_code", exit_code},
    };
    write_file_atomic(options_.out_dir / "manifest.json", manifest.dump(2) + "\n");
    return exit_code;
  }

 private:
  std::string command_;
  const CommandOptions& options_;
  std::uint64_t seed_;
  std::string started_;
  std::vector<std::string> outputs_;
};

template <typename Command>
int guarded(std::ostream& err, Command command) {
  try {
    return command();
  } catch (const Error& e) {
    err << "entroflow: " << e.what() << '\n';
    return e.code() == ErrorCode::ConfigInvalid ? kExitUsage : kExitViolation;
  } catch (const std::exception& e) {
    err << "entroflow: " << e.what() << '\n';
    return kExitUsage;
  }
}

struct MarginRow {
  std::size_t instance = 0;
  std::size_t n = 0;
  double margin = 0.0;
  std::uint64_t seed = 0;
};

}  // namespace

std::size_t max_dim_from_env() {
  const char* value = std::getenv("ENTROFLOW_MAX_DIM");
  if (value == nullptr || *value == '\0') return kDefaultMaxDim;
  char* end = nullptr;
  const unsigned long long parsed = std::strtoull(value, &end, 10);
  if (*end != '\0' || parsed == 0 || value[0] == '-') {
    throw Error(ErrorCode::ConfigInvalid, std::string("ENTROFLOW_MAX_DIM must be a positive integer, got '") + value + "'");
  }
  return static_cast<std::size_t>(parsed);
}

ToleranceSet parse_tolerances(const ConfigFile& file) {
  ToleranceSet tol;
  const std::pair<const char*, double*> fields[] = {
      {"tol_herm", &tol.herm},         {"tol_trace", &tol.trace}, {"tol_unitary", &tol.unitary},
      {"tol_psd", &tol.psd},           {"tol_spec", &tol.spec},   {"tol_conserve", &tol.conserve},
      {"tol_entropy", &tol.entropy},
  };
  for (const auto& [key, target] : fields) {
    if (const auto v = file.get_double("tolerances", key)) *target = *v;
  }
  tol.check();
  return tol;
}

LemmaSweepConfig parse_lemmas(const ConfigFile& file, std::optional<std::uint64_t> seed_override) {
  LemmaSweepConfig cfg;
  cfg.seed = master_seed(file, "lemmas", seed_override);
  if (const auto all = file.get_uint("lemmas", "instances")) {
    cfg.lemma1_instances = cfg.lemma2_instances = cfg.lemma3_instances = cfg.lemma4_instances = as_size(*all);
  }
  cfg.lemma1_instances = as_size(file.get_uint("lemmas", "lemma1_instances").value_or(cfg.lemma1_instances));
  cfg.lemma2_instances = as_size(file.get_uint("lemmas", "lemma2_instances").value_or(cfg.lemma2_instances));
  cfg.lemma3_instances = as_size(file.get_uint("lemmas", "lemma3_instances").value_or(cfg.lemma3_instances));
  cfg.lemma4_instances = as_size(file.get_uint("lemmas", "lemma4_instances").value_or(cfg.lemma4_instances));
  cfg.max_n = as_size(file.get_uint("lemmas", "max_n").value_or(cfg.max_n));
  if (cfg.max_n == 0) throw Error(ErrorCode::ConfigInvalid, file.origin() + ": [lemmas] max_n must be >= 1");
  if (const auto path = file.get_string("lemmas", "lemma3_matrix_file")) {
    cfg.lemma3_matrix_file = resolve(file, *path);
  }
  cfg.tolerances = parse_tolerances(file);
  return cfg;
}

CycleConfig parse_cycle(const ConfigFile& file, std::optional<std::uint64_t> seed_override,
                        std::size_t max_dim, std::uint64_t* master_out) {
  const std::string s = "cycle";
  const std::uint64_t master = master_seed(file, s, seed_override);
  if (master_out != nullptr) *master_out = master;
  CycleConfig cfg;
  cfg.max_dim = max_dim;
  cfg.tolerances = parse_tolerances(file);
  if (const auto dims = file.get_uint_list(s, "partition")) cfg.partition = Partition(*dims);
  cfg.n_cycles = as_size(file.get_uint(s, "n_cycles").value_or(cfg.n_cycles));
  cfg.hamiltonian_seed = file.get_uint(s, "hamiltonian_seed").value_or(RngStream::derive_seed(master, 0));
  cfg.coupling_strength = file.get_double(s, "coupling").value_or(cfg.coupling_strength);
  cfg.evolution_time = file.get_double(s, "evolution_time").value_or(cfg.evolution_time);
  cfg.k_b = file.get_double(s, "k_B").value_or(cfg.k_b);
  const std::string initial = file.get_string(s, "initial").value_or("random_product");
  if (initial == "random_product") {
    cfg.initial.kind = InitialState::Kind::RandomProduct;
    cfg.initial.seed = file.get_uint(s, "initial_seed").value_or(RngStream::derive_seed(master, 1));
    cfg.initial.rank = as_size(file.get_uint(s, "initial_rank").value_or(1));
  } else if (initial == "given") {
    const auto path = file.get_string(s, "initial_file");
    if (!path) throw Error(ErrorCode::ConfigInvalid, file.origin() + ": [cycle] initial = given needs initial_file");
    const fs::path resolved = resolve(file, *path);
    const Matrix m = read_matrix_file(resolved);
    try {
      cfg.initial.kind = InitialState::Kind::Given;
      cfg.initial.state = DensityOperator::validate(m, cfg.tolerances);
    } catch (const Error& e) {
      throw Error(ErrorCode::ConfigInvalid, "operator file " + resolved.string() + ": " + e.what());
    }
  } else {
    throw Error(ErrorCode::ConfigInvalid,
                file.origin() + ": [cycle] initial must be random_product or given, got '" + initial + "'");
  }
  cfg.check();
  return cfg;
}

ClassicalRunConfig parse_classical(const ConfigFile& file, std::optional<std::uint64_t> seed_override,
                                   std::size_t max_dim) {
  const std::string s = "classical";
  ClassicalRunConfig run;
  run.seed = master_seed(file, s, seed_override);
  ChainConfig& cfg = run.chain;
  cfg.tolerances = parse_tolerances(file);
  cfg.n_states = as_size(file.get_uint(s, "n_states").value_or(cfg.n_states));
  if (cfg.n_states == 0 || cfg.n_states > max_dim) {
    throw Error(ErrorCode::ConfigInvalid, file.origin() + ": [classical] n_states must be in [1, " +
                                              std::to_string(max_dim) + "]");
  }
  cfg.n_steps = as_size(file.get_uint(s, "n_steps").value_or(cfg.n_steps));
  run.uniform_tol = file.get_double(s, "uniform_tol").value_or(run.uniform_tol);

  const std::string transition = file.get_string(s, "transition").value_or("random");
  using Kind = ChainConfig::Transition::Kind;
  if (transition == "random") {
    cfg.transition.kind = Kind::Random;
    cfg.transition.k_terms = as_size(file.get_uint(s, "k_terms").value_or(cfg.transition.k_terms));
    cfg.transition.seed = file.get_uint(s, "transition_seed").value_or(RngStream::derive_seed(run.seed, 0));
  } else if (transition == "identity" || transition == "uniform") {
    cfg.transition.kind = Kind::Fixed;
    cfg.transition.matrix = transition == "identity" ? DoublyStochasticMatrix::identity(cfg.n_states)
                                                     : DoublyStochasticMatrix::uniform(cfg.n_states);
  } else if (transition == "fixed") {
    const auto path = file.get_string(s, "transition_file");
    if (!path) throw Error(ErrorCode::ConfigInvalid, file.origin() + ": [classical] transition = fixed needs transition_file");
    cfg.transition.kind = Kind::Fixed;
    cfg.transition.matrix = doubly_stochastic_file(resolve(file, *path), cfg.tolerances);
  } else {
    throw Error(ErrorCode::ConfigInvalid, file.origin() + ": [classical] transition must be random, fixed, "
                                                          "identity or uniform, got '" + transition + "'");
  }

  const std::string initial = file.get_string(s, "initial").value_or("point:0");
  try {
    if (initial == "uniform") {
      cfg.initial = ProbabilityVector::uniform(cfg.n_states);
    } else if (initial == "random") {
      RngStream rng(RngStream::derive_seed(run.seed, 1));
      cfg.initial = random_probability_vector(cfg.n_states, rng);
    } else if (initial.rfind("point:", 0) == 0) {
      const std::string index = initial.substr(6);
      std::size_t at = 0;
      const auto [ptr, ec] = std::from_chars(index.data(), index.data() + index.size(), at);
      if (ec != std::errc() || ptr != index.data() + index.size()) throw Error(ErrorCode::ConfigInvalid, "bad point index");
      cfg.initial = ProbabilityVector::point(cfg.n_states, at);
    } else {
      const auto values = file.get_double_list(s, "initial");
      cfg.initial = ProbabilityVector::validate(*values, cfg.tolerances);
    }
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigInvalid, file.origin() + ": [classical] initial '" + initial + "': " + e.what());
  }
  try {
    cfg.check();
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigInvalid, file.origin() + ": " + e.what());
  }
  return run;
}

ConserveConfig parse_conserve(const ConfigFile& file, std::optional<std::uint64_t> seed_override,
                              std::size_t max_dim) {
  const std::string s = "conserve";
  ConserveConfig cfg;
  cfg.seed = master_seed(file, s, seed_override);
  cfg.tolerances = parse_tolerances(file);
  if (const auto dims = file.get_uint_list(s, "dims")) cfg.dims = *dims;
  for (std::size_t d : cfg.dims) {
    if (d == 0 || d > max_dim) {
      throw Error(ErrorCode::ConfigInvalid, file.origin() + ": [conserve] dim " + std::to_string(d) +
                                                " outside [1, " + std::to_string(max_dim) + "]");
    }
  }
  cfg.trials = as_size(file.get_uint(s, "trials").value_or(cfg.trials));
  const std::string unitary = file.get_string(s, "unitary").value_or("random");
  if (unitary != "random" && unitary != "identity") {
    throw Error(ErrorCode::ConfigInvalid, file.origin() + ": [conserve] unitary must be random or identity");
  }
  cfg.identity_unitary = unitary == "identity";
  return cfg;
}

int cmd_lemmas(const CommandOptions& options, std::ostream& err) {
  return guarded(err, [&] {
    const ConfigFile file = ConfigFile::load(options.config);
    const LemmaSweepConfig cfg = parse_lemmas(file, options.seed);
    std::optional<DoublyStochasticMatrix> fixed;
    if (cfg.lemma3_matrix_file) fixed = doubly_stochastic_file(*cfg.lemma3_matrix_file, cfg.tolerances);

    RunContext run("lemmas", options, cfg.seed);
    const std::size_t counts[4] = {cfg.lemma1_instances, cfg.lemma2_instances, cfg.lemma3_instances,
                                   cfg.lemma4_instances};
    json summary = json::object();
    bool all_ok = true;

    for (std::size_t lemma = 1; lemma <= 4; ++lemma) {
      const std::uint64_t lemma_seed = RngStream::derive_seed(cfg.seed, lemma);
      const std::size_t random_count = counts[lemma - 1];
      const std::size_t fixed_count = (lemma == 3 && fixed) ? random_count : 0;
      std::vector<MarginRow> rows(random_count + fixed_count);

      parallel_for(rows.size(), [&](std::size_t i) {
        const std::uint64_t seed = RngStream::derive_seed(lemma_seed, i);
        RngStream rng(seed);
        MarginRow& row = rows[i];
        row.instance = i;
        row.seed = seed;
        switch (lemma) {
          case 1: {
            // Half the draws near the minimum, half spread over a wide range.
            const double x = rng.uniform() < 0.5 ? 2.0 * rng.uniform() : -10.0 * std::log1p(-rng.uniform());
            row.n = 1;
            row.margin = lemma1_margin(x);
            break;
          }
          case 2: {
            const std::size_t n = 1 + rng.index(cfg.max_n);
            std::vector<double> w(n);
            for (double& v : w) v = rng.uniform() < 0.2 ? 0.0 : rng.uniform() * std::exp(2.0 * rng.normal());
            const ProbabilityVector x = random_probability_vector(n, rng, 0.2);
            row.n = n;
            row.margin = lemma2_margin(w, x);
            break;
          }
          case 3: {
            if (i < random_count) {
              const std::size_t n = 1 + rng.index(cfg.max_n);
              const ProbabilityVector w = random_probability_vector(n, rng, 0.2);
              const DoublyStochasticMatrix t = random_doubly_stochastic(n, 1 + rng.index(2 * n), rng);
              row.n = n;
              row.margin = lemma3_margin(w, t, cfg.tolerances);
            } else {
              const ProbabilityVector w = random_probability_vector(fixed->size(), rng, 0.2);
              row.n = fixed->size();
              row.margin = lemma3_margin(w, *fixed, cfg.tolerances);
            }
            break;
          }
          default: {
            const std::size_t rows_n = 1 + rng.index(cfg.max_n);
            const std::size_t cols_n = 1 + rng.index(cfg.max_n);
            const ProbabilityVector flat = random_probability_vector(rows_n * cols_n, rng, 0.2);
            row.n = rows_n * cols_n;
            row.margin = lemma4_margin(JointDistribution::validate({rows_n, cols_n}, flat.entries(), cfg.tolerances));
            break;
          }
        }
      });

      const std::string name = "lemma" + std::to_string(lemma);
      CsvWriter csv(run.output(name + ".csv"), {"lemma", "instance", "n", "margin", "seed"});
      double min_margin = INFINITY;
      std::size_t violations = 0;
      for (const auto& row : rows) {
        csv.cell(std::uint64_t{lemma}).cell(std::uint64_t{row.instance}).cell(std::uint64_t{row.n});
        csv.cell(row.margin).cell(row.seed);
        csv.end_row();
        min_margin = std::min(min_margin, row.margin);
        if (row.margin < -cfg.tolerances.entropy) {
          if (violations < 10) {
            err << "lemma " << lemma << " instance " << row.instance << " (n=" << row.n << ", seed "
                << row.seed << "): margin " << format_double(row.margin) << " below -"
                << format_double(cfg.tolerances.entropy) << '\n';
          }
          ++violations;
        }
      }
      csv.close();
      if (violations > 0) all_ok = false;
      summary[name] = {{"instances", rows.size()},
                       {"min_margin", rows.empty() ? json(nullptr) : json(min_margin)},
                       {"violations", violations}};
    }
    summary["passed"] = all_ok;
    write_file_atomic(run.output("summary.json"), summary.dump(2) + "\n");
    if (!all_ok) err << "entroflow lemmas: margin violations found (see summary.json)\n";
    return run.finish(all_ok ? kExitOk : kExitViolation);
  });
}

int cmd_cycle(const CommandOptions& options, std::ostream& err) {
  return guarded(err, [&] {
    const ConfigFile file = ConfigFile::load(options.config);
    std::uint64_t seed = 0;
    const CycleConfig cfg = parse_cycle(file, options.seed, options.max_dim, &seed);
    RunContext run("cycle", options, seed);
    const std::vector<CycleRecord> records = run_cycle_experiment(cfg);

    CsvWriter csv(run.output("cycle.csv"),
                  {"cycle", "info_total", "entropy_sum", "correlation_info", "delta_entropy"});
    double min_delta = 0.0;
    double max_drift = 0.0;
    for (std::size_t k = 1; k < records.size(); ++k) {
      const CycleRecord& r = records[k];
      csv.cell(std::uint64_t{r.cycle_index}).cell(r.info_total).cell(r.entropy_sum);
      csv.cell(r.correlation_info_before_collapse).cell(r.delta_entropy);
      csv.end_row();
      min_delta = std::min(min_delta, r.delta_entropy);
      max_drift = std::max(max_drift, std::abs(r.info_drift));
    }
    csv.close();

    const bool monotone = min_delta >= -cfg.tolerances.entropy;
    const double ceiling = cfg.k_b * std::log(static_cast<double>(cfg.partition.total_dim()));
    const json summary{
        {"monotone", monotone},
        {"max_violation", std::max(0.0, -min_delta)},
        {"initial_entropy", records.front().entropy_sum},
        {"final_entropy", records.back().entropy_sum},
        {"ceiling", ceiling},
        {"max_info_drift", max_drift},
        {"n_cycles", cfg.n_cycles},
        {"partition", cfg.partition.dims()},
        {"hamiltonian_seed", cfg.hamiltonian_seed},
    };
    write_file_atomic(run.output("summary.json"), summary.dump(2) + "\n");
    if (!monotone) {
      err << "entroflow cycle: entropy_sum decreased by " << format_double(-min_delta) << '\n';
    }
    return run.finish(monotone ? kExitOk : kExitViolation);
  });
}

int cmd_classical(const CommandOptions& options, std::ostream& err) {
  return guarded(err, [&] {
    const ConfigFile file = ConfigFile::load(options.config);
    const ClassicalRunConfig cfg = parse_classical(file, options.seed, options.max_dim);
    RunContext run("classical", options, cfg.seed);
    const std::vector<ChainStep> steps = run_classical_chain(cfg.chain);

    std::vector<std::string> header{"step"};
    for (std::size_t i = 0; i < cfg.chain.n_states; ++i) header.push_back("w" + std::to_string(i));
    header.push_back("shannon_info");
    header.push_back("margin");
    CsvWriter csv(run.output("classical.csv"), header);
    double min_margin = 0.0;
    for (const auto& s : steps) {
      csv.cell(std::uint64_t{s.step});
      for (double w : s.entries) csv.cell(w);
      csv.cell(s.shannon_info).cell(s.margin);
      csv.end_row();
      min_margin = std::min(min_margin, s.margin);
    }
    csv.close();

    const bool ok = min_margin >= -cfg.chain.tolerances.entropy;
    const auto settled = steps_to_uniform(steps, cfg.uniform_tol);
    const json summary{
        {"margins_ok", ok},
        {"min_margin", min_margin},
        {"final_shannon_info", steps.back().shannon_info},
        {"uniform_shannon_info", -std::log(static_cast<double>(cfg.chain.n_states))},
        {"steps_to_uniform", settled ? json(*settled) : json(nullptr)},
        {"uniform_tol", cfg.uniform_tol},
    };
    write_file_atomic(run.output("summary.json"), summary.dump(2) + "\n");
    if (!ok) err << "entroflow classical: lemma 3 margin " << format_double(min_margin) << " below tolerance\n";
    return run.finish(ok ? kExitOk : kExitViolation);
  });
}

int cmd_conserve(const CommandOptions& options, std::ostream& err) {
  return guarded(err, [&] {
    const ConfigFile file = ConfigFile::load(options.config);
    const ConserveConfig cfg = parse_conserve(file, options.seed, options.max_dim);
    RunContext run("conserve", options, cfg.seed);

    const std::size_t total = cfg.dims.size() * cfg.trials;
    std::vector<double> deltas(total, 0.0);
    parallel_for(total, [&](std::size_t k) {
      const std::size_t dim = cfg.dims[k / cfg.trials];
      RngStream rng = RngStream::derive(RngStream::derive_seed(cfg.seed, dim), k % cfg.trials);
      const DensityOperator rho = random_density(dim, dim, rng, cfg.tolerances);
      const UnitaryOperator u = cfg.identity_unitary ? UnitaryOperator::identity(dim)
                                                     : random_unitary(dim, rng, cfg.tolerances);
      const DensityOperator out = evolve(rho, u, cfg.tolerances);
      deltas[k] = std::abs(information(out, cfg.tolerances) - information(rho, cfg.tolerances));
    });

    CsvWriter csv(run.output("conserve.csv"), {"dim", "trial", "delta_info"});
    double max_delta = 0.0;
    json per_dim = json::object();
    for (std::size_t k = 0; k < total; ++k) {
      const std::size_t dim = cfg.dims[k / cfg.trials];
      csv.cell(std::uint64_t{dim}).cell(std::uint64_t{k % cfg.trials}).cell(deltas[k]);
      csv.end_row();
      max_delta = std::max(max_delta, deltas[k]);
      const std::string key = std::to_string(dim);
      per_dim[key] = std::max(per_dim.value(key, 0.0), deltas[k]);
    }
    csv.close();
    const bool ok = max_delta <= cfg.tolerances.conserve;
    const json summary{{"conserved", ok},
                       {"max_delta_info", max_delta},
                       {"max_delta_info_by_dim", per_dim},
                       {"tol_conserve", cfg.tolerances.conserve}};
    write_file_atomic(run.output("summary.json"), summary.dump(2) + "\n");
    if (!ok) err << "entroflow conserve: max |delta I| " << format_double(max_delta) << " exceeds tolerance\n";
    return run.finish(ok ? kExitOk : kExitViolation);
  });
}

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entropy-growth simulator and inequality checker", "entroflow"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  CommandOptions options;
  std::uint64_t seed = 0;
  std::string config;
  std::string out_dir = options.out_dir.string();

  struct Entry {
    const char* name;
    const char* help;
    int (*run)(const CommandOptions&, std::ostream&);
  };
  const Entry entries[] = {
      {"lemmas", "Randomized sweeps of the four classical inequalities", &cmd_lemmas},
      {"cycle", "Evolve/measure cycles on a partitioned quantum system", &cmd_cycle},
      {"classical", "Doubly stochastic chain on a probability vector", &cmd_classical},
      {"conserve", "Information conservation under random unitaries", &cmd_conserve},
  };
  std::vector<std::pair<CLI::App*, const Entry*>> subcommands;
  std::vector<CLI::Option*> seed_options;
  for (const auto& entry : entries) {
    CLI::App* sub = app.add_subcommand(entry.name, entry.help);
    sub->add_option("--config", config, "Configuration file")->required();
    seed_options.push_back(sub->add_option("--seed", seed, "Master seed (overrides the config)"));
    sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
    subcommands.emplace_back(sub, &entry);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    options.max_dim = max_dim_from_env();
  } catch (const Error& e) {
    err << "entroflow: " << e.what() << '\n';
    return kExitUsage;
  }
  options.config = config;
  options.out_dir = out_dir;
  for (std::size_t i = 0; i < subcommands.size(); ++i) {
    if (subcommands[i].first->parsed()) {
      if (seed_options[i]->count() > 0) options.seed = seed;
      return subcommands[i].second->run(options, err);
    }
  }
  return kExitUsage;
}

}  // namespace entroflow::cli
