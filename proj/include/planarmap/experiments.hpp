#pragma once

#include <cstddef>
#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

#include "planarmap/pattern.hpp"
#include "planarmap/sample.hpp"

namespace planarmap {

/// Everything that determines a run. Serialized into every report.
struct ExperimentConfig {
  std::string subcommand;
  std::size_t n = 0;
  std::size_t replicates = 0;
  std::uint64_t seed = 1;
  int radius = 1;
  std::string pattern_file;
  std::string host_file;
  Model model = Model::Map;
  std::string out;
  std::size_t workers = 1;
  double significance = 1e-3;
  bool long_tests = true;
};

nlohmann::json to_json(const ExperimentConfig& c);

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
  bool gate = true;  // informational checks do not affect the verdict
};

nlohmann::json to_json(const Check& c);

struct ExperimentReport {
  ExperimentConfig config;
  nlohmann::json results = nlohmann::json::object();  // numerical content
  std::string rows_csv;                                // per-replicate rows
  std::vector<Check> checks;
  double wall_seconds = 0;

  bool passed() const;
  /// config, results and checks; everything except timing.
  nlohmann::json numerical() const;
  nlohmann::json to_json() const;
};

/// Stream-independent seed for a sub-experiment.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

ExperimentReport run_enumerate(const ExperimentConfig& cfg);
ExperimentReport run_sample(const ExperimentConfig& cfg);
/// With cfg.host_file set: Z and s in that host. Otherwise gamma at cfg.n.
ExperimentReport run_pattern(const ExperimentConfig& cfg, const RootedMap& pattern);
ExperimentReport run_gamma(const ExperimentConfig& cfg, const RootedMap& pattern,
                           const std::vector<std::size_t>& n_list);
ExperimentReport run_reweighting(const ExperimentConfig& cfg);
ExperimentReport run_liskovets(const ExperimentConfig& cfg);
ExperimentReport run_clt(const ExperimentConfig& cfg);
ExperimentReport run_series_verify(const ExperimentConfig& cfg);

/// Sampler uniformity: chi-square of canonical codes against the uniform
/// law on the enumerated table (maps) or on the rooted quadrangulations
/// with n faces.
ExperimentReport run_uniformity(const ExperimentConfig& cfg,
                                SamplerFault fault = SamplerFault::None);

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  nlohmann::json numbers = nlohmann::json::object();
  double seconds = 0;
  bool passed() const;
};

struct VerifyOptions {
  std::uint64_t seed = 20240601;
  std::size_t workers = 1;
  bool full_scale = true;  // false: reduced replicate counts, same code paths
  bool long_tests = true;  // include n = 5 enumeration
};

/// Runs one acceptance criterion (1..9).
CriterionResult run_criterion(int id, const VerifyOptions& opts);
std::vector<CriterionResult> run_verify_all(const VerifyOptions& opts,
                                            const std::vector<int>& only = {});

/// Numerical sections of the stochastic experiments at reduced scale,
/// serialized; used to compare runs across seeds and worker counts.
std::string numerical_digest(const VerifyOptions& opts);

}  // namespace planarmap
