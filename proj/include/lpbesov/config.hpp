#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lpbesov/besov.hpp"
#include "lpbesov/calculus.hpp"
#include "lpbesov/group.hpp"

namespace lpbesov {

struct SweepConfig {
  std::vector<double> t = {0.25, 1.0, 4.0, 16.0};
  std::vector<int> alpha = {0, 2};
  std::vector<std::vector<int>> words = {{}, {0}};  // 0-based generator indices
  std::vector<double> p = {1.0, 2.0, kInfinity};
  std::vector<int> j;  // empty = every scale 0..J
};

struct BernsteinTupleConfig {
  std::vector<int> word;  // 0-based
  double sigma = 0.0;
  double p = 2.0;
  double q = 2.0;
};

struct EnsembleConfig {
  int size = 100;
  std::uint64_t seed = 0;
};

struct ExperimentConfig {
  GroupSpec group{GroupFamily::torus, 64, 1};  // roomy enough for every suite
  ApplyMethod method = ApplyMethod::kAuto;
  double tolerance = 1e-8;
  int max_degree = 2000;
  std::vector<std::string> suites = {"growth"};
  std::vector<BesovParams> besov_params = {
      {1.0, 2.0, 2.0, 2.0}, {0.5, 2.0, 1.0, 2.0}, {-1.0, 2.0, 2.0, 1.0},
      {1.0, kInfinity, kInfinity, 2.0}};
  SweepConfig sweeps;
  std::vector<BernsteinTupleConfig> bernstein_tuples = {
      {{0}, 0.0, 1.0, 2.0}, {{}, 1.0, 2.0, 2.0}, {{}, -1.0, 2.0, 2.0},
      {{0}, 0.0, 2.0, kInfinity}};
  EnsembleConfig ensemble;
  std::string output_dir = "reports";
  std::string multiplier = "psi";  // kernel-estimates target
  std::optional<int> norm_order;   // default: growth smoothing order + 1
  int threads = 0;                 // 0 = library default
};

struct Diagnostic {
  std::string field;
  std::string message;
  bool fatal = true;
};

struct LoadedConfig {
  ExperimentConfig config;
  std::vector<Diagnostic> diagnostics;
  bool runnable() const {
    for (const Diagnostic& d : diagnostics)
      if (d.fatal) return false;
    return true;
  }
};

const std::vector<std::string>& known_suites();

/// Parse a JSON config file. Throws std::runtime_error when the file cannot
/// be read or is not valid JSON; semantic problems become diagnostics.
LoadedConfig load_config(const std::string& path);

/// Same, from an in-memory JSON string.
LoadedConfig parse_config_text(const std::string& text);

/// LPB_OUTPUT_DIR replaces output_dir; LPB_THREADS replaces threads.
void apply_env_overrides(ExperimentConfig& cfg);

}  // namespace lpbesov
