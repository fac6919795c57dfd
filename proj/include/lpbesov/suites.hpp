#pragma once

#include <string>
#include <vector>

#include "lpbesov/config.hpp"

namespace lpbesov {

struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;  // measured values, human readable
};

struct SuiteResult {
  std::string name;
  bool ran = false;
  bool pass = false;
  std::string error;  // non-empty when the suite threw
  std::vector<CriterionResult> criteria;
  std::vector<std::string> files;  // outputs, relative to the output directory
};

/// Run one suite against the configured group. Throws only on programmer
/// error; numerical and configuration failures are reported in the result.
SuiteResult run_suite(const std::string& name, const ExperimentConfig& cfg);

/// Run cfg.suites with crash isolation, write <output_dir>/summary.json,
/// return the process exit code: 0 iff every suite ran and passed.
int run_all(const ExperimentConfig& cfg);

}  // namespace lpbesov
