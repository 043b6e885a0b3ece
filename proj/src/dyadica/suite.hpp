#pragma once

#include <string>
#include <vector>

#include "dyadica/config.hpp"

namespace dyadica {

struct SuiteOutcome {
  std::string suite;
  std::string out_path;
  std::int64_t rows = 0;
  std::int64_t failed_rows = 0;
};

struct RunResult {
  std::vector<SuiteOutcome> outcomes;
  std::int64_t total_failures() const {
    std::int64_t n = 0;
    for (const auto& o : outcomes) n += o.failed_rows;
    return n;
  }
};

// Runs every suite section, writing one CSV per section (plus the optional
// JSON sidecar with witnesses). Deterministic per (config, seed): instances
// draw from hashed per-instance streams and rows are emitted in instance
// order regardless of the worker pool schedule.
RunResult run_suites(const ExperimentConfig& config);

RunResult run_config_file(const std::string& path);

// Thread count honoring the DYADICA_THREADS cap.
int effective_threads(int requested);

}  // namespace dyadica
