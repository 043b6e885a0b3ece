#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dyadica {

// One suite run: a [section] of the config file. Unknown keys are rejected.
struct SuiteConfig {
  std::string suite;
  int depth = 6;
  std::vector<int> depths;  // sweep suites (packing, perf); empty means {depth}
  int instances = 1;
  std::uint64_t seed = 1;
  std::vector<double> t_values = {1.0};
  double delta = 0.5;
  std::vector<double> alphas = {-0.4, -0.6};
  double p = 2.0;
  int restarts = 16;
  std::string c4_method = "power";  // exact | power | auto
  int mc_samples = 256;
  std::string out;
  std::string sidecar;
  bool timings = false;

  double tol_identity = 1e-10;
  double tol_transfer = 1e-8;
  double tol_necessity = 1e-8;
  double k_upper = 10.0;
  double k_lower = 10.0;
  double perf_report_budget_ms = 1000.0;
  double perf_scaling_max = 1.3;

  std::vector<int> depth_list() const { return depths.empty() ? std::vector<int>{depth} : depths; }
};

struct ExperimentConfig {
  int threads = 0;  // 0 = hardware concurrency; DYADICA_THREADS caps either way
  std::uint64_t default_seed = 1;
  std::vector<SuiteConfig> suites;
};

extern const std::vector<std::string> kSuiteNames;

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

}  // namespace dyadica
