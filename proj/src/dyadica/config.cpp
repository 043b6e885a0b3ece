#include "dyadica/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "dyadica/grid.hpp"

namespace dyadica {

const std::vector<std::string> kSuiteNames = {"two-weight", "one-weight", "unweighted", "packing",
                                              "sawyer",     "khintchine", "perf"};

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream stream(s);
  std::string item;
  while (std::getline(stream, item, ',')) {
    item = trim(item);
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double d = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return d;
  } catch (const std::exception&) {
    throw std::runtime_error("config: key '" + key + "' needs a number, got '" + value + "'");
  }
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long i = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return i;
  } catch (const std::exception&) {
    throw std::runtime_error("config: key '" + key + "' needs an integer, got '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "on" || value == "true" || value == "1") return true;
  if (value == "off" || value == "false" || value == "0") return false;
  throw std::runtime_error("config: key '" + key + "' needs on/off, got '" + value + "'");
}

void apply_suite_key(SuiteConfig& suite, const std::string& key, const std::string& value) {
  if (key == "depth") {
    suite.depth = static_cast<int>(parse_int(key, value));
  } else if (key == "depths") {
    suite.depths.clear();
    for (const auto& item : split_list(value)) {
      suite.depths.push_back(static_cast<int>(parse_int(key, item)));
    }
  } else if (key == "instances") {
    suite.instances = static_cast<int>(parse_int(key, value));
  } else if (key == "seed") {
    suite.seed = static_cast<std::uint64_t>(parse_int(key, value));
  } else if (key == "t") {
    suite.t_values.clear();
    for (const auto& item : split_list(value)) suite.t_values.push_back(parse_double(key, item));
  } else if (key == "delta") {
    suite.delta = parse_double(key, value);
  } else if (key == "alphas") {
    suite.alphas.clear();
    for (const auto& item : split_list(value)) suite.alphas.push_back(parse_double(key, item));
  } else if (key == "p") {
    suite.p = parse_double(key, value);
  } else if (key == "restarts") {
    suite.restarts = static_cast<int>(parse_int(key, value));
  } else if (key == "c4_method") {
    if (value != "exact" && value != "power" && value != "auto") {
      throw std::runtime_error("config: c4_method must be exact, power, or auto");
    }
    suite.c4_method = value;
  } else if (key == "mc_samples") {
    suite.mc_samples = static_cast<int>(parse_int(key, value));
  } else if (key == "out") {
    suite.out = value;
  } else if (key == "sidecar") {
    suite.sidecar = value;
  } else if (key == "timings") {
    suite.timings = parse_bool(key, value);
  } else if (key == "tol_identity") {
    suite.tol_identity = parse_double(key, value);
  } else if (key == "tol_transfer") {
    suite.tol_transfer = parse_double(key, value);
  } else if (key == "tol_necessity") {
    suite.tol_necessity = parse_double(key, value);
  } else if (key == "k_upper") {
    suite.k_upper = parse_double(key, value);
  } else if (key == "k_lower") {
    suite.k_lower = parse_double(key, value);
  } else if (key == "perf_report_budget_ms") {
    suite.perf_report_budget_ms = parse_double(key, value);
  } else if (key == "perf_scaling_max") {
    suite.perf_scaling_max = parse_double(key, value);
  } else {
    throw std::runtime_error("config: unknown key '" + key + "' in suite section");
  }
}

void validate_suite(const SuiteConfig& suite) {
  for (int depth : suite.depth_list()) {
    if (depth < Grid::kMinDepth || depth > Grid::kMaxDepth) {
      throw std::runtime_error("config: depth " + std::to_string(depth) + " out of range");
    }
  }
  if (suite.instances < 1) throw std::runtime_error("config: instances must be >= 1");
  if (suite.t_values.empty()) throw std::runtime_error("config: t list must be non-empty");
  if (suite.restarts < 1) throw std::runtime_error("config: restarts must be >= 1");
  if (!(suite.delta >= 0.0 && suite.delta < 1.0)) {
    throw std::runtime_error("config: delta must lie in [0,1)");
  }
  if (suite.out.empty()) throw std::runtime_error("config: suite needs an 'out' path");
  if (suite.suite == "one-weight") {
    for (double t : suite.t_values) {
      if (t > 0.0 && t < 1.0) {
        throw std::runtime_error("config: one-weight suite needs t <= 0 or t >= 1");
      }
    }
  }
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig config;
  SuiteConfig* current = nullptr;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw std::runtime_error("config line " + std::to_string(line_number) +
                                 ": malformed section header");
      }
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (std::find(kSuiteNames.begin(), kSuiteNames.end(), name) == kSuiteNames.end()) {
        throw std::runtime_error("config: unknown suite '" + name + "'");
      }
      SuiteConfig suite;
      suite.suite = name;
      suite.seed = config.default_seed;
      config.suites.push_back(suite);
      current = &config.suites.back();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config line " + std::to_string(line_number) +
                               ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (current == nullptr) {
      if (key == "threads") {
        config.threads = static_cast<int>(parse_int(key, value));
      } else if (key == "seed") {
        config.default_seed = static_cast<std::uint64_t>(parse_int(key, value));
      } else {
        throw std::runtime_error("config: unknown global key '" + key + "'");
      }
      continue;
    }
    apply_suite_key(*current, key, value);
  }
  if (config.suites.empty()) throw std::runtime_error("config: no suite sections");
  for (const SuiteConfig& suite : config.suites) validate_suite(suite);
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  return parse_config(in);
}

}  // namespace dyadica
