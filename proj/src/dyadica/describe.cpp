#include "dyadica/describe.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "dyadica/characteristics.hpp"
#include "dyadica/rng.hpp"
#include "dyadica/weight.hpp"

namespace dyadica {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream stream(line);
  std::string field;
  while (std::getline(stream, field, ',')) fields.push_back(field);
  return fields;
}

std::string characteristic_line(const std::string& name, const WeightCharacteristics& c) {
  std::ostringstream out;
  out << "    " << name << " = " << c.value << "   witness " << to_string(c.witness) << "\n";
  return out.str();
}

}  // namespace

std::string describe_row(const std::string& report_path, std::int64_t row_id) {
  std::ifstream in(report_path);
  if (!in) throw std::runtime_error("cannot open report: " + report_path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty report: " + report_path);
  const std::vector<std::string> columns = split_csv_line(line);
  std::map<std::string, std::string> row;
  bool found = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != columns.size()) continue;
    std::map<std::string, std::string> candidate;
    for (std::size_t i = 0; i < columns.size(); ++i) candidate[columns[i]] = fields[i];
    if (candidate.count("id") && std::stoll(candidate["id"]) == row_id) {
      row = candidate;
      found = true;
      break;
    }
  }
  if (!found) {
    throw std::runtime_error("row id " + std::to_string(row_id) + " not found in " + report_path);
  }

  std::ostringstream out;
  const std::string suite = row.count("suite") ? row["suite"] : "?";
  out << "row " << row_id << " of " << report_path << " (suite " << suite << ")\n";
  for (const char* key : {"depth", "t", "seed", "delta", "alpha", "p", "family"}) {
    if (row.count(key)) out << "  " << key << " = " << row[key] << "\n";
  }

  // Regenerate the instance weights recorded by (seed, depth, delta) and
  // print their characteristics.
  if (row.count("seed") && row.count("depth") && row.count("delta") &&
      (suite == "two-weight" || suite == "one-weight" || suite == "unweighted" ||
       suite == "sawyer" || suite == "khintchine")) {
    const std::uint64_t seed = std::stoull(row["seed"]);
    const int depth = std::stoi(row["depth"]);
    const double delta = std::stod(row["delta"]);
    const Grid grid(depth);
    const double t = row.count("t") ? std::stod(row["t"]) : 1.0;
    auto emit = [&](const char* name, const Weight& weight) {
      out << "  weight " << name << ":\n";
      out << characteristic_line("joint A2 constant sup <w><w^-1>", ap_constant(weight, 2.0));
      out << characteristic_line("reverse Holder RH2 constant", rhp_constant(weight, 2.0));
      out << characteristic_line("entropy RH1 constant", rh1_constant(weight));
      out << characteristic_line("C_2t constant <w^2t>/<w>^2t", c2t_constant(weight, t));
    };
    if (suite == "two-weight" || suite == "sawyer") {
      emit("u", cascade_weight(grid, delta, hash_mix(seed, 0)));
      emit("v", cascade_weight(grid, delta, hash_mix(seed, 1)));
      emit("w", cascade_weight(grid, delta, hash_mix(seed, 2)));
    } else if (suite == "one-weight") {
      emit("u (= v)", cascade_weight(grid, delta, hash_mix(seed, 0)));
      emit("w", cascade_weight(grid, delta, hash_mix(seed, 2)));
    } else if (suite == "khintchine") {
      emit("v", cascade_weight(grid, delta, hash_mix(seed, 1)));
      emit("w", cascade_weight(grid, delta, hash_mix(seed, 2)));
    } else {
      emit("w", cascade_weight(grid, delta, hash_mix(seed, 2)));
    }
  }

  out << "  constants:\n";
  auto print_if = [&](const char* key, const char* meaning) {
    if (row.count(key)) out << "    " << key << " = " << row[key] << "   " << meaning << "\n";
  };
  print_if("c1", "joint condition sup_I <u^-1>_I <v w^2t>_I / <w>_I^2t");
  print_if("c2", "Carleson intensity of |J| |D_J u^-1|^2 <v w^2t>_J / <w>_J^2t against u^-1");
  print_if("c3", "Carleson intensity of |J| |D_J(v w^2t)|^2 <u^-1>_J / <w>_J^2t against v w^2t");
  print_if("c4", "norm of the positive averaging operator from L2(u) to L2(v)");
  print_if("combined", "sqrt(C1) + sqrt(C2) + sqrt(C3) + C4");
  print_if("combined_one_weight", "sqrt(C1) + sqrt(C2) + sqrt(C3) + sqrt(C2 C3)");
  print_if("sup_sigma", "alternation lower bound on the sup over signs of the two-weight norm");
  print_if("c2t", "sup_I <w^2t>_I / <w>_I^2t");
  print_if("norm", "operator norm of the unsigned multiplier on L2");
  print_if("closed_form", "sign-averaged squared norm, exact cross-term-free form");
  print_if("average", "empirical sign average");
  print_if("forward_full", "sup_I int |T(1_I u^-1)|^2 v w^2t / u^-1(I)");
  print_if("dual_full", "sup_I int |T(1_I v w^2t)|^2 u^-1 / v w^2t(I)");
  print_if("restricted", "testing constants with the integral restricted to I");
  print_if("pairing", "sup over equal-length pairs of the normalized squared pairing");
  print_if("rhp_packing", "sup_I (1/(|I|<w^p>_I)) sum |J| |D_J w^p|^2 / <w>_J^p");
  print_if("ap_packing", "packing scan of the dual weight against <w>^{-1/(p-1)}");

  out << "  comparisons:\n";
  print_if("ratio_upper", "sup_sigma / combined; finite-K comparability, upper side");
  print_if("ratio_c1", "sqrt(C1) / sup_sigma; necessity of the joint condition");
  print_if("ratio_c2", "sqrt(C2) / sup_sigma; necessity of the Carleson condition");
  print_if("ratio_c3", "sqrt(C3) / sup_sigma; necessity of the dual Carleson condition");
  print_if("norm_sq_over_c2t", "squared norm over the C_2t constant");
  print_if("testing_margin", "C_2t minus squared norm, relative (<= 0 means necessity holds)");
  print_if("margin_forward", "testing constant over squared norm minus one");
  print_if("margin_dual", "dual testing constant over squared norm minus one");
  print_if("margin_restricted", "restricted testing constant over squared norm minus one");
  print_if("margin_pairing", "pairing constant over squared norm minus one");
  print_if("transfer_gap", "pointwise gap of the weighted/unweighted realization identity");
  print_if("lambda_gap", "gap of the lambda product identity against sqrt(mu rho)");
  print_if("haar_testing_gap", "gap of ||T h_I||^2_v = <w^2t v>_I / <w>_I^2t");
  print_if("gap", "closed form vs sign average, relative");
  print_if("pass", "1 when every per-row check passed");
  if (row.count("one_weight")) out << "  specialization: u = v (one-weight route)\n";
  if (suite == "one-weight") {
    print_if("reverse_step_margin", "worst violation of <w>^2t <= <u^-1><u w^2t> (exact for t outside (0,1))");
    print_if("lambda_bound_margin", "worst violation of lambda <= sqrt(mu rho)/(<u^-1><u w^2t>)");
  }
  return out.str();
}

}  // namespace dyadica
