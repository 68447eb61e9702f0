#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace continuum_lab {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  double limit_seconds = 0.0;
  // Empty on success; otherwise names the violated property and a witness.
  std::string witness;
  nlohmann::json detail;
};

int criterion_count();
// Runs one criterion; the runtime limit counts towards the verdict.
CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_suite();

void to_json(nlohmann::json& j, const CriterionResult& r);

}  // namespace continuum_lab
