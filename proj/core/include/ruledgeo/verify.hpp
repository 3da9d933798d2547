#pragma once
#include <string>
#include <vector>

namespace ruledgeo::verify {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

// Runs the full acceptance suite; every tolerance is pinned in code.
std::vector<CriterionResult> run_acceptance(unsigned threads = 1);

// Single criterion by id (1-based); throws std::out_of_range otherwise.
CriterionResult run_criterion(int id, unsigned threads = 1);

int criterion_count();

}  // namespace ruledgeo::verify
