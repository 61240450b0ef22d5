#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace homoclinic {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr int kCriterionCount = 12;

CriterionResult run_criterion(int id, std::uint64_t seed);
std::vector<CriterionResult> run_acceptance(std::uint64_t seed);

/// "PASS [3] name (0.12 s): detail"
std::string format_result(const CriterionResult& r);

}  // namespace homoclinic
