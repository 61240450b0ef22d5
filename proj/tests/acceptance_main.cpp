#include <cstdlib>
#include <iostream>
#include <set>
#include <string>

#include "homoclinic/acceptance.hpp"

/// Runs every criterion and prints one line each. `--expect-fail ID` marks a
/// criterion recorded as unattainable: it still prints FAIL, and the exit code
/// turns nonzero if it unexpectedly passes or anything else fails.
int main(int argc, char** argv) {
  std::uint64_t seed = 20240611;
  if (const char* s = std::getenv("HOMOCLINIC_SEED")) seed = std::stoull(s);
  std::set<int> expected;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--expect-fail" && i + 1 < argc) expected.insert(std::stoi(argv[++i]));
    else if (a == "--seed" && i + 1 < argc) seed = std::stoull(argv[++i]);
    else {
      std::cerr << "usage: acceptance [--seed S] [--expect-fail ID]...\n";
      return 2;
    }
  }
  std::cout << std::unitbuf << "seed " << seed << '\n';
  int passed = 0;
  int surprises = 0;
  for (int id = 1; id <= homoclinic::kCriterionCount; ++id) {
    const auto r = homoclinic::run_criterion(id, seed);
    std::cout << homoclinic::format_result(r) << '\n';
    if (r.pass) ++passed;
    if (r.pass == expected.contains(id)) ++surprises;
  }
  std::cout << passed << "/" << homoclinic::kCriterionCount << " criteria passed";
  if (!expected.empty()) {
    std::cout << "; expected failures:";
    for (int id : expected) std::cout << ' ' << id;
  }
  std::cout << '\n';
  return surprises == 0 ? 0 : 1;
}
