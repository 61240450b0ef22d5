#pragma once

#include <cstdint>
#include <vector>

namespace homoclinic {

/// Subsets of S = {0, ..., n-1} as bit masks.
using Subset = std::uint32_t;

/// All T subset of S shattered by the family, i.e. {F & T : F in family}
/// contains every subset of T. Duplicates in the family are ignored.
/// Requires n <= 20.
std::vector<Subset> shattered_sets(const std::vector<Subset>& family, int n);

/// sum_{i<k} C(n, i)
std::uint64_t binomial_prefix(int n, int k);

struct SauerShelahCheck {
  std::size_t family_size = 0;
  std::size_t shattered = 0;
  bool pajor = false;
  /// Largest k with |family| > sum_{i<k} C(n,i) (0 when none).
  int forced_k = 0;
  /// Whether some shattered set has size forced_k.
  bool forced_found = true;
};

SauerShelahCheck check_sauer_shelah(const std::vector<Subset>& family, int n);

}  // namespace homoclinic
