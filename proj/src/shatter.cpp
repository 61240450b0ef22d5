#include "homoclinic/shatter.hpp"

#include <algorithm>
#include <bit>

#include "homoclinic/errors.hpp"

namespace homoclinic {

std::vector<Subset> shattered_sets(const std::vector<Subset>& family_in, int n) {
  if (n < 0 || n > 20) throw InvalidArgument("shattered_sets: |S| must be at most 20");
  const Subset full = n == 0 ? 0 : static_cast<Subset>((1u << n) - 1);
  std::vector<Subset> family;
  for (auto f : family_in) {
    if ((f & ~full) != 0) throw InvalidArgument("shattered_sets: element outside S");
    family.push_back(f);
  }
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());

  std::vector<Subset> out;
  if (family.empty()) return out;
  std::vector<std::uint32_t> stamp(static_cast<std::size_t>(full) + 1, 0);
  std::uint32_t round = 0;
  for (Subset t = 0;; ++t) {
    const std::size_t need = std::size_t{1} << std::popcount(t);
    if (need <= family.size()) {
      ++round;
      std::size_t seen = 0;
      for (auto f : family) {
        auto& s = stamp[f & t];
        if (s != round) {
          s = round;
          ++seen;
        }
      }
      if (seen == need) out.push_back(t);
    }
    if (t == full) break;
  }
  return out;
}

std::uint64_t binomial_prefix(int n, int k) {
  std::uint64_t total = 0;
  std::uint64_t c = 1;  // C(n, i)
  for (int i = 0; i < k && i <= n; ++i) {
    total += c;
    c = c * static_cast<std::uint64_t>(n - i) / static_cast<std::uint64_t>(i + 1);
  }
  return total;
}

SauerShelahCheck check_sauer_shelah(const std::vector<Subset>& family_in, int n) {
  std::vector<Subset> family = family_in;
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  SauerShelahCheck out;
  out.family_size = family.size();
  const auto sh = shattered_sets(family, n);
  out.shattered = sh.size();
  out.pajor = out.shattered >= out.family_size;
  for (int k = 1; k <= n; ++k)
    if (out.family_size > binomial_prefix(n, k)) out.forced_k = k;
  if (out.forced_k > 0)
    out.forced_found = std::any_of(sh.begin(), sh.end(), [&](Subset t) { return std::popcount(t) == out.forced_k; });
  return out;
}

}  // namespace homoclinic
