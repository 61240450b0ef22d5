#include <doctest.h>

#include <bit>
#include <random>
#include <set>

#include "homoclinic/shatter.hpp"

using namespace homoclinic;

namespace {

/// T is shattered when the traces {F & T} cover all 2^|T| subsets of T.
std::set<Subset> shattered_oracle(const std::vector<Subset>& family, int n) {
  std::set<Subset> out;
  for (Subset t = 0; t < (Subset{1} << n); ++t) {
    std::set<Subset> traces;
    for (Subset f : family) traces.insert(f & t);
    if (traces.size() == (std::size_t{1} << std::popcount(t))) out.insert(t);
  }
  return out;
}

}  // namespace

TEST_CASE("trivial families") {
  CHECK(shattered_sets({0}, 4) == std::vector<Subset>{0});
  std::vector<Subset> all;
  for (Subset s = 0; s < 16; ++s) all.push_back(s);
  CHECK(shattered_sets(all, 4).size() == 16);
  CHECK(shattered_sets({}, 3).empty());
}

TEST_CASE("shattered sets against a set-based oracle") {
  std::mt19937_64 g(99);
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + int(g() % 8);
    const std::size_t size = 1 + g() % (std::size_t{1} << n);
    std::vector<Subset> family;
    for (std::size_t i = 0; i < size; ++i) family.push_back(Subset(g() % (Subset{1} << n)));
    const auto got = shattered_sets(family, n);
    const auto want = shattered_oracle(family, n);
    CHECK(std::set<Subset>(got.begin(), got.end()) == want);
  }
}

TEST_CASE("Pajor and Sauer-Shelah on |S| = 10") {
  CHECK(binomial_prefix(10, 0) == 0);
  CHECK(binomial_prefix(10, 1) == 1);
  CHECK(binomial_prefix(10, 3) == 1 + 10 + 45);
  CHECK(binomial_prefix(10, 11) == 1024);
  std::mt19937_64 g(7);
  for (int t = 0; t < 200; ++t) {
    std::set<Subset> distinct;
    const std::size_t size = 1 + g() % 400;
    while (distinct.size() < size) distinct.insert(Subset(g() % 1024));
    const std::vector<Subset> family(distinct.begin(), distinct.end());
    const auto c = check_sauer_shelah(family, 10);
    CHECK(c.pajor);
    CHECK(c.shattered >= c.family_size);
    CHECK(c.forced_found);
  }
}
