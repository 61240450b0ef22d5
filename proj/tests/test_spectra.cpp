#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "homoclinic/errors.hpp"
#include "homoclinic/quadrature.hpp"
#include "homoclinic/spectra.hpp"

using namespace homoclinic;

namespace {

LaurentPoly P(const char* s) { return LaurentPoly::parse(s); }

int count(const Spectrum& s, RootClass c) { return static_cast<int>(s.roots_of(c).size()); }

/// det(A^k - I) for the 2x2 cat-map matrix [[0,1],[1,1]] with plain integers.
std::int64_t cat_det(int k) {
  std::array<std::int64_t, 4> a{1, 0, 0, 1};
  for (int i = 0; i < k; ++i) a = {a[1], a[0] + a[1], a[3], a[2] + a[3]};
  return std::llabs((a[0] - 1) * (a[3] - 1) - a[1] * a[2]);
}

}  // namespace

TEST_CASE("roots against the quadratic formula") {
  const auto r = find_roots(P("u^2-u-1"));
  REQUIRE(r.size() == 2);
  const double phi = (1 + std::sqrt(5.0)) / 2;
  const double psi = (1 - std::sqrt(5.0)) / 2;
  CHECK(std::abs(r[0] - Complex(psi)) < 1e-14);
  CHECK(std::abs(r[1] - Complex(phi)) < 1e-14);

  const auto c = find_roots(P("5u^2-6u+5"));
  REQUIRE(c.size() == 2);
  CHECK(std::abs(c[0] - std::conj(c[1])) == 0.0);
  CHECK(std::abs(std::abs(c[0].imag()) - 0.8) < 1e-14);
  CHECK(std::abs(c[0].real() - 0.6) < 1e-14);

  const auto l = find_roots(P("u-2"));
  REQUIRE(l.size() == 1);
  CHECK(std::abs(l[0] - Complex(2.0)) < 1e-15);
}

TEST_CASE("roots of random integer polynomials satisfy Vieta") {
  std::mt19937_64 g(3);
  std::uniform_int_distribution<int> c(-6, 6);
  for (int t = 0; t < 100; ++t) {
    std::vector<std::int64_t> v;
    for (int i = 0; i < 6; ++i) v.push_back(c(g));
    if (v.front() == 0) v.front() = 1;
    if (v.back() == 0) v.back() = 2;
    const LaurentPoly f(v);
    std::vector<Complex> r;
    try {
      r = find_roots(f);
    } catch (const InvalidArgument&) {
      continue;  // repeated roots
    }
    REQUIRE(r.size() == 5);
    Complex sum = 0, prod = 1;
    for (auto z : r) {
      sum += z;
      prod *= z;
    }
    CHECK(std::abs(sum + Complex(double(v[4]) / double(v[5]))) < 1e-8);
    CHECK(std::abs(prod + Complex(double(v[0]) / double(v[5]))) < 1e-8);
  }
}

TEST_CASE("unit circle split") {
  const Spectrum gold = analyze(P("u^2-u-1"));
  CHECK(count(gold, RootClass::minus) == 1);
  CHECK(count(gold, RootClass::plus) == 1);
  CHECK(count(gold, RootClass::circle) == 0);

  const Spectrum salem = analyze(P("u^4-u^3-u^2-u+1"));
  CHECK(count(salem, RootClass::minus) == 1);
  CHECK(count(salem, RootClass::circle) == 2);
  CHECK(count(salem, RootClass::plus) == 1);

  const Spectrum five = analyze(P("5u^2-6u+5"));
  CHECK(count(five, RootClass::circle) == 2);
}

TEST_CASE("classification flags") {
  const auto gold = analyze(P("u^2-u-1")).flags;
  CHECK(gold.expansive);
  CHECK(gold.pisot);
  CHECK_FALSE(gold.salem);

  const auto salem = analyze(P("u^4-u^3-u^2-u+1")).flags;
  CHECK_FALSE(salem.expansive);
  CHECK(salem.salem);
  CHECK_FALSE(salem.cyclotomic);

  CHECK(is_cyclotomic(P("u^2-u+1")));
  CHECK_FALSE(is_cyclotomic(P("u^2-u-1")));
  CHECK(is_cyclotomic(P("u^2+1")));
  CHECK(analyze(P("u^3-u-1")).flags.pisot);
  // Pisot needs a monic polynomial
  CHECK_FALSE(analyze(P("2u^2-5u+2")).flags.pisot);
}

TEST_CASE("Salem flag implies self-reciprocal with one root outside") {
  for (const char* p : {"u^4-u^3-u^2-u+1", "u^4-2u^3+u^2-2u+1", "u^10+u^9-u^7-u^6-u^5-u^4-u^3+u+1"}) {
    const Spectrum s = analyze(P(p));
    if (!s.flags.salem) continue;
    CHECK(canonicalize(adjoint(s.poly)).poly == canonicalize(s.poly).poly);
    CHECK(count(s, RootClass::plus) == 1);
  }
  CHECK(analyze(P("u^10+u^9-u^7-u^6-u^5-u^4-u^3+u+1")).flags.salem);
}

TEST_CASE("entropy closed forms") {
  CHECK(analyze(P("2-u")).entropy_roots == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(analyze(P("3-2u")).entropy_roots == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(analyze(P("5u^2-6u+5")).entropy_roots == doctest::Approx(std::log(5.0)).epsilon(1e-12));
  CHECK(std::abs(entropy_mahler(P("u-2")) - std::log(2.0)) < 1e-6);
  CHECK(std::abs(entropy_mahler(P("u^2-u-1")) - std::log((1 + std::sqrt(5.0)) / 2)) < 1e-6);
  CHECK(std::abs(entropy_mahler(P("2u^2-u+2")) - std::log(2.0)) < 1e-4);
  CHECK(std::abs(entropy_mahler(P("5u^2-6u+5")) - std::log(5.0)) < 1e-4);
}

TEST_CASE("Mahler integral matches the root formula on random polynomials") {
  std::mt19937_64 g(5);
  std::uniform_int_distribution<int> c(-5, 5);
  for (int t = 0; t < 40; ++t) {
    std::vector<std::int64_t> v;
    for (int i = 0; i < 5; ++i) v.push_back(c(g));
    if (v.front() == 0 || v.back() == 0) continue;
    Spectrum s;
    try {
      s = analyze(LaurentPoly(v));
    } catch (const std::exception&) {
      continue;
    }
    const double tol = s.flags.expansive ? 1e-6 : 1e-4;
    CHECK(std::abs(s.entropy_roots - s.entropy_integral) < tol);
  }
}

TEST_CASE("quadrature rules") {
  const auto r = periodic_trapezoid([](double t) { return std::cos(2 * M_PI * t) * std::cos(2 * M_PI * t); }, 1e-13, 1 << 16);
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-12));
  // int_0^1 log x dx = -1 with an endpoint singularity
  const auto s = tanh_sinh([](double x, double) { return std::log(x); }, 0.0, 1.0, 1e-10, 1 << 16);
  CHECK(s.value == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("periodic points against det(A^k - I)") {
  const LaurentPoly f = P("u^2-u-1");
  for (int k = 1; k <= 40; ++k) {
    CHECK(periodic_count(f, k) == BigInt(cat_det(k)));
    CHECK(periodic_count_companion(f, k) == BigInt(cat_det(k)));
  }
  CHECK(periodic_count(f, 1) == 1);
  CHECK(periodic_count(f, 2) == 1);
  CHECK(periodic_count(f, 3) == 4);
  CHECK(periodic_count(f, 4) == 5);
}

TEST_CASE("periodic growth rates") {
  const auto g = periodic_growth(P("u^2-u-1"), 30);
  CHECK(g.final_gap < 0.02);
  const auto two = periodic_growth(P("u-2"), 20);
  for (const auto& p : two.points) {
    CHECK(p.count == (BigInt(1) << p.k) - 1);
    CHECK(p.log_rate == doctest::Approx(std::log(std::pow(2.0, double(p.k)) - 1) / double(p.k)));
  }
  CHECK(periodic_growth(P("5u^2-6u+5"), 30).final_gap < 0.05);
}

TEST_CASE("gcd over Q") {
  CHECK(gcd_over_q(P("u^2-1"), P("u^2+2u+1")) == P("u+1"));
  CHECK(gcd_over_q(P("u^2-u-1"), P("u+1")) == P("1"));
}
