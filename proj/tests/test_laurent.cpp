#include <doctest.h>

#include <random>

#include "homoclinic/errors.hpp"
#include "homoclinic/laurent.hpp"
#include "homoclinic/seq_window.hpp"

using namespace homoclinic;

namespace {

LaurentPoly P(const char* s) { return LaurentPoly::parse(s); }

LaurentPoly random_poly(std::mt19937_64& g) {
  std::uniform_int_distribution<int> len(1, 5), lo(-3, 3), c(-4, 4);
  std::vector<std::int64_t> v;
  const int n = len(g);
  for (int i = 0; i < n; ++i) v.push_back(c(g));
  return LaurentPoly(v, lo(g));
}

}  // namespace

TEST_CASE("parse accepts human and coefficient-list forms") {
  CHECK(P("u^2-u-1") == LaurentPoly({-1, -1, 1}));
  CHECK(P("-1,-1,1") == LaurentPoly({-1, -1, 1}));
  CHECK(P("5u^2-6u+5") == LaurentPoly({5, -6, 5}));
  CHECK(P("2-u") == LaurentPoly({2, -1}));
  CHECK(P("u^-1 + 3") == LaurentPoly({1, 3}, -1));
  CHECK_THROWS_AS(P("u^2+"), InvalidArgument);
  CHECK_THROWS_AS(P("x^2"), InvalidArgument);
  CHECK(P("5u^2-6u+5").to_string() == "5u^2-6u+5");
  CHECK(P(P("u^4-u^3-u^2-u+1").to_string().c_str()) == P("u^4-u^3-u^2-u+1"));
}

TEST_CASE("canonicalize: unit normalization") {
  const auto a = canonicalize(P("2-u"));
  CHECK(a.poly == P("u-2"));
  CHECK(a.sign == -1);
  CHECK(a.poly.low() == 0);

  const auto b = canonicalize(P("5u^2-6u+5"));
  CHECK(b.poly == P("5u^2-6u+5"));
  CHECK(b.sign == 1);

  const auto c = canonicalize(LaurentPoly({-1, -1, 1}, -1));
  CHECK(c.poly == P("u^2-u-1"));
  CHECK(c.shift == -1);
}

TEST_CASE("adjoint reverses coefficients") {
  const auto a = canonicalize(adjoint(P("u-2")));
  CHECK(a.poly == P("2u-1"));
  CHECK(a.sign == -1);
  CHECK(canonicalize(adjoint(P("5u^2-6u+5"))).poly == P("5u^2-6u+5"));
  CHECK(canonicalize(adjoint(P("u^4-u^3-u^2-u+1"))).poly == P("u^4-u^3-u^2-u+1"));
}

TEST_CASE("one_norm") {
  CHECK(one_norm(P("u^2-u-1")) == 3);
  CHECK(one_norm(P("5u^2-6u+5")) == 16);
  CHECK(one_norm(P("2u^6-2u^5+4u^4-3u^3+4u^2-2u+2")) == 19);
}

TEST_CASE("ring operations agree with pointwise evaluation") {
  std::mt19937_64 g(7);
  for (int t = 0; t < 200; ++t) {
    const auto a = random_poly(g);
    const auto b = random_poly(g);
    const std::complex<long double> z(0.3L, 0.7L);
    CHECK(std::abs((a * b).eval(z) - a.eval(z) * b.eval(z)) < 1e-9L);
    CHECK(std::abs((a + b).eval(z) - (a.eval(z) + b.eval(z))) < 1e-9L);
    if (!a.is_zero() && !b.is_zero()) CHECK(divides(a, a * b));
  }
  CHECK_FALSE(divides(P("u^2-u-1"), P("u+1")));
  CHECK(divides(P("u-1"), P("u^2-1")));
}

TEST_CASE("apply_poly_shift convolution conventions") {
  const IntWindow delta(0, {1}, Tail::zero());
  const IntWindow out = apply_poly_shift(P("u^2-u-1"), delta);
  CHECK(out.at(-2) == 1);
  CHECK(out.at(-1) == -1);
  CHECK(out.at(0) == -1);
  CHECK(out.at(1) == 0);
  CHECK(out.at(-3) == 0);

  // constant polynomial acts as the identity
  const RealWindow s(-3, {0.5, -1.25, 2.0, 7.0});
  const RealWindow id = apply_poly_shift(P("1"), s);
  CHECK(id.lo() == s.lo());
  for (long n = s.lo(); n <= s.hi(); ++n) CHECK(id[n] == s[n]);

  // finite windows shrink by deg h
  const RealWindow shrunk = apply_poly_shift(P("u^2-u-1"), s);
  CHECK(shrunk.lo() == -3);
  CHECK(shrunk.hi() == -2);
  CHECK(shrunk[-3] == doctest::Approx(2.0 + 1.25 - 0.5));
}

TEST_CASE("apply_poly_shift composes and commutes with shifts") {
  std::mt19937_64 g(11);
  std::uniform_int_distribution<int> c(-5, 5);
  for (int t = 0; t < 100; ++t) {
    const auto a = random_poly(g);
    const auto b = random_poly(g);
    if (a.is_zero() || b.is_zero()) continue;
    std::vector<std::int64_t> v;
    for (int i = 0; i < 9; ++i) v.push_back(c(g));
    const IntWindow s(-4, v, Tail::zero());
    const IntWindow lhs = apply_poly_shift(a * b, s);
    const IntWindow rhs = apply_poly_shift(a, apply_poly_shift(b, s));
    for (long n = -20; n <= 20; ++n) CHECK(lhs.at(n) == rhs.at(n));
    const IntWindow plain = apply_poly_shift(a, s);
    const IntWindow sh = apply_poly_shift(a, s.shifted(1));
    for (long n = -20; n <= 20; ++n) CHECK(sh.at(n) == plain.at(n + 1));
  }
}

TEST_CASE("periodic tails survive convolution") {
  const IntWindow s(0, {1, 2, 3}, Tail::periodic(3));
  const IntWindow out = apply_poly_shift(P("u-1"), s);
  for (long n = -10; n <= 10; ++n) CHECK(out.at(n) == s.at(n + 1) - s.at(n));
}

TEST_CASE("torus representatives") {
  CHECK(Torus(-0.25).value() == doctest::Approx(0.75));
  CHECK(Torus(3.0).value() == 0.0);
  CHECK(Torus(0.9).norm() == doctest::Approx(0.1));
  const RealWindow ints(0, {1.0, -2.0, 5.0});
  const TorusWindow t = to_torus(ints);
  for (const auto& x : t.values()) CHECK(x.value() == 0.0);
}
