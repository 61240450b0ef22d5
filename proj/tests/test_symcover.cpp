#include <doctest.h>

#include <cmath>

#include "homoclinic/errors.hpp"
#include "homoclinic/random.hpp"
#include "homoclinic/symcover.hpp"

using namespace homoclinic;

namespace {

LaurentPoly P(const char* s) { return LaurentPoly::parse(s); }

HomoclinicData data(const char* s) {
  const LaurentPoly f = P(s);
  return HomoclinicData(f, analyze(f), 8);
}

CoverSeq finite(long lo, std::vector<std::int64_t> v, std::int64_t bound) {
  return {IntWindow(lo, std::move(v), Tail::zero()), bound};
}

CoverSeq random_finite(Rng& rng, long lo, long len, std::int64_t bound) {
  std::vector<std::int64_t> v;
  for (long i = 0; i < len; ++i) v.push_back(rng.integer(-bound, bound));
  return finite(lo, v, bound);
}

}  // namespace

TEST_CASE("xi-bar of delta_0 is w-delta") {
  const HomoclinicData hd = data("u^2-u-1");
  const RealWindow w = xi_bar(hd, finite(0, {1}, 1), -20, 20);
  for (long n = -20; n <= 20; ++n) CHECK(w[n] == doctest::Approx(hd.delta(n)).epsilon(1e-14));

  const RealWindow d = xi_bar(hd, finite(0, {1, -1}, 1), -20, 20);
  for (long n = -20; n <= 20; ++n) CHECK(std::abs(d[n] - (hd.delta(n) - hd.delta(n - 1))) < 1e-14);
}

TEST_CASE("f(sigma-bar) inverts xi-bar on finite support") {
  for (const char* p : {"u^2-u-1", "u^3-u-1", "u^2-3u-1", "3-2u"}) {
    const HomoclinicData hd = data(p);
    const LaurentPoly& f = hd.poly();
    const long m = f.degree();
    for (int t = 0; t < 50; ++t) {
      Rng rng(17, t);
      const CoverSeq v = random_finite(rng, -6, 13, one_norm(f));
      const RealWindow img = xi_bar(hd, v, -60, 60);
      for (long n = -60; n + m <= 60; ++n) {
        double acc = 0.0;
        for (long k = 0; k <= m; ++k) acc += double(f[k]) * img[n + k];
        CHECK(std::abs(acc - double(v.v.at(n))) < 1e-9);
      }
    }
  }
}

TEST_CASE("xi is a shift-equivariant homomorphism") {
  const HomoclinicData hd = data("u^2-u-1");
  CHECK(xi(hd, finite(0, {0}, 1), 0, 1).at(0).value() == 0.0);
  for (int t = 0; t < 50; ++t) {
    Rng rng(23, t);
    const CoverSeq a = random_finite(rng, -5, 11, 3);
    const CoverSeq b = random_finite(rng, -5, 11, 3);
    std::vector<std::int64_t> s;
    for (long k = -5; k <= 5; ++k) s.push_back(a.v[k] + b.v[k]);
    const XfPoint xa = xi(hd, a, -3, 3);
    const XfPoint xb = xi(hd, b, -3, 3);
    const XfPoint xs = xi(hd, finite(-5, s, 6), -3, 3);
    for (long n = -3; n <= 3; ++n) CHECK(torus_distance(xs.at(n), xa.at(n) + xb.at(n)) < 1e-12);
    // xi(sigma-bar v)_n = xi(v)_{n+1}
    const XfPoint xsh = xi(hd, {a.v.shifted(1), 3}, -3, 2);
    for (long n = -3; n <= 2; ++n) CHECK(torus_distance(xsh.at(n), xa.at(n + 1)) < 1e-12);
    CHECK(relation_residual(hd.poly(), xa) < 1e-12);
  }
}

TEST_CASE("decode: zero, fixed points, bounds") {
  const LaurentPoly gold = P("u^2-u-1");
  const XfPoint zero{TorusWindow(0, std::vector<Torus>(12))};
  const CoverSeq z = decode(gold, zero);
  for (auto s : z.v.values()) CHECK(s == 0);

  // x_n = 1/3 is fixed by the automorphism of u^2-3u-1
  const LaurentPoly f3 = P("u^2-3u-1");
  const XfPoint third{TorusWindow(0, std::vector<Torus>(20, Torus(1.0 / 3)))};
  const CoverSeq v = decode(f3, third);
  for (long k = v.v.lo(); k <= v.v.hi(); ++k) CHECK(v.v[k] == v.v[v.v.lo()]);
  CHECK(v.v.hi() == 17);

  // not a point of X_f
  const XfPoint bad{TorusWindow(0, {Torus(0.1), Torus(0.2), Torus(0.7)})};
  CHECK_THROWS_AS(decode(gold, bad), NumericalError);
}

TEST_CASE("round trip on random points") {
  for (const char* p : {"u^2-u-1", "u^3-u-1", "u^3+2u^2+u-1"}) {
    const HomoclinicData hd = data(p);
    const LaurentPoly& f = hd.poly();
    const long m = f.degree();
    const long w = decay_margin(hd, double(one_norm(f)), 1e-11) + m + 1;
    for (int t = 0; t < 100; ++t) {
      Rng rng(31, t);
      const XfPoint x = random_point(f, -w, w + m, rng);
      CHECK(relation_residual(f, x) < 1e-9);
      const CoverSeq v = decode(f, x);
      CHECK(sup_norm(v.v) <= one_norm(f));
      CHECK(point_distance(x, xi(hd, v, 0, m - 1), 0, m) < 1e-8);
    }
  }
}

TEST_CASE("unknown tails too close to the window edge are refused") {
  const HomoclinicData hd = data("u^2-u-1");
  const CoverSeq v{IntWindow(-3, {1, 0, 1, 0, 1, 0, 1}), 3};
  CHECK_THROWS_AS(xi_bar(hd, v, 0, 1), NumericalError);
}

TEST_CASE("periodic symbol sequences give periodic points") {
  const HomoclinicData hd = data("u^2-u-1");
  const CoverSeq v{IntWindow(0, {1, 0, 0, 1, 0}, Tail::periodic(5)), 1};
  const RealWindow img = xi_bar(hd, v, -10, 10);
  for (long n = -10; n + 5 <= 10; ++n) CHECK(std::abs(img[n] - img[n + 5]) < 1e-12);
  // agrees with a long zero-tail truncation
  std::vector<std::int64_t> longv;
  for (long k = -200; k <= 200; ++k) longv.push_back(v.v.at(k));
  const RealWindow ref = xi_bar(hd, finite(-200, longv, 1), -10, 10);
  for (long n = -10; n <= 10; ++n) CHECK(std::abs(img[n] - ref[n]) < 1e-12);
}

TEST_CASE("specification: single block and conflicting fixed points") {
  const double eps = 1e-3;
  const HomoclinicData hd = data("u^2-u-1");
  const ShadowResult one = specification_shadow(hd, {{0, 25, {0.2, 0.45}}}, eps);
  CHECK(one.block_errors.at(0) < eps);

  const HomoclinicData h3 = data("u^2-3u-1");
  const long n = specification_gap(h3, eps);
  const ShadowResult two =
      specification_shadow(h3, {{0, 10, {1.0 / 3, 1.0 / 3}}, {10 + n, 20 + n, {2.0 / 3, 2.0 / 3}}}, eps);
  for (double e : two.block_errors) CHECK(e < eps);
  CHECK_THROWS_AS(specification_shadow(h3, {{0, 10, {0.1, 0.2}}, {10 + n - 1, 20 + n, {0.3, 0.4}}}, eps),
                  InvalidArgument);

  const ShadowResult per =
      specification_shadow(h3, {{0, 10, {1.0 / 3, 1.0 / 3}}, {10 + n, 20 + n, {2.0 / 3, 2.0 / 3}}}, eps, 20 + 2 * n);
  CHECK(per.period_residual < 1e-8);
  for (double e : per.block_errors) CHECK(e < eps);
}

TEST_CASE("golden beta expansions avoid 11 and reproduce x") {
  const HomoclinicData hd = data("u^2-u-1");
  const double phi = (1 + std::sqrt(5.0)) / 2;
  const XfPoint zero{TorusWindow(-60, std::vector<Torus>(130))};
  const BetaEncoding ze = beta_encode(hd, zero, -10, 60);
  for (auto d : ze.digits.v.values()) CHECK(d == 0);
  for (int t = 0; t < 200; ++t) {
    Rng rng(41, t);
    const XfPoint x = random_point(hd.poly(), -80, 70, rng);
    const BetaEncoding e = beta_encode(hd, x, -40, 60, 40);
    const IntWindow& d = e.digits.v;
    for (long k = d.lo(); k < d.hi(); ++k) CHECK(d[k] * d[k + 1] == 0);
    CHECK(parry_admissible(d, phi));
    CHECK(point_distance(x, xi(hd, e.digits, 0, 1), 0, 2) < 1e-6);
  }
  CHECK_THROWS_AS(beta_encode(data("5u^2-6u+5"), zero, 0, 10), InvalidArgument);
}

TEST_CASE("Parry admissibility matches the no-11 rule for the golden mean") {
  const double phi = (1 + std::sqrt(5.0)) / 2;
  const auto q = quasi_greedy_one(phi, 6);
  CHECK(q == std::vector<int>{1, 0, 1, 0, 1, 0});
  for (std::uint32_t mask = 0; mask < 1024; ++mask) {
    std::vector<std::int64_t> w;
    bool has11 = false;
    for (int i = 0; i < 10; ++i) {
      w.push_back((mask >> i) & 1U);
      if (i > 0 && w[i] && w[i - 1]) has11 = true;
    }
    CHECK(parry_admissible(IntWindow(0, w), phi) == !has11);
  }
}

TEST_CASE("W* reduction") {
  const HomoclinicData hd = data("u^2-u-1");
  const LaurentPoly& f = hd.poly();
  for (int t = 0; t < 20; ++t) {
    Rng rng(53, t);
    const CoverSeq v = random_finite(rng, 0, 12, 3);
    const ReduceResult r = wstar_reduce(f, v, 4, 1, 200000);
    REQUIRE_FALSE(r.budget_exceeded);
    CHECK(sup_norm(r.v.v) <= 3);
    // result = input - f(sigma-bar) h
    const IntWindow fh = apply_poly_shift(f, IntWindow(r.h.low(), r.h.coeffs(), Tail::zero()));
    for (long n = 0; n < 12; ++n) CHECK(r.v.v[n] == v.v[n] - fh.at(n));
    // same image under xi
    const XfPoint a = xi(hd, v, -5, 15);
    const XfPoint b = xi(hd, r.v, -5, 15);
    for (long n = -5; n <= 15; ++n) CHECK(torus_distance(a.at(n), b.at(n)) < 1e-10);
    // idempotent
    const ReduceResult again = wstar_reduce(f, r.v, 4, 1, 200000);
    CHECK(again.h.is_zero());
  }
}

TEST_CASE("W* reduction is constant on cosets") {
  const LaurentPoly f = P("u^2-u-1");
  int compared = 0;
  for (int t = 0; t < 40; ++t) {
    Rng rng(59, t);
    const CoverSeq v = random_finite(rng, 0, 12, 3);
    const long j = rng.integer(2, 11);
    std::vector<std::int64_t> w(v.v.values().begin(), v.v.values().end());
    for (long k = 0; k <= 2; ++k) w[static_cast<std::size_t>(j - k)] -= f[k];
    if (sup_norm(IntWindow(0, w)) > 3) continue;
    ++compared;
    const ReduceResult a = wstar_reduce(f, v, 4, 1, 400000);
    const ReduceResult b = wstar_reduce(f, finite(0, w, 3), 4, 1, 400000);
    for (long n = 0; n < 12; ++n) CHECK(a.v.v[n] == b.v.v[n]);
  }
  CHECK(compared > 5);
}
