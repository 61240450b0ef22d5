#include <doctest.h>

#include <cmath>
#include <functional>

#include "homoclinic/errors.hpp"
#include "homoclinic/pseudocover.hpp"
#include "homoclinic/random.hpp"

using namespace homoclinic;

namespace {

LaurentPoly P(const char* s) { return LaurentPoly::parse(s); }

HomoclinicData data(const char* s) {
  const LaurentPoly f = P(s);
  return HomoclinicData(f, analyze(f), 8);
}

IntWindow random_finite(Rng& rng, long lo, long len, std::int64_t bound) {
  std::vector<std::int64_t> v;
  for (long i = 0; i < len; ++i) v.push_back(rng.integer(-bound, bound));
  return IntWindow(lo, v, Tail::zero());
}

RealWindow lift(const XfPoint& x) {
  std::vector<double> v;
  for (const auto& t : x.coords.values()) v.push_back(t.value());
  return RealWindow(x.lo(), std::move(v));
}

/// Plain recursive count of words with every prefix sum sum_{k<=j} v_k theta^k in the disk.
long brute_disk(Complex theta, double c, const std::vector<std::int64_t>& alphabet, long N) {
  std::function<long(long, Complex)> go = [&](long k, Complex s) -> long {
    if (k == N) return 1;
    long total = 0;
    for (auto a : alphabet) {
      const Complex t = s + double(a) * std::pow(theta, double(k));
      if (std::abs(t) <= c + 1e-12) total += go(k + 1, t);
    }
    return total;
  };
  return go(0, 0.0);
}

const char* const kNonexpansive[] = {"5u^2-6u+5", "u^4-u^3-u^2-u+1", "2u^2-u+2"};

}  // namespace

TEST_CASE("central vectors") {
  const HomoclinicData hd = data("u^4-u^3-u^2-u+1");
  const CentralVector wc = CentralVector::w_circ(hd);
  for (long n = -30; n <= 30; ++n) CHECK(std::abs(wc.at(n) - hd.circ(n)) < 1e-12);
  CHECK(wc.imag_defect(-30, 30) < 1e-12);
  const CentralVector s = wc.shifted(3);
  for (long n = -20; n <= 20; ++n) CHECK(std::abs(s.at(n) - wc.at(n + 3)) < 1e-12);
  // realizations lie in the kernel of f(sigma-bar)
  const LaurentPoly& f = hd.poly();
  const RealWindow r = (Complex(2.5) * wc + s).realize(-20, 20);
  for (long n = -20; n + 4 <= 20; ++n) {
    double acc = 0.0;
    for (long k = 0; k <= 4; ++k) acc += double(f[k]) * r[n + k];
    CHECK(std::abs(acc) < 1e-12);
  }
  CHECK(CentralVector::zero(hd).coeff_norm() == 0.0);
  CHECK(wc.coeff_norm() >= std::abs(wc.at(0)));
}

TEST_CASE("xi-bar* coincides with xi-bar for expansive f") {
  const HomoclinicData hd = data("u^2-u-1");
  Rng rng(3);
  const CoverSeq v{random_finite(rng, -5, 11, 3), 3};
  const RealWindow a = xi_star_bar(hd, v, -20, 20);
  const RealWindow b = xi_bar(hd, v, -20, 20);
  for (long n = -20; n <= 20; ++n) CHECK(std::abs(a[n] - b[n]) < 1e-13);
}

TEST_CASE("xi-bar* of delta_0 is w-") {
  const HomoclinicData hd = data("5u^2-6u+5");
  const RealWindow a = xi_star_bar(hd, {IntWindow(0, {1}, Tail::zero()), 1}, -20, 20);
  for (long n = -20; n <= 20; ++n) CHECK(std::abs(a[n] - hd.minus(n)) < 1e-14);
}

TEST_CASE("f(sigma-bar) inverts xi-bar* on finite support") {
  for (const char* p : kNonexpansive) {
    const HomoclinicData hd = data(p);
    const LaurentPoly& f = hd.poly();
    const long m = f.degree();
    for (int t = 0; t < 50; ++t) {
      Rng rng(5, t);
      const CoverSeq v{random_finite(rng, -8, 17, one_norm(f)), one_norm(f)};
      const RealWindow img = xi_star_bar(hd, v, -40, 40);
      for (long n = -40; n + m <= 40; ++n) {
        double acc = 0.0;
        for (long k = 0; k <= m; ++k) acc += double(f[k]) * img[n + k];
        CHECK(std::abs(acc - double(v.v.at(n))) < 1e-8);
      }
    }
  }
}

TEST_CASE("cocycle d") {
  const HomoclinicData hd = data("5u^2-6u+5");
  const IntWindow delta(0, {1}, Tail::zero());
  CHECK(cocycle_d(hd, 0, delta).coeff_norm() == 0.0);
  const CentralVector d1 = cocycle_d(hd, 1, delta);
  for (long n = -10; n <= 10; ++n) CHECK(std::abs(d1.at(n) - hd.circ(n + 1)) < 1e-14);

  // d(n, v) = sigma-bar^n xi-bar*(v) - xi-bar*(sigma-bar^n v), by direct evaluation
  for (const char* p : kNonexpansive) {
    const HomoclinicData h = data(p);
    for (int t = 0; t < 30; ++t) {
      Rng rng(7, t);
      const IntWindow v = random_finite(rng, -6, 13, 4);
      const long n = rng.integer(-15, 15);
      const RealWindow a = xi_star_bar(h, {v, 4}, -30 + n, 30 + n);
      const RealWindow b = xi_star_bar(h, {v.shifted(n), 4}, -30, 30);
      const CentralVector d = cocycle_d(h, n, v);
      for (long k = -30; k <= 30; ++k) CHECK(std::abs(a[k + n] - b[k] - d.at(k)) < 1e-9);
    }
  }
}

TEST_CASE("cocycle equation") {
  for (const char* p : kNonexpansive) {
    const HomoclinicData hd = data(p);
    for (int t = 0; t < 200; ++t) {
      Rng rng(11, t);
      const long a = rng.integer(-20, 20);
      const long b = rng.integer(-20, 20);
      const IntWindow v = random_finite(rng, -7, 15, 5);
      const CentralVector lhs = cocycle_d(hd, a, v.shifted(b)) + cocycle_d(hd, b, v).shifted(a);
      CHECK(lhs.distance(cocycle_d(hd, a + b, v)) < 1e-10);
    }
  }
}

TEST_CASE("V_f membership") {
  const HomoclinicData hd = data("u^4-u^3-u^2-u+1");
  Rng rng(13);
  CHECK(vf_membership(hd, random_finite(rng, -10, 21, 5)).verdict == Verdict::bounded);
  CHECK(vf_membership(hd, IntWindow(0, {1}, Tail::periodic(1))).verdict == Verdict::bounded);

  // symbols aligned with theta-bar^k make the partial sums grow linearly
  const Complex th = hd.spectrum().roots_of(RootClass::circle).at(0);
  std::vector<std::int64_t> v;
  for (long k = -400; k <= 400; ++k) v.push_back(std::lround(2 * std::real(std::pow(th, -double(k)))));
  CHECK(vf_membership(hd, IntWindow(-400, v)).verdict == Verdict::growing);
  CHECK_THROWS_AS(vf_membership(data("u^2-u-1"), IntWindow(0, {1}, Tail::zero())), InvalidArgument);
}

TEST_CASE("Z_f samples") {
  const LaurentPoly f = P("u^4-u^3-u^2-u+1");
  const HomoclinicData hd = data("u^4-u^3-u^2-u+1");
  const XfPoint zero{TorusWindow(-20, std::vector<Torus>(41))};
  const CoverSeq z0 = sample_Zf(f, zero);
  for (auto s : z0.v.values()) CHECK(s == 0);
  for (int t = 0; t < 100; ++t) {
    Rng rng(17, t);
    const XfPoint x = random_point(f, -200, 200, rng);
    const CoverSeq z = sample_Zf(f, x);
    CHECK(sup_norm(z.v) <= 5);
    CHECK(vf_membership(hd, z.v).verdict != Verdict::growing);
  }
}

TEST_CASE("central corrections") {
  const HomoclinicData hd = data("5u^2-6u+5");
  const LaurentPoly& f = hd.poly();
  // integer y: xi-bar*(f(sigma-bar) y) minus the correction is y itself, so its rho-image is 0
  std::vector<double> ints;
  std::vector<std::int64_t> yi;
  for (long k = -80; k <= 80; ++k) {
    yi.push_back((k * 7) % 5);
    ints.push_back(double(yi.back()));
  }
  const CorrectionReport ri = central_correction(hd, RealWindow(-80, ints), -30, 30);
  const IntWindow fy = apply_poly_shift(f, IntWindow(-80, yi));
  const RealWindow img = xi_star_bar(hd, {fy, sup_norm(fy)}, -30, 30);
  for (long n = -30; n <= 30; ++n) {
    CHECK(std::abs(img[n] - ri.w.at(n) - ints[std::size_t(n + 80)]) < 1e-7);
    CHECK(Torus(img[n] - ri.w.at(n)).norm() < 1e-7);
  }

  double cmax = 0.0;
  for (int t = 0; t < 100; ++t) {
    Rng rng(19, t);
    const XfPoint x = random_point(f, -80, 80, rng);
    const CorrectionReport r = central_correction(hd, lift(x), -30, 30);
    CHECK(r.kernel_residual < 1e-7);
    CHECK(r.fit_residual < 1e-7);
    cmax = std::max(cmax, r.image_norm / r.y_norm);
  }
  CHECK(std::isfinite(cmax));
}

TEST_CASE("skew map tau and zeta") {
  const HomoclinicData hd = data("u^4-u^3-u^2-u+1");
  for (int t = 0; t < 20; ++t) {
    Rng rng(23, t);
    const IntWindow v = random_finite(rng, -6, 13, 5);
    SkewPoint p{v, CentralVector::zero(hd)};
    const long steps = rng.integer(1, 12);
    for (long s = 0; s < steps; ++s) p = tau_step(hd, p);
    // telescoped cocycle
    CHECK(p.w.distance(cocycle_d(hd, steps, v)) < 1e-10);

    // zeta is equivariant: zeta(tau p) = alpha zeta(p)
    const SkewPoint q{v, CentralVector::w_circ(hd)};
    const RealWindow a = zeta_bar(hd, tau_step(hd, q), -20, 19);
    const RealWindow b = zeta_bar(hd, q, -19, 20);
    for (long n = -20; n <= 19; ++n) CHECK(std::abs(a[n] - b[n + 1]) < 1e-8);
  }
}

TEST_CASE("cocycle orbits of Z_f samples stay bounded") {
  const HomoclinicData hd = data("5u^2-6u+5");
  const LaurentPoly& f = hd.poly();
  double worst = 0.0;
  double c = 0.0;
  for (int t = 0; t < 30; ++t) {
    Rng rng(29, t);
    const XfPoint x = random_point(f, -120, 120, rng);
    const CoverSeq z = sample_Zf(f, x);
    const CorrectionReport r = central_correction(hd, lift(x), -30, 30);
    c = std::max(c, r.w.coeff_norm());
    // d(n, z) restricted to a finite window of z
    std::vector<std::int64_t> v;
    for (long k = -60; k <= 60; ++k) v.push_back(z.v[k]);
    const IntWindow zw(-60, v, Tail::zero());
    for (long n = -40; n <= 40; ++n) worst = std::max(worst, cocycle_d(hd, n, zw).coeff_norm());
  }
  CHECK(worst <= 2 * c + 1e-6);
}

TEST_CASE("disk counts") {
  const std::vector<std::int64_t> pm{-1, 1};
  const Complex i(0, 1);
  CHECK(disk_count(i, 1e6, pm, 10).count == 1024);
  CHECK(disk_count(i, 0.0, pm, 3).count == 0);
  CHECK(disk_count(i, 2.0, pm, 12).count == brute_disk(i, 2.0, pm, 12));
  CHECK(disk_count_enumerate(i, 2.0, pm, 12).count == brute_disk(i, 2.0, pm, 12));
  const Complex th(0.6, 0.8);
  const std::vector<std::int64_t> abc{-1, 0, 1};
  for (long N = 1; N <= 9; ++N) {
    const DiskCount a = disk_count(th, 1.5, abc, N);
    CHECK(a.count == brute_disk(th, 1.5, abc, N));
    CHECK(a.count == disk_count_enumerate(th, 1.5, abc, N).count);
    CHECK(a.entropy == doctest::Approx(std::log(a.count.convert_to<double>()) / double(N)));
  }
}

TEST_CASE("window entropy sanity") {
  const LaurentPoly f = P("u^4-u^3-u^2-u+1");
  const WindowEntropy e = zf_window_entropy(f, 8, 20000, 5);
  CHECK(e.entropy <= std::log(2.0 * double(one_norm(f)) + 1));
  CHECK(e.entropy > 0.0);
  std::size_t prev = 0;
  for (const auto& [s, d, est] : e.checkpoints) {
    CHECK(d >= prev);
    prev = d;
  }
  const WindowEntropy again = zf_window_entropy(f, 8, 20000, 5);
  CHECK(again.distinct == e.distinct);
}
