#include "homoclinic/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "homoclinic/errors.hpp"
#include "homoclinic/homoclinic.hpp"
#include "homoclinic/pseudocover.hpp"
#include "homoclinic/random.hpp"
#include "homoclinic/shatter.hpp"
#include "homoclinic/spectra.hpp"
#include "homoclinic/symcover.hpp"

namespace homoclinic {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

HomoclinicData make_data(const std::string& text, long window = 64) {
  const LaurentPoly f = LaurentPoly::parse(text);
  return HomoclinicData(f, analyze(f), window);
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}

// ---- 1 ----
CriterionResult exact_vectors(std::uint64_t) {
  CriterionResult r{1, "exact homoclinic vectors"};
  struct Case {
    const char* poly;
    std::vector<Rational> expect;
  };
  const std::vector<Case> cases = {
      {"5u^2-6u+5", {Rational(1, 5), Rational(6, 25), Rational(11, 125), Rational(-84, 625)}},
      {"2u^2-u+2", {Rational(1, 2), Rational(1, 4), Rational(-3, 8), Rational(-7, 16)}},
  };
  bool ok = true;
  double worst_time = 0.0;
  for (const auto& c : cases) {
    const LaurentPoly f = LaurentPoly::parse(c.poly);
    exact_one_sided(f, 5);  // warm-up
    const auto t0 = Clock::now();
    const auto res = exact_one_sided(f, 5);
    worst_time = std::max(worst_time, seconds_since(t0));
    for (long n = 2; n <= 5; ++n) ok = ok && res.values[n] == c.expect[static_cast<std::size_t>(n - 2)];
    ok = ok && res.values[0] == 0 && res.values[1] == 0;
  }
  r.pass = ok && worst_time < 1e-3;
  r.detail = std::string(ok ? "values exact" : "value mismatch") + ", slowest call " + fmt(worst_time * 1e3) + " ms";
  return r;
}

// ---- 2 ----
CriterionResult delta_identity(std::uint64_t) {
  CriterionResult r{2, "delta identity f(sigma-bar)w+- = delta_0, w+ + w-circ = w-"};
  const std::vector<std::string> polys = {"u^2-u-1",   "u^3-u-1",   "u^4-u^3-u^2-u+1",
                                          "5u^2-6u+5", "2u^2-u+2", "2u^6-2u^5+4u^4-3u^3+4u^2-2u+2"};
  double worst = 0.0;
  for (const auto& p : polys) {
    const HomoclinicData hd = make_data(p, 8);
    const LaurentPoly& f = hd.poly();
    for (long n = -40; n <= 40; ++n) {
      double sp = n == 0 ? -1.0 : 0.0;
      double sm = sp;
      for (long k = 0; k <= f.degree(); ++k) {
        sp += static_cast<double>(f[k]) * hd.plus(n + k);
        sm += static_cast<double>(f[k]) * hd.minus(n + k);
      }
      worst = std::max({worst, std::abs(sp), std::abs(sm), std::abs(hd.plus(n) + hd.circ(n) - hd.minus(n))});
    }
  }
  r.pass = worst < 1e-8;
  r.detail = std::to_string(polys.size()) + " polynomials, max defect " + fmt(worst);
  return r;
}

// ---- 3 ----
CriterionResult entropy_cross_check(std::uint64_t) {
  CriterionResult r{3, "entropy: roots formula vs Mahler integral"};
  const std::vector<std::string> polys = {"u^2-u-1",   "u^3-u-1",   "2-u",      "3-2u",
                                          "u^4-u^3-u^2-u+1", "5u^2-6u+5", "2u^2-u+2",
                                          "2u^6-2u^5+4u^4-3u^3+4u^2-2u+2"};
  bool ok = true;
  double worst_hyp = 0.0;
  double worst_non = 0.0;
  for (const auto& p : polys) {
    const Spectrum s = analyze(LaurentPoly::parse(p));
    const double d = std::abs(s.entropy_roots - s.entropy_integral);
    if (s.flags.expansive) {
      worst_hyp = std::max(worst_hyp, d);
    } else {
      worst_non = std::max(worst_non, d);
    }
  }
  ok = worst_hyp < 1e-6 && worst_non < 1e-4;
  const std::vector<std::pair<std::string, double>> closed = {
      {"2-u", std::log(2.0)}, {"3-2u", std::log(3.0)}, {"5u^2-6u+5", std::log(5.0)}};
  double worst_closed = 0.0;
  for (const auto& [p, h] : closed) {
    const Spectrum s = analyze(LaurentPoly::parse(p));
    worst_closed = std::max({worst_closed, std::abs(s.entropy_roots - h), std::abs(s.entropy_integral - h)});
  }
  ok = ok && worst_closed < 1e-9;
  r.pass = ok;
  r.detail = "hyperbolic gap " + fmt(worst_hyp) + ", nonhyperbolic gap " + fmt(worst_non) +
             ", closed-form error " + fmt(worst_closed);
  return r;
}

// ---- 4 ----
CriterionResult periodic_growth_check(std::uint64_t) {
  CriterionResult r{4, "periodic points of the cat map"};
  const auto t0 = Clock::now();
  const LaurentPoly f = LaurentPoly::parse("u^2-u-1");
  const std::vector<int> expect = {1, 1, 4, 5};
  bool ok = true;
  for (long k = 1; k <= 4; ++k) {
    ok = ok && periodic_count(f, k) == expect[static_cast<std::size_t>(k - 1)];
    ok = ok && periodic_count_companion(f, k) == expect[static_cast<std::size_t>(k - 1)];
  }
  const PeriodicGrowth g = periodic_growth(f, 30);
  for (const auto& pt : g.points) ok = ok && pt.count == periodic_count_companion(f, pt.k);
  const double gap = std::abs(g.points.back().log_rate - std::log(std::numbers::phi));
  const double t = seconds_since(t0);
  r.pass = ok && gap < 0.02 && t < 1.0;
  r.detail = std::string(ok ? "P_1..P_4 = 1,1,4,5 and resultants match determinants" : "count mismatch") +
             ", gap at k=30 " + fmt(gap) + ", " + fmt(t) + " s";
  return r;
}

LaurentPoly random_cubic(std::uint64_t seed) {
  for (std::uint64_t s = 0;; ++s) {
    Rng rng(seed ^ 0xc0b1cULL, s);
    const std::int64_t a = rng.integer(-3, 3);
    const std::int64_t b = rng.integer(-3, 3);
    const std::int64_t c = rng.integer(0, 1) ? 1 : -1;
    const LaurentPoly f({c, b, a, 1});
    // no rational roots (+-1) and hyperbolic with a moderate decay rate
    if (f.eval(1.0L) == 0.0L || f.eval(-1.0L) == 0.0L) continue;
    try {
      const Spectrum sp = analyze(f);
      if (!sp.flags.expansive) continue;
      HomoclinicData hd(f, sp, 4);
      if (hd.decay_rate() > 0.85) continue;
      return f;
    } catch (const std::exception&) {
      continue;
    }
  }
}

// ---- 5 ----
CriterionResult roundtrip(std::uint64_t seed) {
  CriterionResult r{5, "expansive round trip xi(decode(x)) = x"};
  const auto t0 = Clock::now();
  const LaurentPoly cubic = random_cubic(seed);
  double worst = 0.0;
  bool bound_ok = true;
  for (const LaurentPoly& f : {LaurentPoly::parse("u^2-u-1"), cubic}) {
    const HomoclinicData hd(f, analyze(f), 8);
    const long m = f.degree();
    const double norm = static_cast<double>(one_norm(f));
    const long w = decay_margin(hd, norm, 1e-11) + m + 1;
    for (int i = 0; i < 1000; ++i) {
      Rng rng(seed, static_cast<std::uint64_t>(i));
      const XfPoint x = random_point(f, -w, w + m, rng);
      const CoverSeq v = decode(f, x);
      bound_ok = bound_ok && sup_norm(v.v) <= one_norm(f);
      const XfPoint y = xi(hd, v, 0, m - 1);
      worst = std::max(worst, point_distance(x, y, 0, m));
    }
  }
  const double t = seconds_since(t0);
  r.pass = worst < 1e-8 && bound_ok && t < 10.0;
  r.detail = "cat map and " + cubic.to_string() + ", 1000 samples each, max error " + fmt(worst) +
             (bound_ok ? ", symbols within ||f||_1" : ", symbol bound violated") + ", " + fmt(t) + " s";
  return r;
}

// ---- 6 ----
CriterionResult golden_cover(std::uint64_t seed) {
  CriterionResult r{6, "golden-mean beta cover"};
  const LaurentPoly f = LaurentPoly::parse("u^2-u-1");
  const HomoclinicData hd(f, analyze(f), 8);
  double worst = 0.0;
  long violations = 0;
  const long lo = -40;
  const long hi = 60;
  const long burn = 40;
  for (int i = 0; i < 1000; ++i) {
    Rng rng(seed ^ 0xbe7aULL, static_cast<std::uint64_t>(i));
    const XfPoint x = random_point(f, lo - burn, hi + 2, rng);
    const BetaEncoding enc = beta_encode(hd, x, lo, hi, burn);
    const IntWindow& d = enc.digits.v;
    for (long k = d.lo(); k < d.hi(); ++k)
      if (d[k] * d[k + 1] != 0) ++violations;
    const XfPoint y = xi(hd, enc.digits, 0, 1);
    worst = std::max(worst, point_distance(x, y, 0, 2));
  }
  r.pass = violations == 0 && worst < 1e-6;
  r.detail = "1000 samples, " + std::to_string(violations) + " adjacent 11 pairs, max error " + fmt(worst);
  return r;
}

// ---- 7 ----
CriterionResult specification(std::uint64_t seed) {
  CriterionResult r{7, "specification shadowing"};
  const double eps = 1e-3;
  bool ok = true;
  std::ostringstream out;

  // fixed points 1/3 and 2/3 of u^2-3u-1, then random points of the cat map
  const HomoclinicData h3 = make_data("u^2-3u-1", 8);
  const long n3 = specification_gap(h3, eps);
  const std::vector<ShadowBlock> fixed = {{0, 20, {1.0 / 3, 1.0 / 3}}, {20 + n3, 40 + n3, {2.0 / 3, 2.0 / 3}}};
  const ShadowResult s3 = specification_shadow(h3, fixed, eps);
  double worst = 0.0;
  for (double e : s3.block_errors) worst = std::max(worst, e);
  ok = ok && worst < eps;
  out << "fixed points: N(eps)=" << n3 << " error " << fmt(worst);

  const HomoclinicData hg = make_data("u^2-u-1", 8);
  const long ng = specification_gap(hg, eps);
  Rng rng(seed ^ 0x5eedULL);
  const std::vector<ShadowBlock> blocks = {{0, 15, {rng.uniform(), rng.uniform()}},
                                           {15 + ng, 30 + ng, {rng.uniform(), rng.uniform()}}};
  const ShadowResult sg = specification_shadow(hg, blocks, eps);
  worst = 0.0;
  for (double e : sg.block_errors) worst = std::max(worst, e);
  ok = ok && worst < eps;
  out << "; cat map: N(eps)=" << ng << " error " << fmt(worst);

  const long p = (30 + ng) + ng;
  const ShadowResult sp = specification_shadow(hg, blocks, eps, p);
  worst = 0.0;
  for (double e : sp.block_errors) worst = std::max(worst, e);
  ok = ok && worst < eps && sp.period_residual < 1e-8;
  out << "; periodic p=" << p << " error " << fmt(worst) << " residual " << fmt(sp.period_residual);
  r.pass = ok;
  r.detail = out.str();
  return r;
}

// ---- 8 ----
CriterionResult nonexpansive_identities(std::uint64_t seed) {
  CriterionResult r{8, "nonexpansive identities"};
  std::ostringstream out;
  bool ok = true;
  for (const std::string p : {"5u^2-6u+5", "u^4-u^3-u^2-u+1"}) {
    const HomoclinicData hd = make_data(p, 8);
    const LaurentPoly& f = hd.poly();
    const long m = f.degree();
    const std::int64_t norm = one_norm(f);

    double inv = 0.0;
    for (int i = 0; i < 200; ++i) {
      Rng rng(seed ^ 0x1dULL, static_cast<std::uint64_t>(i));
      std::vector<std::int64_t> vals;
      for (int k = 0; k < 21; ++k) vals.push_back(rng.integer(-norm, norm));
      const CoverSeq v{IntWindow(-10, vals, Tail::zero()), norm};
      const RealWindow img = xi_star_bar(hd, v, -40, 40);
      for (long n = -40; n + m <= 40; ++n) {
        double acc = 0.0;
        for (long k = 0; k <= m; ++k) acc += static_cast<double>(f[k]) * img[n + k];
        inv = std::max(inv, std::abs(acc - static_cast<double>(v.v.at(n))));
      }
    }

    double coc = 0.0;
    for (int i = 0; i < 1000; ++i) {
      Rng rng(seed ^ 0xc0cULL, static_cast<std::uint64_t>(i));
      const long a = rng.integer(-20, 20);
      const long b = rng.integer(-20, 20);
      std::vector<std::int64_t> vals;
      for (int k = 0; k < 15; ++k) vals.push_back(rng.integer(-norm, norm));
      const IntWindow v(-7, vals, Tail::zero());
      const CentralVector lhs = cocycle_d(hd, a, v.shifted(b)) + cocycle_d(hd, b, v).shifted(a);
      coc = std::max(coc, lhs.distance(cocycle_d(hd, a + b, v)));
    }

    const long w = 80;
    double kernel = 0.0;
    double c_first = 0.0;
    double c_second = 0.0;
    for (int i = 0; i < 1000; ++i) {
      Rng rng(seed ^ 0xcc0ULL, static_cast<std::uint64_t>(i));
      const XfPoint x = random_point(f, -w, w, rng);
      std::vector<double> lift;
      for (const auto& t : x.coords.values()) lift.push_back(t.value());
      const RealWindow y(-w, std::move(lift));
      const CorrectionReport rep = central_correction(hd, y, -30, 30);
      kernel = std::max(kernel, rep.kernel_residual);
      const double c = rep.image_norm / rep.y_norm;
      (i < 500 ? c_first : c_second) = std::max(i < 500 ? c_first : c_second, c);
    }
    const bool stable = std::isfinite(c_first) && c_second <= 1.25 * c_first;
    ok = ok && inv < 1e-8 && coc < 1e-10 && kernel < 1e-7 && stable;
    out << p << ": inverse " << fmt(inv) << ", cocycle " << fmt(coc) << ", kernel " << fmt(kernel)
        << ", c " << fmt(c_first) << "/" << fmt(c_second) << "; ";
  }
  r.pass = ok;
  r.detail = out.str();
  return r;
}

// ---- 9 ----
CriterionResult recovery(std::uint64_t seed) {
  CriterionResult r{9, "pseudo-cover recovery"};
  std::ostringstream out;
  bool ok = true;
  for (const std::string p : {"5u^2-6u+5", "u^4-u^3-u^2-u+1"}) {
    const HomoclinicData hd = make_data(p, 8);
    const LaurentPoly& f = hd.poly();
    const long w = 80;
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      Rng rng(seed ^ 0x9ecULL, static_cast<std::uint64_t>(i));
      const XfPoint x = random_point(f, -w, w, rng);
      const CoverSeq z = sample_Zf(f, x);
      std::vector<double> lift;
      for (const auto& t : x.coords.values()) lift.push_back(t.value());
      const CorrectionReport rep = central_correction(hd, RealWindow(-w, std::move(lift)), -30, 30);
      const RealWindow img = xi_star_bar(hd, z, -30, 30);
      for (long n = -30; n <= 30; ++n)
        worst = std::max(worst, torus_distance(Torus(img[n] - rep.w.at(n)), x.at(n)));
    }
    ok = ok && worst < 1e-7;
    out << p << ": max error " << fmt(worst) << "; ";
  }
  r.pass = ok;
  r.detail = out.str();
  return r;
}

// ---- 10 ----
CriterionResult zf_entropy(std::uint64_t seed) {
  CriterionResult r{10, "Z_f window entropy (Salem)"};
  const auto t0 = Clock::now();
  const LaurentPoly f = LaurentPoly::parse("u^4-u^3-u^2-u+1");
  const WindowEntropy e = zf_window_entropy(f, 12, 100000, seed);
  const double t = seconds_since(t0);
  r.pass = e.entropy >= 0.18 && e.entropy <= 0.40 && t < 60.0;
  r.detail = "N=12, 1e5 samples, " + std::to_string(e.distinct) + " words, estimate " + fmt(e.entropy) +
             " (log theta = " + fmt(analyze(f).entropy_roots) + "), " + fmt(t) + " s";
  return r;
}

// ---- 11 ----
CriterionResult sauer_shelah(std::uint64_t seed) {
  CriterionResult r{11, "Pajor / Sauer-Shelah"};
  long pajor_fail = 0;
  long forced_fail = 0;
  long forced_cases = 0;
  for (int i = 0; i < 200; ++i) {
    Rng rng(seed ^ 0x55ULL, static_cast<std::uint64_t>(i));
    const long size = rng.integer(1, 400);
    std::vector<Subset> family;
    for (long j = 0; j < size; ++j) family.push_back(static_cast<Subset>(rng.integer(0, 1023)));
    const SauerShelahCheck c = check_sauer_shelah(family, 10);
    if (!c.pajor) ++pajor_fail;
    if (c.forced_k > 0) ++forced_cases;
    if (!c.forced_found) ++forced_fail;
  }
  r.pass = pajor_fail == 0 && forced_fail == 0;
  r.detail = "200 families, " + std::to_string(pajor_fail) + " Pajor violations, " +
             std::to_string(forced_fail) + " of " + std::to_string(forced_cases) + " forced-size failures";
  return r;
}

// ---- 12 ----
CriterionResult negative_control(std::uint64_t seed) {
  CriterionResult r{12, "no homoclinic points for nonexpansive f"};
  std::ostringstream out;
  bool ok = true;
  for (const std::string p : {"5u^2-6u+5", "u^4-u^3-u^2-u+1"}) {
    const HomoclinicData hd = make_data(p, 8);
    const NoHomoclinicReport rep = verify_no_homoclinic(hd, 100, 60, 0.01, seed);
    ok = ok && rep.all_nondecaying;
    out << p << ": min tail " << fmt(rep.min_tail) << "; ";
  }
  r.pass = ok;
  r.detail = out.str();
  return r;
}

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
  static const std::vector<std::function<CriterionResult(std::uint64_t)>> table = {
      exact_vectors, delta_identity,          entropy_cross_check, periodic_growth_check,
      roundtrip,     golden_cover,            specification,       nonexpansive_identities,
      recovery,      zf_entropy,              sauer_shelah,        negative_control};
  if (id < 1 || id > kCriterionCount) throw InvalidArgument("no acceptance criterion " + std::to_string(id));
  const auto t0 = Clock::now();
  CriterionResult r;
  try {
    r = table[static_cast<std::size_t>(id - 1)](seed);
  } catch (const std::exception& e) {
    r.id = id;
    r.name = "criterion " + std::to_string(id);
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = seconds_since(t0);
  return r;
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, seed));
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(2);
  s << (r.pass ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << " (" << r.seconds << " s): " << r.detail;
  return s.str();
}

}  // namespace homoclinic
