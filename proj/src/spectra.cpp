#include "homoclinic/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "homoclinic/errors.hpp"
#include "homoclinic/int_matrix.hpp"
#include "homoclinic/quadrature.hpp"

namespace homoclinic {

using LComplex = std::complex<long double>;

std::string to_string(RootClass c) {
  switch (c) {
    case RootClass::minus:
      return "minus";
    case RootClass::circle:
      return "circle";
    case RootClass::plus:
      return "plus";
  }
  return "?";
}

namespace {

// ---- rational polynomial helpers (index = exponent) ----

using QPoly = std::vector<Rational>;

void qtrim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly to_q(const LaurentPoly& f) {
  QPoly p;
  const LaurentPoly p0 = f.shifted_to_zero();
  for (auto c : p0.coeffs()) p.emplace_back(c);
  return p;
}

QPoly qrem(QPoly a, const QPoly& b) {
  qtrim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    Rational q = a.back() / b.back();
    const std::size_t off = a.size() - b.size();
    for (std::size_t j = 0; j <= db; ++j) a[off + j] -= q * b[j];
    a.pop_back();
    qtrim(a);
  }
  return a;
}

QPoly qgcd(QPoly a, QPoly b) {
  qtrim(a);
  qtrim(b);
  while (!b.empty()) {
    QPoly r = qrem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

LaurentPoly to_primitive(const QPoly& p) {
  if (p.empty()) return {};
  BigInt den = 1;
  for (const auto& c : p) den = boost::multiprecision::lcm(den, denominator(c));
  std::vector<BigInt> ints;
  BigInt g = 0;
  for (const auto& c : p) {
    BigInt v = numerator(c) * (den / denominator(c));
    ints.push_back(v);
    g = boost::multiprecision::gcd(g, v);
  }
  if (ints.back() < 0) g = -g;
  std::vector<std::int64_t> out;
  for (const auto& v : ints) {
    BigInt q = v / g;
    if (abs(q) > BigInt(std::numeric_limits<std::int64_t>::max()))
      throw NumericalError("gcd coefficient overflow");
    out.push_back(q.convert_to<std::int64_t>());
  }
  return LaurentPoly(std::move(out), 0);
}

long euler_phi(long n) {
  long result = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

struct Horner {
  LComplex p;
  LComplex dp;
};

Horner horner(const std::vector<long double>& a, LComplex z) {
  LComplex p = 0;
  LComplex dp = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
  return {p, dp};
}

bool root_order(const Complex& a, const Complex& b) {
  const double ma = std::abs(a);
  const double mb = std::abs(b);
  if (std::abs(ma - mb) > 1e-12 * std::max(1.0, ma)) return ma < mb;
  return std::arg(a) < std::arg(b);
}

}  // namespace

LaurentPoly gcd_over_q(const LaurentPoly& f, const LaurentPoly& g) {
  return to_primitive(qgcd(to_q(f), to_q(g)));
}

std::vector<Complex> find_roots(const LaurentPoly& f, double tol) {
  if (f.is_zero()) throw InvalidArgument("find_roots: zero polynomial");
  const LaurentPoly p = f.shifted_to_zero();
  const long m = p.degree();
  if (m < 1) throw InvalidArgument("find_roots: degree must be at least 1");

  std::vector<long double> a;
  for (auto c : p.coeffs()) a.push_back(static_cast<long double>(c));
  const long double am = a.back();

  std::vector<LComplex> z(static_cast<std::size_t>(m));
  const long double radius = std::pow(std::abs(a.front() / am), 1.0L / static_cast<long double>(m));
  for (long k = 0; k < m; ++k) {
    long double ang = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(k) /
                          static_cast<long double>(m) + 0.4L;
    z[static_cast<std::size_t>(k)] = std::polar(radius, ang);
  }

  bool converged = false;
  for (int iter = 0; iter < 2000 && !converged; ++iter) {
    converged = true;
    for (std::size_t i = 0; i < z.size(); ++i) {
      auto [pv, dpv] = horner(a, z[i]);
      if (pv == LComplex(0)) continue;
      LComplex ratio = pv / dpv;
      LComplex s = 0;
      for (std::size_t j = 0; j < z.size(); ++j)
        if (j != i) s += 1.0L / (z[i] - z[j]);
      LComplex w = ratio / (1.0L - ratio * s);
      z[i] -= w;
      if (std::abs(w) > 1e-17L * std::max(1.0L, std::abs(z[i]))) converged = false;
    }
  }

  for (auto& zi : z) {
    for (int step = 0; step < 3; ++step) {
      auto [pv, dpv] = horner(a, zi);
      if (pv == LComplex(0) || dpv == LComplex(0)) break;
      LComplex next = zi - pv / dpv;
      if (std::abs(horner(a, next).p) >= std::abs(pv)) break;
      zi = next;
    }
  }

  std::vector<Complex> roots;
  for (const auto& zi : z) {
    Complex r(static_cast<double>(zi.real()), static_cast<double>(zi.imag()));
    if (std::abs(r.imag()) <= 1e-12 * std::max(1.0, std::abs(r))) r = Complex(r.real(), 0.0);
    roots.push_back(r);
  }
  // pair conjugates exactly
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i] || roots[i].imag() <= 0.0) continue;
    std::size_t best = roots.size();
    double best_d = 1e-7 * std::max(1.0, std::abs(roots[i]));
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (j == i || used[j] || roots[j].imag() >= 0.0) continue;
      double d = std::abs(roots[j] - std::conj(roots[i]));
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    if (best != roots.size()) {
      used[i] = used[best] = true;
      roots[best] = std::conj(roots[i]);
    }
  }

  const double norm1 = static_cast<double>(one_norm(p));
  std::ostringstream bad;
  for (const auto& r : roots) {
    double res = static_cast<double>(std::abs(p.eval(LComplex(r.real(), r.imag()))));
    double bound = tol * norm1 * std::pow(std::max(1.0, std::abs(r)), static_cast<double>(m));
    if (!(res <= bound)) bad << " |f(" << r << ")|=" << res;
  }
  if (!bad.str().empty()) throw NumericalError("find_roots: residual check failed:" + bad.str());

  long double prod = std::abs(am);
  for (const auto& r : roots) prod *= std::abs(r);
  const long double f0 = std::abs(a.front());
  if (std::abs(prod - f0) > 1e-6L * f0)
    throw NumericalError("find_roots: Vieta check failed (" + std::to_string(static_cast<double>(prod)) +
                         " vs " + std::to_string(static_cast<double>(f0)) + ")");

  std::sort(roots.begin(), roots.end(), root_order);
  return roots;
}

std::vector<RootClass> unit_circle_split(const LaurentPoly& f, std::span<const Complex> roots,
                                         double tol) {
  const LaurentPoly p = f.shifted_to_zero();
  const LaurentPoly g = gcd_over_q(p, adjoint(p).shifted_to_zero());
  const long dg = g.degree();
  const double gnorm = static_cast<double>(one_norm(g));

  std::vector<bool> on_g(roots.size(), false);
  long count = 0;
  if (dg > 0) {
    for (std::size_t i = 0; i < roots.size(); ++i) {
      const Complex r = roots[i];
      double res = static_cast<double>(std::abs(g.eval(LComplex(r.real(), r.imag()))));
      double scaled = res / (gnorm * std::pow(std::max(1.0, std::abs(r)), static_cast<double>(dg)));
      if (scaled <= 1e-8) {
        on_g[i] = true;
        ++count;
      }
    }
  }
  // Repeated factors of f inside g make this count exceed deg g; fewer means
  // the numerical roots could not be matched to the exact factor.
  if (count < dg)
    throw NumericalError("unit_circle_split: ambiguous roots (matched " + std::to_string(count) +
                         " of " + std::to_string(dg) + " roots of gcd(f, f*))");

  std::vector<RootClass> tags;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double gap = std::abs(std::abs(roots[i]) - 1.0);
    if (gap < tol) {
      if (!on_g[i])
        throw NumericalError("unit_circle_split: root near the circle is not a root of gcd(f, f*)");
      tags.push_back(RootClass::circle);
      continue;
    }
    if (on_g[i] && gap < 1e-6)
      throw NumericalError("unit_circle_split: root of gcd(f, f*) within 1e-6 of the circle but outside tol");
    tags.push_back(std::abs(roots[i]) < 1.0 ? RootClass::minus : RootClass::plus);
  }
  return tags;
}

bool is_cyclotomic(const LaurentPoly& f) {
  const QPoly fq = to_q(f);
  const long m = static_cast<long>(fq.size()) - 1;
  if (m < 1) return false;
  // phi(k) >= sqrt(k/2), so phi(k) <= m forces k <= 2 m^2.
  QPoly power{Rational(1)};  // u^k mod f
  for (long k = 1; k <= 2 * m * m + 2; ++k) {
    power.insert(power.begin(), Rational(0));
    power = qrem(power, fq);
    if (euler_phi(k) > m) continue;
    QPoly r = power;
    if (r.empty()) r.push_back(0);
    r[0] -= 1;
    qtrim(r);
    if (r.empty()) return true;
    if (qgcd(fq, r).size() > 1) return true;
  }
  return false;
}

SpectrumFlags classify(const LaurentPoly& f, std::span<const Complex> roots,
                       std::span<const RootClass> tags, double tol) {
  (void)tol;
  const LaurentPoly p = f.shifted_to_zero();
  SpectrumFlags flags;
  long plus = 0;
  long circle = 0;
  std::optional<Complex> big;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (tags[i] == RootClass::plus) {
      ++plus;
      big = roots[i];
    }
    if (tags[i] == RootClass::circle) ++circle;
  }
  flags.expansive = circle == 0;
  flags.cyclotomic = circle > 0 && is_cyclotomic(p);
  const bool monic = p.leading() == 1 || p.leading() == -1;
  const bool real_big = big && big->imag() == 0.0 && big->real() > 1.0;
  flags.pisot = monic && plus == 1 && circle == 0 && real_big;
  const LaurentPoly rev = adjoint(p).shifted_to_zero();
  const bool reciprocal = rev == p || rev == -p;
  flags.salem = monic && reciprocal && plus == 1 && circle > 0 && real_big;
  return flags;
}

double entropy_roots(const LaurentPoly& f, std::span<const Complex> roots,
                     std::span<const RootClass> tags) {
  double h = std::log(std::abs(static_cast<double>(f.leading())));
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (tags[i] == RootClass::plus) h += std::log(std::abs(roots[i]));
  return h;
}

double entropy_mahler(const LaurentPoly& f, int quad_points, double tol) {
  if (f.is_zero()) throw InvalidArgument("entropy_mahler: zero polynomial");
  const LaurentPoly p = f.shifted_to_zero();
  if (p.degree() == 0) return std::log(std::abs(static_cast<double>(p.leading())));

  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  auto log_abs = [&](double t) {
    const long double ang = two_pi * static_cast<long double>(t);
    const LComplex z(std::cos(ang), std::sin(ang));
    long double v = std::abs(p.eval(z));
    if (v < 1e-300L) v = 1e-300L;
    return static_cast<double>(std::log(v));
  };

  std::vector<double> breaks;
  for (const auto& r : find_roots(p, tol)) {
    if (std::abs(std::abs(r) - 1.0) > 1e-6) continue;
    double t = std::arg(r) / (2.0 * std::numbers::pi);
    if (t < 0) t += 1.0;
    if (t >= 1.0) t -= 1.0;
    breaks.push_back(t);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(), [](double a, double b) { return b - a < 1e-12; }),
               breaks.end());

  if (breaks.empty()) return periodic_trapezoid(log_abs, 1e-13, quad_points).value;

  double total = 0.0;
  int budget = quad_points;
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    const double a = breaks[i];
    const double b = i + 1 < breaks.size() ? breaks[i + 1] : breaks[0] + 1.0;
    if (b - a < 1e-12) continue;
    auto g = [&](double x, double) { return log_abs(x); };
    auto r = tanh_sinh(g, a, b, 1e-12, budget);
    budget -= r.evaluations;
    if (budget <= 0) throw NumericalError("entropy_mahler: evaluation budget exhausted");
    total += r.value;
  }
  return total;
}

std::vector<Complex> Spectrum::roots_of(RootClass c) const {
  std::vector<Complex> out;
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (tags[i] == c) out.push_back(roots[i]);
  return out;
}

bool Spectrum::has(RootClass c) const { return std::find(tags.begin(), tags.end(), c) != tags.end(); }

double Spectrum::lambda_minus() const {
  double v = 0.0;
  for (const auto& r : roots_of(RootClass::minus)) v = std::max(v, std::abs(r));
  return v;
}

double Spectrum::lambda_plus() const {
  double v = std::numeric_limits<double>::infinity();
  for (const auto& r : roots_of(RootClass::plus)) v = std::min(v, std::abs(r));
  return v;
}

std::optional<double> Spectrum::pisot_root() const {
  if (!flags.pisot) return std::nullopt;
  return roots_of(RootClass::plus).front().real();
}

namespace {

std::vector<std::string> sanity_warnings(const LaurentPoly& p) {
  std::vector<std::string> out;
  if (p.degree() >= 1 && gcd_over_q(p, p.derivative()).degree() > 0)
    out.push_back("f has repeated roots");
  const std::int64_t f0 = std::abs(p.trailing());
  const std::int64_t fm = std::abs(p.leading());
  if (p.degree() > 1 && f0 <= 1000000 && fm <= 1000000) {
    for (std::int64_t num = 1; num <= f0; ++num) {
      if (f0 % num != 0) continue;
      for (std::int64_t den = 1; den <= fm; ++den) {
        if (fm % den != 0) continue;
        for (int s : {1, -1}) {
          Rational x(s * num, den);
          Rational acc = 0;
          for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * x + *it;
          if (acc == 0) out.push_back("f has the rational root " + x.str() + " (reducible)");
        }
      }
    }
  }
  return out;
}

}  // namespace

Spectrum analyze(const LaurentPoly& f, double tol, int quad_points) {
  Spectrum s;
  s.tol = tol;
  s.poly = f.shifted_to_zero();
  s.roots = find_roots(s.poly, tol);
  s.tags = unit_circle_split(s.poly, s.roots, tol);
  s.flags = classify(s.poly, s.roots, s.tags, tol);
  s.entropy_roots = entropy_roots(s.poly, s.roots, s.tags);
  s.entropy_integral = entropy_mahler(s.poly, quad_points, tol);
  s.warnings = sanity_warnings(s.poly);
  return s;
}

BigInt periodic_count(const LaurentPoly& f, long k) {
  if (k < 1) throw InvalidArgument("periodic_count: k must be >= 1");
  const LaurentPoly p = f.shifted_to_zero();
  if (is_cyclotomic(p)) throw InvalidArgument("periodic_count: f is cyclotomic, periodic sets are infinite");
  std::vector<BigInt> c(static_cast<std::size_t>(k), 0);
  for (long i = 0; i <= p.degree(); ++i) c[static_cast<std::size_t>(i % k)] += p[i];
  BigMatrix m(static_cast<std::size_t>(k), std::vector<BigInt>(static_cast<std::size_t>(k)));
  for (long r = 0; r < k; ++r)
    for (long s = 0; s < k; ++s) m[r][s] = c[static_cast<std::size_t>(((s - r) % k + k) % k)];
  BigInt d = determinant(std::move(m));
  return d < 0 ? BigInt(-d) : d;
}

BigInt periodic_count_companion(const LaurentPoly& f, long k) {
  if (k < 1) throw InvalidArgument("periodic_count_companion: k must be >= 1");
  const LaurentPoly p = canonicalize(f).poly;
  if (p.leading() != 1 || std::abs(p.trailing()) != 1)
    throw InvalidArgument("periodic_count_companion: needs |f_0| = f_m = 1");
  const auto m = static_cast<std::size_t>(p.degree());
  // (x_0..x_{m-1}) -> (x_1..x_m) with x_m = -sum_{j<m} f_j x_j
  BigMatrix a(m, std::vector<BigInt>(m, 0));
  for (std::size_t i = 0; i + 1 < m; ++i) a[i][i + 1] = 1;
  for (std::size_t j = 0; j < m; ++j) a[m - 1][j] = -p[static_cast<long>(j)];
  BigMatrix power = identity_matrix(m);
  for (long i = 0; i < k; ++i) power = multiply(power, a);
  for (std::size_t i = 0; i < m; ++i) power[i][i] -= 1;
  BigInt d = determinant(std::move(power));
  return d < 0 ? BigInt(-d) : d;
}

double log_bigint(const BigInt& x) {
  if (x <= 0) throw InvalidArgument("log_bigint: nonpositive argument");
  const auto bits = boost::multiprecision::msb(x);
  if (bits < 1000) return std::log(x.convert_to<double>());
  const auto shift = bits - 60;
  BigInt top = x >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::numbers::ln2;
}

PeriodicGrowth periodic_growth(const LaurentPoly& f, long k_max) {
  if (k_max < 1) throw InvalidArgument("periodic_growth: k_max must be >= 1");
  const LaurentPoly p = f.shifted_to_zero();
  if (is_cyclotomic(p)) throw InvalidArgument("periodic_growth: f is cyclotomic, periodic sets are infinite");
  PeriodicGrowth g;
  const auto roots = find_roots(p);
  const auto tags = unit_circle_split(p, roots);
  g.entropy = entropy_roots(p, roots, tags);
  for (long k = 1; k <= k_max; ++k) {
    GrowthPoint pt;
    pt.k = k;
    pt.count = periodic_count(p, k);
    pt.log_rate = log_bigint(pt.count) / static_cast<double>(k);
    g.points.push_back(pt);
  }
  g.final_gap = std::abs(g.points.back().log_rate - g.entropy);
  return g;
}

}  // namespace homoclinic
