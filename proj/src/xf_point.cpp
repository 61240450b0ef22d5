#include "homoclinic/xf_point.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "homoclinic/errors.hpp"

namespace homoclinic {

namespace {

long double frac(long double x) { return x - std::floor(x); }

}  // namespace

double relation_residual(const LaurentPoly& f, const XfPoint& x) {
  const LaurentPoly p = f.shifted_to_zero();
  const long m = p.degree();
  double worst = 0.0;
  for (long n = x.lo(); n + m <= x.hi(); ++n) {
    long double acc = 0;
    for (long k = 0; k <= m; ++k) acc += static_cast<long double>(p[k]) * x.coords[n + k].value();
    worst = std::max(worst, Torus(static_cast<double>(frac(acc))).norm());
  }
  return worst;
}

XfPoint extend_point(const LaurentPoly& f, std::span<const double> base, long lo, long hi, Rng* rng) {
  const LaurentPoly p = f.shifted_to_zero();
  const long m = p.degree();
  if (m < 1) throw InvalidArgument("extend_point: degree must be at least 1");
  if (static_cast<long>(base.size()) != m) throw InvalidArgument("extend_point: need exactly m base coordinates");
  if (lo > 0 || hi < m - 1) throw InvalidArgument("extend_point: window must contain [0, m-1]");

  std::vector<long double> x(static_cast<std::size_t>(hi - lo + 1), 0.0L);
  auto at = [&](long n) -> long double& { return x[static_cast<std::size_t>(n - lo)]; };
  for (long j = 0; j < m; ++j) at(j) = frac(static_cast<long double>(base[static_cast<std::size_t>(j)]));

  const std::int64_t fm = p.leading();
  const std::int64_t f0 = p.trailing();
  for (long n = m; n <= hi; ++n) {
    long double s = 0;
    for (long k = 0; k < m; ++k) s -= static_cast<long double>(p[k]) * at(n - m + k);
    const std::int64_t branch = rng && std::abs(fm) > 1 ? rng->integer(0, std::abs(fm) - 1) : 0;
    at(n) = frac((frac(s) + static_cast<long double>(branch)) / static_cast<long double>(fm));
  }
  for (long n = -1; n >= lo; --n) {
    long double s = 0;
    for (long k = 1; k <= m; ++k) s -= static_cast<long double>(p[k]) * at(n + k);
    const std::int64_t branch = rng && std::abs(f0) > 1 ? rng->integer(0, std::abs(f0) - 1) : 0;
    at(n) = frac((frac(s) + static_cast<long double>(branch)) / static_cast<long double>(f0));
  }
  std::vector<Torus> t;
  t.reserve(x.size());
  for (auto v : x) t.emplace_back(static_cast<double>(v));
  return {TorusWindow(lo, std::move(t))};
}

XfPoint random_point(const LaurentPoly& f, long lo, long hi, Rng& rng) {
  const long m = f.degree();
  std::vector<double> base;
  for (long j = 0; j < m; ++j) base.push_back(rng.uniform());
  return extend_point(f, base, lo, hi, &rng);
}

double point_distance(const XfPoint& x, const XfPoint& y, long k, long m) {
  double d = 0.0;
  for (long j = 0; j < m; ++j) d = std::max(d, torus_distance(x.at(k + j), y.at(k + j)));
  return d;
}

}  // namespace homoclinic
