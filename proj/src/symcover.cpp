#include "homoclinic/symcover.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "homoclinic/errors.hpp"

namespace homoclinic {

std::int64_t sup_norm(const IntWindow& v) {
  std::int64_t s = 0;
  for (auto x : v.values()) s = std::max(s, x < 0 ? -x : x);
  return s;
}

namespace {

void require_expansive(const HomoclinicData& hd, const char* what) {
  if (!hd.expansive())
    throw InvalidArgument(std::string(what) + ": f is not expansive; use the pseudo-cover commands");
}

}  // namespace

RealWindow xi_bar(const HomoclinicData& hd, const CoverSeq& cv, long out_lo, long out_hi, double tol) {
  require_expansive(hd, "xi_bar");
  if (out_hi < out_lo) throw InvalidArgument("xi_bar: empty output window");
  const IntWindow& v = cv.v;
  const long lo = v.lo();
  const long hi = v.hi();
  std::vector<double> out(static_cast<std::size_t>(out_hi - out_lo + 1), 0.0);

  if (v.tail().kind == TailKind::periodic) {
    const long p = v.tail().period;
    const double lam = hd.decay_rate();
    const double c = hd.decay_constant();
    // |w_t| <= C lam^|t|; keep terms until the remaining geometric tail is below 1e-18
    long reach = 1;
    if (lam > 0.0) reach = static_cast<long>(std::ceil(std::log(1e-18 * (1.0 - lam) / std::max(c, 1e-300)) / std::log(lam))) + 1;
    reach = std::max(reach, 1L);
    std::vector<double> kernel(static_cast<std::size_t>(p), 0.0);
    for (long r = 0; r < p; ++r)
      for (long j = -(reach / p) - 2; j <= reach / p + 2; ++j) kernel[static_cast<std::size_t>(r)] += hd.delta(r - j * p);
    for (long n = out_lo; n <= out_hi; ++n) {
      double acc = 0.0;
      for (long k = lo; k < lo + p; ++k) {
        const long t = ((n - k) % p + p) % p;
        acc += static_cast<double>(v[k]) * kernel[static_cast<std::size_t>(t)];
      }
      out[static_cast<std::size_t>(n - out_lo)] = acc;
    }
    Tail tail = out_hi - out_lo + 1 >= p ? Tail::periodic(p) : Tail::unknown();
    return RealWindow(out_lo, std::move(out), tail);
  }

  if (v.tail().kind != TailKind::zero) {
    const double lam = hd.decay_rate();
    const double bound = static_cast<double>(std::max(cv.alphabet_bound, sup_norm(v)));
    double worst = 0.0;
    for (long n = out_lo; n <= out_hi; ++n) {
      const double left = std::pow(lam, static_cast<double>(n - lo + 1));
      const double right = std::pow(lam, static_cast<double>(hi - n + 1));
      worst = std::max(worst, bound * hd.decay_constant() * (left + right) / (1.0 - lam));
    }
    if (!(worst <= tol))
      throw NumericalError("xi_bar: truncation bound " + std::to_string(worst) + " exceeds tol");
  }

  const long t_lo = out_lo - hi;
  const long t_hi = out_hi - lo;
  std::vector<double> kernel;
  kernel.reserve(static_cast<std::size_t>(t_hi - t_lo + 1));
  for (long t = t_lo; t <= t_hi; ++t) kernel.push_back(hd.delta(t));
  for (long n = out_lo; n <= out_hi; ++n) {
    double acc = 0.0;
    for (long k = lo; k <= hi; ++k)
      if (v[k] != 0) acc += static_cast<double>(v[k]) * kernel[static_cast<std::size_t>(n - k - t_lo)];
    out[static_cast<std::size_t>(n - out_lo)] = acc;
  }
  return RealWindow(out_lo, std::move(out));
}

long decay_margin(const HomoclinicData& hd, double bound, double tol) {
  require_expansive(hd, "decay_margin");
  const double lam = hd.decay_rate();
  const double c = hd.decay_constant() * bound / (1.0 - lam);
  long d = 1;
  while (2.0 * c * std::pow(lam, static_cast<double>(d)) >= tol) ++d;
  return d;
}

XfPoint xi(const HomoclinicData& hd, const CoverSeq& v, long out_lo, long out_hi, double tol) {
  return {to_torus(xi_bar(hd, v, out_lo, out_hi, tol))};
}

CoverSeq decode(const LaurentPoly& f, const XfPoint& x, double tol) {
  const LaurentPoly p = f.shifted_to_zero();
  std::vector<double> lift;
  lift.reserve(x.coords.size());
  for (const auto& t : x.coords.values()) lift.push_back(t.value());
  Tail tail = x.coords.tail().kind == TailKind::periodic ? x.coords.tail() : Tail::unknown();
  const RealWindow image = apply_poly_shift(p, RealWindow(x.lo(), std::move(lift), tail));
  std::vector<std::int64_t> v;
  v.reserve(image.size());
  double worst = 0.0;
  for (double r : image.values()) {
    const double q = std::nearbyint(r);
    worst = std::max(worst, std::abs(r - q));
    v.push_back(static_cast<std::int64_t>(q));
  }
  if (!(worst <= tol))
    throw NumericalError("decode: rounding residual " + std::to_string(worst) + " exceeds tol; not a point of X_f");
  CoverSeq out{IntWindow(image.lo(), std::move(v), image.tail()), one_norm(p)};
  if (sup_norm(out.v) > out.alphabet_bound) throw NumericalError("decode: symbol exceeds ||f||_1");
  return out;
}

long specification_gap(const HomoclinicData& hd, double eps, long* r_out) {
  require_expansive(hd, "specification_gap");
  if (!(eps > 0)) throw InvalidArgument("specification_gap: eps must be positive");
  const double lam = hd.decay_rate();
  const double norm = static_cast<double>(one_norm(hd.poly()));
  const double c = hd.decay_constant();
  long r = 0;
  while (4.0 * norm * c * std::pow(lam, static_cast<double>(r + 1)) / (1.0 - lam) >= eps) ++r;
  if (r_out) *r_out = r;
  return 2 * r + hd.poly().degree();
}

ShadowResult specification_shadow(const HomoclinicData& hd, const std::vector<ShadowBlock>& blocks_in,
                                   double eps, std::optional<long> period) {
  require_expansive(hd, "specification_shadow");
  if (blocks_in.empty()) throw InvalidArgument("specification_shadow: no blocks");
  const LaurentPoly& f = hd.poly();
  const long m = f.degree();
  ShadowResult res;
  res.n_eps = specification_gap(hd, eps, &res.r);
  const long r = res.r;

  auto blocks = blocks_in;
  std::sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].hi < blocks[i].lo) throw InvalidArgument("specification_shadow: empty block");
    if (static_cast<long>(blocks[i].point.size()) != m)
      throw InvalidArgument("specification_shadow: each block point needs m coordinates");
    if (i > 0 && blocks[i].lo - blocks[i - 1].hi < res.n_eps)
      throw InvalidArgument("specification_shadow: gap " + std::to_string(blocks[i].lo - blocks[i - 1].hi) +
                            " is below N(eps) = " + std::to_string(res.n_eps));
  }
  const long first = blocks.front().lo - r;
  const long last = blocks.back().hi + m - 1 + r;
  if (period) {
    if (*period < 1) throw InvalidArgument("specification_shadow: period must be positive");
    if (blocks.front().lo + *period - blocks.back().hi < res.n_eps)
      throw InvalidArgument("specification_shadow: period too short for the gap N(eps)");
  }

  std::vector<XfPoint> orbits;
  IntWindow word = IntWindow::filled(first, last, 0, Tail::zero());
  for (const auto& b : blocks) {
    const long a = std::min(b.lo - r, 0L);
    const long e = std::max(b.hi + 2 * m - 1 + r, m - 1);
    XfPoint x = extend_point(f, b.point, a, e);
    const XfPoint piece{x.coords.slice(b.lo - r, b.hi + 2 * m - 1 + r)};
    const CoverSeq local = decode(f, piece);
    for (long k = local.v.lo(); k <= local.v.hi(); ++k) word[k] = local.v[k];
    orbits.push_back(std::move(x));
  }

  long out_lo = blocks.front().lo;
  long out_hi = blocks.back().hi + m - 1;
  if (period) {
    std::vector<std::int64_t> one(static_cast<std::size_t>(*period), 0);
    for (long k = first; k <= last; ++k) one[static_cast<std::size_t>(k - first)] = word[k];
    word = IntWindow(first, std::move(one), Tail::periodic(*period));
    out_hi = std::max(out_hi, out_lo + *period + m - 1);
  }
  res.symbols = {word, one_norm(f)};
  res.y = xi(hd, res.symbols, out_lo, out_hi);

  for (std::size_t i = 0; i < blocks.size(); ++i) {
    double worst = 0.0;
    for (long k = blocks[i].lo; k <= blocks[i].hi; ++k)
      worst = std::max(worst, point_distance(orbits[i], res.y, k, m));
    res.block_errors.push_back(worst);
  }
  if (period) {
    res.period = period;
    const RealWindow direct = xi_bar(hd, res.symbols, out_lo, out_hi);
    double worst = 0.0;
    for (long n = out_lo; n + *period <= out_hi; ++n)
      worst = std::max(worst, torus_distance(Torus(direct[n + *period]), Torus(direct[n])));
    res.period_residual = worst;
  }
  return res;
}

BetaEncoding beta_encode(const HomoclinicData& hd, const XfPoint& x, long lo, long hi, long burn_in) {
  if (!hd.spectrum().flags.pisot) throw InvalidArgument("beta_encode: f is not Pisot");
  const LaurentPoly& f = hd.poly();
  if (f.leading() != 1) throw InvalidArgument("beta_encode: f must have leading coefficient 1");
  const long m = f.degree();
  const long start = lo - burn_in;
  if (x.lo() > start || x.hi() < hi + m - 1)
    throw InvalidArgument("beta_encode: point window must cover [lo - burn_in, hi + m - 1]");
  const auto beta = static_cast<long double>(*hd.spectrum().pisot_root());
  const long max_digit = static_cast<long>(std::ceil(beta)) - 1;

  // left eigenvector of the companion matrix for beta, normalized so l_{m-1} = 1
  std::vector<long double> ell(static_cast<std::size_t>(m), 0.0L);
  for (long j = 0; j < m; ++j) {
    long double acc = 0;
    for (long i = m; i > j; --i) acc = acc * beta + static_cast<long double>(f[i]);
    ell[static_cast<std::size_t>(j)] = acc;
  }
  auto dot = [&](const std::vector<long double>& y) {
    long double s = 0;
    for (long j = 0; j < m; ++j) s += ell[static_cast<std::size_t>(j)] * y[static_cast<std::size_t>(j)];
    return s;
  };

  std::vector<long double> y(static_cast<std::size_t>(m));
  for (long j = 0; j < m; ++j) y[static_cast<std::size_t>(j)] = x.at(start + j).value();
  y[static_cast<std::size_t>(m - 1)] += std::floor(-dot(y));

  std::vector<std::int64_t> digits;
  for (long n = start; n <= hi; ++n) {
    // keep the integer parts of the lift, take fractional parts from x
    for (long j = 0; j < m; ++j) {
      auto& yj = y[static_cast<std::size_t>(j)];
      const long double xf = x.at(n + j).value();
      yj = xf + std::nearbyint(yj - xf);
    }
    const long double t = -dot(y);
    long d = static_cast<long>(std::floor(beta * t));
    d = std::clamp(d, 0L, max_digit);
    digits.push_back(d);
    long double next = static_cast<long double>(d);
    for (long k = 0; k < m; ++k) next -= static_cast<long double>(f[k]) * y[static_cast<std::size_t>(k)];
    y.erase(y.begin());
    y.push_back(next);
  }
  BetaEncoding out;
  out.beta = static_cast<double>(beta);
  out.digits = {IntWindow(start, std::move(digits), Tail::zero()), max_digit};
  return out;
}

std::vector<int> quasi_greedy_one(double beta, int n) {
  if (!(beta > 1.0)) throw InvalidArgument("quasi_greedy_one: beta must exceed 1");
  std::vector<int> greedy;
  long double t = 1.0L;
  bool finite = false;
  for (int i = 0; i < n; ++i) {
    const long double bt = static_cast<long double>(beta) * t;
    long double d = std::floor(bt);
    if (std::abs(bt - std::nearbyint(bt)) < 1e-9L) d = std::nearbyint(bt);
    greedy.push_back(static_cast<int>(d));
    t = bt - d;
    if (t < 1e-9L) {
      finite = true;
      break;
    }
  }
  if (!finite) return greedy;
  std::vector<int> block = greedy;
  block.back() -= 1;
  std::vector<int> out;
  while (static_cast<int>(out.size()) < n) out.push_back(block[out.size() % block.size()]);
  return out;
}

bool parry_admissible(const IntWindow& v, double beta, int depth) {
  const auto ref = quasi_greedy_one(beta, depth);
  const long len = static_cast<long>(ref.size());
  for (long s = v.lo(); s <= v.hi(); ++s) {
    for (long i = 0; i < len && s + i <= v.hi(); ++i) {
      const auto a = v[s + i];
      const auto b = ref[static_cast<std::size_t>(i)];
      if (a < b) break;
      if (a > b) return false;
    }
  }
  return true;
}

namespace {

struct Search {
  const LaurentPoly& f;
  long m;
  const std::vector<std::int64_t>& r;  // current sequence, index n at r[n - lo]
  long lo;
  long hi;
  std::int64_t bound;
  std::int64_t coeff_bound;
  long a;
  long b;
  std::vector<std::int64_t> h;  // h_j at h[j - a]
  long nodes = 0;
  long budget;
  bool exceeded = false;

  std::int64_t hv(long j) const { return j < a || j > b ? 0 : h[static_cast<std::size_t>(j - a)]; }
  bool ok(long n) const {
    if (n < lo || n > hi) return true;
    std::int64_t out = r[static_cast<std::size_t>(n - lo)];
    for (long k = 0; k <= m; ++k) out -= f[k] * hv(n + k);
    return std::abs(out) <= bound;
  }
  bool dfs(long j) {
    if (j < a) {
      for (long n = a - m; n < a; ++n)
        if (!ok(n)) return false;
      return true;
    }
    for (std::int64_t val = coeff_bound; val >= -coeff_bound; --val) {
      if (++nodes > budget) {
        exceeded = true;
        return false;
      }
      h[static_cast<std::size_t>(j - a)] = val;
      if (ok(j) && dfs(j - 1)) return true;
      if (exceeded) return false;
    }
    h[static_cast<std::size_t>(j - a)] = 0;
    return false;
  }
};

// sign of (x - y) under the order whose leading term is the highest index
int compare_lex(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y) {
  for (std::size_t i = x.size(); i-- > 0;) {
    if (x[i] != y[i]) return x[i] > y[i] ? 1 : -1;
  }
  return 0;
}

}  // namespace

ReduceResult wstar_reduce(const LaurentPoly& f_in, const CoverSeq& cv, long support_bound,
                          std::int64_t coeff_bound, long node_budget) {
  const LaurentPoly f = f_in.shifted_to_zero();
  const long m = f.degree();
  if (support_bound < 1 || coeff_bound < 1) throw InvalidArgument("wstar_reduce: bounds must be positive");
  if (sup_norm(cv.v) > cv.alphabet_bound) throw InvalidArgument("wstar_reduce: input outside the alphabet bound");
  const long lo = cv.v.lo();
  const long hi = cv.v.hi();
  std::vector<std::int64_t> r(cv.v.values().begin(), cv.v.values().end());
  // h lives on [lo + m, hi] so that f(sigma-bar) h stays inside the window
  const long h_lo = lo + m;
  const long h_hi = hi;
  ReduceResult res;
  std::vector<std::int64_t> total(static_cast<std::size_t>(std::max(0L, h_hi - h_lo + 1)), 0);
  if (h_hi < h_lo) {
    res.v = cv;
    return res;
  }
  const long seg = std::min(support_bound, h_hi - h_lo + 1);

  for (int iter = 0; iter < 100000; ++iter) {
    std::vector<std::int64_t> best(total.size(), 0);
    bool found = false;
    for (long a = h_lo; a + seg - 1 <= h_hi; ++a) {
      Search s{f, m, r, lo, hi, cv.alphabet_bound, coeff_bound, a, a + seg - 1,
               std::vector<std::int64_t>(static_cast<std::size_t>(seg), 0), 0, node_budget - res.nodes};
      const bool hit = s.dfs(a + seg - 1);
      res.nodes += s.nodes;
      if (s.exceeded) {
        res.budget_exceeded = true;
        break;
      }
      if (!hit) continue;
      std::vector<std::int64_t> cand(total.size(), 0);
      for (long j = a; j < a + seg; ++j) cand[static_cast<std::size_t>(j - h_lo)] = s.h[static_cast<std::size_t>(j - a)];
      if (compare_lex(cand, best) > 0) {
        best = std::move(cand);
        found = true;
      }
    }
    if (!found || res.budget_exceeded) break;
    for (long n = lo; n <= hi; ++n) {
      std::int64_t d = 0;
      for (long k = 0; k <= m; ++k) {
        const long j = n + k;
        if (j >= h_lo && j <= h_hi) d += f[k] * best[static_cast<std::size_t>(j - h_lo)];
      }
      r[static_cast<std::size_t>(n - lo)] -= d;
    }
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += best[i];
  }
  res.v = {IntWindow(lo, std::move(r), cv.v.tail()), cv.alphabet_bound};
  res.h = LaurentPoly(std::move(total), h_lo);
  return res;
}

}  // namespace homoclinic
