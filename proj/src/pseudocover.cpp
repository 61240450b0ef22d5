#include "homoclinic/pseudocover.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <unordered_set>

#include "homoclinic/errors.hpp"
#include "homoclinic/random.hpp"

namespace homoclinic {

CentralVector::CentralVector(std::vector<Complex> roots, std::vector<Complex> coeffs)
    : roots_(std::move(roots)), coeffs_(std::move(coeffs)) {
  if (roots_.size() != coeffs_.size()) throw InvalidArgument("CentralVector: size mismatch");
}

CentralVector CentralVector::zero(const HomoclinicData& hd) {
  auto roots = hd.spectrum().roots_of(RootClass::circle);
  std::vector<Complex> c(roots.size(), Complex(0.0));
  return {std::move(roots), std::move(c)};
}

CentralVector CentralVector::w_circ(const HomoclinicData& hd) {
  std::vector<Complex> roots;
  std::vector<Complex> c;
  const double fm = static_cast<double>(hd.poly().leading());
  const auto& all = hd.spectrum().roots;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (hd.spectrum().tags[i] != RootClass::circle) continue;
    roots.push_back(all[i]);
    c.push_back(hd.b()[i] / (fm * all[i]));
  }
  return {std::move(roots), std::move(c)};
}

double CentralVector::at(long n) const {
  std::complex<long double> acc = 0;
  for (std::size_t i = 0; i < roots_.size(); ++i)
    acc += std::complex<long double>(coeffs_[i].real(), coeffs_[i].imag()) *
           std::pow(std::complex<long double>(roots_[i].real(), roots_[i].imag()), static_cast<long double>(n));
  return static_cast<double>(acc.real());
}

double CentralVector::imag_defect(long lo, long hi) const {
  double worst = 0.0;
  for (long n = lo; n <= hi; ++n) {
    Complex acc = 0;
    for (std::size_t i = 0; i < roots_.size(); ++i) acc += coeffs_[i] * std::pow(roots_[i], static_cast<double>(n));
    worst = std::max(worst, std::abs(acc.imag()));
  }
  return worst;
}

RealWindow CentralVector::realize(long lo, long hi) const {
  std::vector<double> v;
  for (long n = lo; n <= hi; ++n) v.push_back(at(n));
  return RealWindow(lo, std::move(v));
}

CentralVector CentralVector::shifted(long k) const {
  CentralVector out = *this;
  for (std::size_t i = 0; i < roots_.size(); ++i) {
    const std::complex<long double> t(roots_[i].real(), roots_[i].imag());
    const auto p = std::pow(t, static_cast<long double>(k));
    out.coeffs_[i] *= Complex(static_cast<double>(p.real()), static_cast<double>(p.imag()));
  }
  return out;
}

double CentralVector::coeff_norm() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::abs(c);
  return s;
}

double CentralVector::distance(const CentralVector& other) const {
  if (other.roots_.size() != roots_.size()) throw InvalidArgument("CentralVector: basis mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) d = std::max(d, std::abs(coeffs_[i] - other.coeffs_[i]));
  return d;
}

CentralVector& CentralVector::operator+=(const CentralVector& o) {
  if (roots_.empty() && coeffs_.empty()) return *this = o;
  if (o.roots_.size() != roots_.size()) throw InvalidArgument("CentralVector: basis mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

CentralVector operator-(CentralVector a, const CentralVector& b) { return a += Complex(-1.0) * b; }

CentralVector operator*(Complex s, CentralVector a) {
  for (auto& c : a.coeffs_) c *= s;
  return a;
}

namespace {

struct SideBounds {
  double cm = 0.0;   // |w+_t| <= cm * lm^t for t >= 1
  double lm = 0.0;
  double cp = 0.0;   // |w-_t| <= cp * lp^(-t) ... written with q = 1/lambda+: |w-_t| <= cp * q^|t| for t <= 0
  double q = 0.0;
};

SideBounds side_bounds(const HomoclinicData& hd) {
  SideBounds s;
  const double fm = std::abs(static_cast<double>(hd.poly().leading()));
  double sm = 0.0;
  double sp = 0.0;
  for (std::size_t i = 0; i < hd.b().size(); ++i) {
    if (hd.spectrum().tags[i] == RootClass::minus) sm += std::abs(hd.b()[i]);
    if (hd.spectrum().tags[i] == RootClass::plus) sp += std::abs(hd.b()[i]);
  }
  s.lm = hd.lambda_minus();
  if (sm > 0) s.cm = sm / (fm * s.lm);
  const double lp = hd.lambda_plus();
  if (sp > 0) {
    s.q = 1.0 / lp;
    s.cp = sp / (fm * lp);
  }
  return s;
}

}  // namespace

RealWindow xi_star_bar(const HomoclinicData& hd, const CoverSeq& cv, long out_lo, long out_hi, double tol) {
  if (out_hi < out_lo) throw InvalidArgument("xi_star_bar: empty output window");
  const IntWindow& v = cv.v;
  long L = v.lo();
  long U = v.hi();
  if (v.tail().kind != TailKind::zero) {
    const SideBounds sb = side_bounds(hd);
    const double bound = static_cast<double>(std::max(cv.alphabet_bound, sup_norm(v)));
    auto left = [&](long lo_edge) {
      return bound * sb.cm * std::pow(sb.lm, static_cast<double>(out_lo - lo_edge + 1)) / (1.0 - sb.lm);
    };
    auto right = [&](long hi_edge) {
      return bound * sb.cp * std::pow(sb.q, static_cast<double>(hi_edge - out_hi + 1)) / (1.0 - sb.q);
    };
    if (v.tail().kind == TailKind::periodic) {
      L = std::min(out_lo, 0L);
      U = std::max(out_hi, -1L);
      while (left(L) > tol / 2) --L;
      while (right(U) > tol / 2) ++U;
    } else {
      if (L > 0 || U < -1 || out_lo < L || out_hi > U)
        throw NumericalError("xi_star_bar: window must contain index 0 and the output window");
      const double err = left(L) + right(U);
      if (!(err <= tol))
        throw NumericalError("xi_star_bar: truncation bound " + std::to_string(err) + " exceeds tol");
    }
  }

  const long t_lo = out_lo - U;
  const long t_hi = out_hi - L;
  std::vector<double> wp, wm;
  for (long t = t_lo; t <= t_hi; ++t) {
    wp.push_back(hd.plus(t));
    wm.push_back(hd.minus(t));
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(out_hi - out_lo + 1));
  for (long k = out_lo; k <= out_hi; ++k) {
    double acc = 0.0;
    for (long n = L; n <= U; ++n) {
      const std::int64_t vn = v.at(n);
      if (vn == 0) continue;
      const auto idx = static_cast<std::size_t>(k - n - t_lo);
      acc += static_cast<double>(vn) * (n >= 0 ? wm[idx] : wp[idx]);
    }
    out.push_back(acc);
  }
  return RealWindow(out_lo, std::move(out));
}

CentralVector cocycle_d(const HomoclinicData& hd, long n, const IntWindow& v) {
  CentralVector d = CentralVector::zero(hd);
  if (hd.expansive() || n == 0) return d;
  if (v.tail().kind != TailKind::zero) throw InvalidArgument("cocycle_d: v must have finite support");
  const CentralVector wc = CentralVector::w_circ(hd);
  if (n > 0) {
    for (long j = 0; j < n; ++j)
      if (v.at(j) != 0) d += Complex(static_cast<double>(v.at(j))) * wc.shifted(n - j);
  } else {
    for (long i = 1; i <= -n; ++i)
      if (v.at(-i) != 0) d += Complex(static_cast<double>(-v.at(-i))) * wc.shifted(n + i);
  }
  return d;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::bounded:
      return "bounded";
    case Verdict::growing:
      return "growing";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

namespace {

// max over n in [0, up] of |sum_{k=0}^n v_k theta^k| and over m in [1, down] of |sum_{k=-m}^{-1} ...|
std::pair<double, double> partial_maxima(const IntWindow& v, Complex theta, long up, long down) {
  double fwd = 0.0;
  Complex s = 0;
  for (long k = 0; k <= up; ++k) {
    s += static_cast<double>(v.at(k)) * std::pow(theta, static_cast<double>(k));
    fwd = std::max(fwd, std::abs(s));
  }
  double bwd = 0.0;
  s = 0;
  for (long k = 1; k <= down; ++k) {
    s += static_cast<double>(v.at(-k)) * std::pow(theta, static_cast<double>(-k));
    bwd = std::max(bwd, std::abs(s));
  }
  return {fwd, bwd};
}

}  // namespace

Membership vf_membership(const HomoclinicData& hd, const IntWindow& v) {
  const auto circle = hd.spectrum().roots_of(RootClass::circle);
  if (circle.empty()) throw InvalidArgument("vf_membership: f is hyperbolic");
  Membership res;
  switch (v.tail().kind) {
    case TailKind::zero: {
      for (const auto& th : circle) {
        auto [a, b] = partial_maxima(v, th, std::max(v.hi(), 0L), std::max(-v.lo(), 0L));
        res.bound = std::max(res.bound, a + b);
      }
      res.verdict = Verdict::bounded;
      return res;
    }
    case TailKind::periodic: {
      const long p = v.tail().period;
      res.verdict = Verdict::bounded;
      for (const auto& th : circle) {
        auto [a, b] = partial_maxima(v, th, p - 1, p);
        Complex sf = 0;
        Complex sb = 0;
        for (long k = 0; k < p; ++k) sf += static_cast<double>(v.at(k)) * std::pow(th, static_cast<double>(k));
        for (long k = 1; k <= p; ++k) sb += static_cast<double>(v.at(-k)) * std::pow(th, static_cast<double>(-k));
        const double gap = std::abs(1.0 - std::pow(th, static_cast<double>(p)));
        if (gap < 1e-12) {
          if (std::abs(sf) > 1e-9 || std::abs(sb) > 1e-9) {
            res.verdict = Verdict::growing;
            res.bound = std::numeric_limits<double>::infinity();
            return res;
          }
          res.bound = std::max(res.bound, a + b);
          continue;
        }
        res.bound = std::max(res.bound, 2.0 * (std::abs(sf) + std::abs(sb)) / gap + a + b);
      }
      return res;
    }
    default:
      break;
  }
  const long W = std::min(-v.lo(), v.hi());
  if (W < 8) throw InvalidArgument("vf_membership: window must contain [-8, 8]");
  auto measure = [&](long w) {
    double m = 0.0;
    for (const auto& th : circle) {
      auto [a, b] = partial_maxima(v, th, w, w);
      m = std::max(m, a + b);
    }
    return m;
  };
  const double big = measure(W);
  const double small = measure(W / 4);
  res.bound = big;
  if (big < 1e-12) {
    res.verdict = Verdict::bounded;
    return res;
  }
  const double ratio = big / std::max(small, 1e-300);
  res.verdict = ratio <= 1.5 ? Verdict::bounded : ratio >= 2.5 ? Verdict::growing : Verdict::inconclusive;
  return res;
}

CoverSeq sample_Zf(const LaurentPoly& f, const XfPoint& x, double tol) { return decode(f, x, tol); }

CorrectionReport central_correction(const HomoclinicData& hd, const RealWindow& y, long check_lo,
                                    long check_hi, double tol) {
  if (hd.expansive()) throw InvalidArgument("central_correction: f is hyperbolic");
  const LaurentPoly& f = hd.poly();
  const long m = f.degree();
  if (check_lo > 0 || check_hi < m - 1) throw InvalidArgument("central_correction: check window must contain [0, m-1]");

  const RealWindow image_real = apply_poly_shift(f, RealWindow(y.lo(), std::vector<double>(y.values().begin(), y.values().end())));
  std::vector<std::int64_t> vi;
  for (double r : image_real.values()) {
    const double q = std::nearbyint(r);
    if (std::abs(r - q) > 1e-8) throw InvalidArgument("central_correction: f(sigma-bar) y is not integer");
    vi.push_back(static_cast<std::int64_t>(q));
  }
  const CoverSeq cv{IntWindow(image_real.lo(), std::move(vi)), one_norm(f)};
  const RealWindow image = xi_star_bar(hd, cv, check_lo, check_hi);

  CorrectionReport rep;
  std::vector<double> raw;
  for (long n = check_lo; n <= check_hi; ++n) {
    raw.push_back(image[n] - y[n]);
    rep.correction_norm = std::max(rep.correction_norm, std::abs(raw.back()));
    rep.image_norm = std::max(rep.image_norm, std::abs(image[n]));
    rep.y_norm = std::max(rep.y_norm, std::abs(y[n]));
  }

  const auto roots = hd.spectrum().roots_of(RootClass::circle);
  const auto d = static_cast<Eigen::Index>(roots.size());
  Eigen::MatrixXcd a(m, d);
  Eigen::VectorXcd rhs(m);
  for (long n = 0; n < m; ++n) {
    for (Eigen::Index j = 0; j < d; ++j) a(n, j) = std::pow(roots[static_cast<std::size_t>(j)], static_cast<double>(n));
    rhs(n) = raw[static_cast<std::size_t>(n - check_lo)];
  }
  const Eigen::VectorXcd c = a.colPivHouseholderQr().solve(rhs);
  std::vector<Complex> coeffs(c.data(), c.data() + c.size());
  rep.w = CentralVector(roots, std::move(coeffs));

  const RealWindow real = rep.w.realize(check_lo, check_hi);
  for (long n = check_lo; n <= check_hi; ++n)
    rep.fit_residual = std::max(rep.fit_residual, std::abs(raw[static_cast<std::size_t>(n - check_lo)] - real[n]));
  for (long n = check_lo; n + m <= check_hi; ++n) {
    double acc = 0.0;
    for (long k = 0; k <= m; ++k) acc += static_cast<double>(f[k]) * real[n + k];
    rep.kernel_residual = std::max(rep.kernel_residual, std::abs(acc));
  }
  if (!(rep.fit_residual < tol))
    throw NumericalError("central_correction: fit residual " + std::to_string(rep.fit_residual) + " exceeds tol");
  return rep;
}

SkewPoint tau_step(const HomoclinicData& hd, const SkewPoint& p) {
  return {p.v.shifted(1), p.w.shifted(1) + cocycle_d(hd, 1, p.v)};
}

RealWindow zeta_bar(const HomoclinicData& hd, const SkewPoint& p, long out_lo, long out_hi) {
  RealWindow out = xi_star_bar(hd, {p.v, sup_norm(p.v)}, out_lo, out_hi);
  for (long n = out_lo; n <= out_hi; ++n) out[n] += p.w.at(n);
  return out;
}

XfPoint zeta(const HomoclinicData& hd, const SkewPoint& p, long out_lo, long out_hi) {
  return {to_torus(zeta_bar(hd, p, out_lo, out_hi))};
}

namespace {

void check_disk_args(Complex theta, double c, const std::vector<std::int64_t>& alphabet, long N) {
  if (std::abs(std::abs(theta) - 1.0) > 1e-9) throw InvalidArgument("disk_count: |theta| must be 1");
  if (c < 0) throw InvalidArgument("disk_count: radius must be nonnegative");
  if (alphabet.empty()) throw InvalidArgument("disk_count: empty alphabet");
  if (N < 1) throw InvalidArgument("disk_count: N must be positive");
}

constexpr double kDiskSlack = 1e-9;

}  // namespace

DiskCount disk_count(Complex theta, double c, const std::vector<std::int64_t>& alphabet, long N,
                     double grid, std::size_t state_budget) {
  check_disk_args(theta, c, alphabet, N);
  if (!(grid > 0)) throw InvalidArgument("disk_count: grid must be positive");
  const Complex back = std::conj(theta);
  const double limit = c * c + kDiskSlack;
  using Key = std::pair<long long, long long>;
  auto key = [&](Complex z) {
    return Key(std::llround(z.real() / grid), std::llround(z.imag() / grid));
  };
  // rotated partial sums R_j = theta^{-j} S_j, R_{j+1} = conj(theta) R_j + v_{j+1}
  std::map<Key, std::pair<Complex, BigInt>> states;
  for (auto a : alphabet) {
    const Complex z(static_cast<double>(a), 0.0);
    if (std::norm(z) > limit) continue;
    auto& slot = states[key(z)];
    if (slot.second == 0) slot.first = z;
    slot.second += 1;
  }
  for (long j = 1; j < N; ++j) {
    std::map<Key, std::pair<Complex, BigInt>> next;
    for (const auto& [k, st] : states) {
      for (auto a : alphabet) {
        const Complex z = back * st.first + static_cast<double>(a);
        if (std::norm(z) > limit) continue;
        auto& slot = next[key(z)];
        if (slot.second == 0) slot.first = z;
        slot.second += st.second;
      }
    }
    if (next.size() > state_budget) throw NumericalError("disk_count: state budget exceeded");
    states = std::move(next);
  }
  DiskCount out;
  out.count = 0;
  for (const auto& [k, st] : states) out.count += st.second;
  out.entropy = out.count > 0 ? log_bigint(out.count) / static_cast<double>(N)
                              : -std::numeric_limits<double>::infinity();
  return out;
}

DiskCount disk_count_enumerate(Complex theta, double c, const std::vector<std::int64_t>& alphabet, long N,
                               std::uint64_t node_budget) {
  check_disk_args(theta, c, alphabet, N);
  const double limit = c * c + kDiskSlack;
  std::vector<Complex> powers;
  for (long j = 0; j < N; ++j) powers.push_back(std::pow(theta, static_cast<double>(j)));
  std::uint64_t nodes = 0;
  std::uint64_t count = 0;
  auto dfs = [&](auto&& self, long j, Complex s) -> void {
    if (j == N) {
      ++count;
      return;
    }
    for (auto a : alphabet) {
      if (++nodes > node_budget) throw NumericalError("disk_count_enumerate: budget exceeded");
      const Complex t = s + static_cast<double>(a) * powers[static_cast<std::size_t>(j)];
      if (std::norm(t) <= limit) self(self, j + 1, t);
    }
  };
  dfs(dfs, 0, Complex(0.0));
  DiskCount out;
  out.count = count;
  out.entropy = count > 0 ? std::log(static_cast<double>(count)) / static_cast<double>(N)
                          : -std::numeric_limits<double>::infinity();
  return out;
}

WindowEntropy zf_window_entropy(const LaurentPoly& f, long N, long samples, std::uint64_t seed) {
  if (N < 1 || samples < 1) throw InvalidArgument("zf_window_entropy: N and samples must be positive");
  const LaurentPoly p = f.shifted_to_zero();
  const long m = p.degree();
  std::unordered_set<std::string> words;
  WindowEntropy out;
  std::vector<long> marks;
  for (long s = 1000; s < samples; s *= 10) marks.push_back(s);
  marks.push_back(samples);
  std::size_t next_mark = 0;
  std::string key(static_cast<std::size_t>(N), '\0');
  for (long i = 0; i < samples; ++i) {
    Rng rng(seed, static_cast<std::uint64_t>(i));
    const XfPoint x = random_point(p, 0, N + m - 1, rng);
    const CoverSeq z = sample_Zf(p, x);
    for (long k = 0; k < N; ++k) key[static_cast<std::size_t>(k)] = static_cast<char>(z.v[k]);
    words.insert(key);
    if (i + 1 == marks[next_mark]) {
      const double est = std::log(static_cast<double>(words.size())) / static_cast<double>(N);
      out.checkpoints.emplace_back(i + 1, words.size(), est);
      ++next_mark;
    }
  }
  out.distinct = words.size();
  out.entropy = std::log(static_cast<double>(out.distinct)) / static_cast<double>(N);
  return out;
}

}  // namespace homoclinic
