#include "homoclinic/homoclinic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "homoclinic/errors.hpp"
#include "homoclinic/random.hpp"

namespace homoclinic {

using LComplex = std::complex<long double>;

std::vector<Complex> partial_fractions(const LaurentPoly& f, const Spectrum& spectrum) {
  const auto& roots = spectrum.roots;
  const LaurentPoly p = f.shifted_to_zero();
  if (static_cast<long>(roots.size()) != p.degree())
    throw InvalidArgument("partial_fractions: spectrum does not match f");
  double scale = 1.0;
  for (const auto& r : roots) scale = std::max(scale, std::abs(r));
  const LaurentPoly dp = p.derivative();
  std::vector<Complex> b;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const LComplex ti(roots[i].real(), roots[i].imag());
    LComplex prod = 1;
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (j == i) continue;
      if (std::abs(roots[i] - roots[j]) < 1e-7 * scale)
        throw InvalidArgument("partial_fractions: repeated roots are not supported");
      prod *= ti - LComplex(roots[j].real(), roots[j].imag());
    }
    const LComplex bi = 1.0L / prod;
    const LComplex check = static_cast<long double>(p.leading()) / dp.eval(ti);
    if (std::abs(check - bi) > 1e-6L * std::abs(bi))
      throw NumericalError("partial_fractions: residue identity check failed");
    b.emplace_back(static_cast<double>(bi.real()), static_cast<double>(bi.imag()));
  }
  return b;
}

HomoclinicData::HomoclinicData(const LaurentPoly& f, Spectrum spectrum, long window)
    : poly_(f.shifted_to_zero()), spectrum_(std::move(spectrum)) {
  if (window < 1) throw InvalidArgument("HomoclinicData: window must be positive");
  b_ = partial_fractions(poly_, spectrum_);
  for (std::size_t i = 0; i < b_.size(); ++i) {
    bl_.emplace_back(b_[i].real(), b_[i].imag());
    rl_.emplace_back(spectrum_.roots[i].real(), spectrum_.roots[i].imag());
  }
  inv_fm_ = 1.0L / static_cast<long double>(poly_.leading());

  std::vector<double> vp, vm, vc;
  for (long n = -window; n <= window; ++n) {
    vp.push_back(plus(n));
    vm.push_back(minus(n));
    vc.push_back(circ(n));
  }
  w_plus_ = RealWindow(-window, vp);
  w_minus_ = RealWindow(-window, vm);
  w_circ_ = RealWindow(-window, std::move(vc));

  if (expansive()) {
    double sm = 0.0;
    double sp = 0.0;
    for (std::size_t i = 0; i < b_.size(); ++i) {
      if (spectrum_.tags[i] == RootClass::minus) sm += std::abs(b_[i]);
      if (spectrum_.tags[i] == RootClass::plus) sp += std::abs(b_[i]);
    }
    const double fm = std::abs(static_cast<double>(poly_.leading()));
    double c = 0.0;
    if (sm > 0) c = std::max(c, sm / (fm * lambda_minus()));
    if (sp > 0) c = std::max(c, sp / (fm * lambda_plus()));
    decay_constant_ = c;
    const double lam = decay_rate();
    const double edge = c * std::pow(lam, static_cast<double>(window));
    Tail t = Tail::decay(edge, 1.0 / lambda_plus(), lambda_minus());
    w_delta_ = RealWindow(-window, std::move(vp), t);
    w_plus_.set_tail(t);
    w_minus_ = RealWindow(-window, std::move(vm), t);
    w_circ_.set_tail(Tail::zero());
  }
}

double HomoclinicData::sum_over(long n, bool minus, bool circle, bool plus) const {
  LComplex acc = 0;
  for (std::size_t i = 0; i < bl_.size(); ++i) {
    const RootClass c = spectrum_.tags[i];
    if ((c == RootClass::minus && !minus) || (c == RootClass::circle && !circle) ||
        (c == RootClass::plus && !plus))
      continue;
    acc += bl_[i] * std::pow(rl_[i], static_cast<long double>(n - 1));
  }
  return static_cast<double>(acc.real() * inv_fm_);
}

double HomoclinicData::plus(long n) const {
  return n >= 1 ? sum_over(n, true, false, false) : -sum_over(n, false, true, true);
}

double HomoclinicData::minus(long n) const {
  return n >= 1 ? sum_over(n, true, true, false) : -sum_over(n, false, false, true);
}

double HomoclinicData::circ(long n) const { return sum_over(n, false, true, false); }

double HomoclinicData::delta(long n) const {
  if (!expansive()) throw InvalidArgument("w-delta exists only for expansive f");
  return plus(n);
}

double HomoclinicData::decay_rate() const {
  double lam = lambda_minus();
  if (spectrum_.has(RootClass::plus)) lam = std::max(lam, 1.0 / lambda_plus());
  return lam;
}

RationalHomoclinic exact_one_sided(const LaurentPoly& f, long n_max, std::optional<Side> side) {
  if (n_max < 0) throw InvalidArgument("exact_one_sided: n_max must be nonnegative");
  const LaurentPoly p = f.shifted_to_zero();
  const long m = p.degree();
  if (m < 1) throw InvalidArgument("exact_one_sided: degree must be at least 1");
  const auto roots = find_roots(p);
  const auto tags = unit_circle_split(p, roots);
  const bool no_plus = std::find(tags.begin(), tags.end(), RootClass::plus) == tags.end();
  const bool no_minus = std::find(tags.begin(), tags.end(), RootClass::minus) == tags.end();
  if (!no_plus && !no_minus)
    throw InvalidArgument("exact_one_sided: roots on both sides of the circle");
  const Side s = side.value_or(no_plus ? Side::minus : Side::plus);
  if (s == Side::minus && !no_plus) throw InvalidArgument("exact_one_sided: minus side needs no roots outside the circle");
  if (s == Side::plus && !no_minus) throw InvalidArgument("exact_one_sided: plus side needs no roots inside the circle");

  RationalHomoclinic out;
  out.side = s;
  std::vector<Rational> w(static_cast<std::size_t>(n_max + 1), Rational(0));
  if (s == Side::minus) {
    // w_n = 0 for n < m; w_{n+m} = (delta_{n,0} - sum_{k<m} f_k w_{n+k}) / f_m
    for (long idx = m; idx <= n_max; ++idx) {
      const long n = idx - m;
      Rational acc = n == 0 ? 1 : 0;
      for (long k = 0; k < m; ++k) {
        const long j = n + k;
        if (j >= 0) acc -= Rational(p[k]) * w[static_cast<std::size_t>(j)];
      }
      w[static_cast<std::size_t>(idx)] = acc / p.leading();
    }
    out.values = RationalWindow(0, std::move(w));
  } else {
    // w_n = 0 for n >= 1; w_n = (delta_{n,0} - sum_{k>=1} f_k w_{n+k}) / f_0, stored at n_max + n
    for (long n = 0; n >= -n_max; --n) {
      Rational acc = n == 0 ? 1 : 0;
      for (long k = 1; k <= m; ++k) {
        const long j = n + k;
        if (j <= 0) acc -= Rational(p[k]) * w[static_cast<std::size_t>(n_max + j)];
      }
      w[static_cast<std::size_t>(n_max + n)] = acc / p.trailing();
    }
    out.values = RationalWindow(-n_max, std::move(w));
  }
  return out;
}

NoHomoclinicReport verify_no_homoclinic(const HomoclinicData& hd, int trials, long window,
                                        double threshold, std::uint64_t seed) {
  if (hd.expansive()) throw InvalidArgument("expansive: homoclinic group is nontrivial");
  if (window < 4) throw InvalidArgument("verify_no_homoclinic: window too small");
  NoHomoclinicReport report;
  report.min_tail = std::numeric_limits<double>::infinity();
  std::uint64_t stream = 0;
  while (static_cast<int>(report.trials.size()) < trials) {
    Rng rng(seed, stream++);
    const long lo = rng.integer(-4, 4);
    const long len = rng.integer(1, 6);
    std::vector<std::int64_t> c;
    for (long i = 0; i < len; ++i) c.push_back(rng.integer(-3, 3));
    LaurentPoly h(std::move(c), lo);
    if (h.is_zero() || divides(hd.poly(), h)) continue;

    NoHomoclinicTrial t;
    t.h = h;
    // (h*(sigma-bar) w)_n = sum_j h_j w_{n-j}
    auto value = [&](long n) {
      double acc = 0.0;
      for (long j = h.low(); j <= h.high(); ++j)
        if (h[j] != 0) acc += static_cast<double>(h[j]) * hd.minus(n - j);
      return acc;
    };
    for (long a = window / 2; a <= window; ++a)
      for (long n : {a, -a}) t.tail = std::max(t.tail, Torus(value(n)).norm());
    t.decays = t.tail <= threshold;
    report.min_tail = std::min(report.min_tail, t.tail);
    report.all_nondecaying = report.all_nondecaying && !t.decays;
    report.trials.push_back(std::move(t));
  }
  return report;
}

LatticeHomoclinic lattice_homoclinic_2d(const HomoclinicData& hd, std::int64_t m1, std::int64_t m2) {
  const LaurentPoly& p = hd.poly();
  if (p.degree() != 2 || !hd.expansive() || std::abs(p.leading()) != 1 || std::abs(p.trailing()) != 1)
    throw InvalidArgument("lattice_homoclinic_2d: needs an expansive degree-2 f with |f_0| = |f_m| = 1");
  const double tp = hd.spectrum().roots_of(RootClass::plus).front().real();
  const double tm = hd.spectrum().roots_of(RootClass::minus).front().real();
  // y = a (1, tp), y - m = b (1, tm)
  const double a = (static_cast<double>(m2) - tm * static_cast<double>(m1)) / (tp - tm);
  LatticeHomoclinic out;
  out.point = {a, a * tp};
  out.fundamental = std::gcd(m1, m2) == 1;
  return out;
}

}  // namespace homoclinic
