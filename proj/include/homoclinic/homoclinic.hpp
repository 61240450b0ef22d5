#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "homoclinic/laurent.hpp"
#include "homoclinic/seq_window.hpp"
#include "homoclinic/spectra.hpp"

namespace homoclinic {

/// b_theta = 1 / prod_{theta' != theta} (theta - theta'), aligned with
/// `spectrum.roots`. Throws InvalidArgument on repeated roots.
std::vector<Complex> partial_fractions(const LaurentPoly& f, const Spectrum& spectrum);

/// w+, w-, w-circ (and w-delta when expansive) solving f(sigma-bar) w = delta_0.
/// Values come from the closed form, so any index can be evaluated; the
/// windows are materializations on [-window, window].
class HomoclinicData {
 public:
  HomoclinicData(const LaurentPoly& f, Spectrum spectrum, long window);

  const LaurentPoly& poly() const { return poly_; }
  const Spectrum& spectrum() const { return spectrum_; }
  const std::vector<Complex>& b() const { return b_; }
  bool expansive() const { return spectrum_.flags.expansive; }

  double plus(long n) const;
  double minus(long n) const;
  double circ(long n) const;
  /// Only for expansive f.
  double delta(long n) const;

  const RealWindow& w_plus() const { return w_plus_; }
  const RealWindow& w_minus() const { return w_minus_; }
  const RealWindow& w_circ() const { return w_circ_; }
  const std::optional<RealWindow>& w_delta() const { return w_delta_; }

  double lambda_minus() const { return spectrum_.lambda_minus(); }
  double lambda_plus() const { return spectrum_.lambda_plus(); }
  /// max(lambda-, 1/lambda+): the two-sided decay rate of w-delta.
  double decay_rate() const;
  /// C with |w-delta_n| <= C * decay_rate()^|n| (expansive only).
  double decay_constant() const { return decay_constant_; }

 private:
  double sum_over(long n, bool minus, bool circle, bool plus) const;

  LaurentPoly poly_;
  Spectrum spectrum_;
  std::vector<Complex> b_;
  std::vector<std::complex<long double>> bl_;
  std::vector<std::complex<long double>> rl_;
  long double inv_fm_;
  double decay_constant_ = 0.0;
  RealWindow w_plus_, w_minus_, w_circ_;
  std::optional<RealWindow> w_delta_;
};

enum class Side { plus, minus };

struct RationalHomoclinic {
  Side side = Side::minus;
  RationalWindow values;
};

/// Exact solution of sum_k f_k w_{n+k} = delta_{n,0} vanishing on one side.
/// Side::minus needs no roots outside the circle and returns indices
/// [0, n_max]; Side::plus needs none inside and returns [-n_max, 0]. The
/// default picks minus whenever allowed.
RationalHomoclinic exact_one_sided(const LaurentPoly& f, long n_max,
                                   std::optional<Side> side = std::nullopt);

inline TorusWindow rho(const RealWindow& w) { return to_torus(w); }

struct NoHomoclinicTrial {
  LaurentPoly h;
  /// max torus norm of rho(h*(sigma-bar) w-) over |n| in [window/2, window]
  double tail = 0.0;
  bool decays = false;
};

struct NoHomoclinicReport {
  std::vector<NoHomoclinicTrial> trials;
  double min_tail = 0.0;
  bool all_nondecaying = true;
};

/// Probe that finite-support h never turn w- into a homoclinic point. Trials
/// with h divisible by f are skipped (those give integer sequences).
NoHomoclinicReport verify_no_homoclinic(const HomoclinicData& hd, int trials, long window,
                                        double threshold, std::uint64_t seed);

/// For a degree-2 expansive f with |f_0| = |f_m| = 1: the point y of the
/// unstable line (in coordinates (x_0, x_1)) with y - m on the stable line.
/// rho(y) is homoclinic to 0; `fundamental` records gcd(m1, m2) = 1.
struct LatticeHomoclinic {
  std::array<double, 2> point{};
  bool fundamental = false;
};

LatticeHomoclinic lattice_homoclinic_2d(const HomoclinicData& hd, std::int64_t m1, std::int64_t m2);

}  // namespace homoclinic
