#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "homoclinic/homoclinic.hpp"
#include "homoclinic/symcover.hpp"
#include "homoclinic/xf_point.hpp"

namespace homoclinic {

/// w_n = sum_theta c_theta theta^n over the circle roots of f.
class CentralVector {
 public:
  CentralVector() = default;
  CentralVector(std::vector<Complex> roots, std::vector<Complex> coeffs);
  /// Zero vector over the circle roots of `hd`.
  static CentralVector zero(const HomoclinicData& hd);
  /// w-circ itself: c_theta = b_theta / (f_m theta).
  static CentralVector w_circ(const HomoclinicData& hd);

  const std::vector<Complex>& roots() const { return roots_; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  /// Real part of the realized sequence at n.
  double at(long n) const;
  /// Largest imaginary part over [lo, hi]; zero for conjugate-symmetric coefficients.
  double imag_defect(long lo, long hi) const;
  RealWindow realize(long lo, long hi) const;
  /// sigma-bar^k: multiplies c_theta by theta^k.
  CentralVector shifted(long k) const;
  /// sum |c_theta|, an upper bound for the sup norm.
  double coeff_norm() const;
  /// max |c_theta - c'_theta|
  double distance(const CentralVector& other) const;

  CentralVector& operator+=(const CentralVector& o);
  friend CentralVector operator+(CentralVector a, const CentralVector& b) { return a += b; }
  friend CentralVector operator-(CentralVector a, const CentralVector& b);
  friend CentralVector operator*(Complex s, CentralVector a);

 private:
  std::vector<Complex> roots_;
  std::vector<Complex> coeffs_;
};

/// xi-bar*(v)_k = sum_{n>=0} v_n w-_{k-n} + sum_{n<0} v_n w+_{k-n} on
/// [out_lo, out_hi]. Zero tails are exact; periodic and unknown tails are
/// truncated against the decay of w+ (right) and w- (left), throwing
/// NumericalError when the bound exceeds tol.
RealWindow xi_star_bar(const HomoclinicData& hd, const CoverSeq& v, long out_lo, long out_hi,
                       double tol = 1e-10);

/// d(n, v) = sigma-bar^n xi-bar*(v) - xi-bar*(sigma-bar^n v) for finite-support v.
CentralVector cocycle_d(const HomoclinicData& hd, long n, const IntWindow& v);

enum class Verdict { bounded, growing, inconclusive };
std::string to_string(Verdict v);

struct Membership {
  /// Bound on sup_{m,n>=0} |sum_{k=-m}^{n} v_k theta^k|, maximized over circle roots.
  double bound = 0.0;
  Verdict verdict = Verdict::inconclusive;
};

/// Partial-sum test for V_f. Zero and periodic tails give exact verdicts;
/// unknown tails compare growth of the bound between nested windows
/// W/4 and W (ratio <= 1.5 bounded, >= 2.5 growing, inconclusive between).
Membership vf_membership(const HomoclinicData& hd, const IntWindow& v);

/// f(sigma-bar) applied to the [0,1) lift of x, rounded: an element of Z_f.
CoverSeq sample_Zf(const LaurentPoly& f, const XfPoint& x, double tol = 1e-8);

struct CorrectionReport {
  /// xi-bar*(f(sigma-bar) y) - y, fitted in the central basis.
  CentralVector w;
  /// max |raw - realization| over the check window
  double fit_residual = 0.0;
  /// max |f(sigma-bar) realization| over the check window
  double kernel_residual = 0.0;
  double y_norm = 0.0;
  /// sup of the raw correction over the check window
  double correction_norm = 0.0;
  /// sup of xi-bar*(f(sigma-bar) y) over the check window
  double image_norm = 0.0;
};

/// Needs y on a window around [check_lo, check_hi] wide enough for
/// xi_star_bar's truncation bound. The fit uses coordinates 0..m-1 and is
/// verified on the whole check window.
CorrectionReport central_correction(const HomoclinicData& hd, const RealWindow& y, long check_lo,
                                    long check_hi, double tol = 1e-7);

struct SkewPoint {
  IntWindow v;  // zero tail
  CentralVector w;
};

/// tau(v, w) = (sigma-bar v, sigma-bar w + d(1, v))
SkewPoint tau_step(const HomoclinicData& hd, const SkewPoint& p);
/// zeta-bar(v, w) = xi-bar*(v) + w
RealWindow zeta_bar(const HomoclinicData& hd, const SkewPoint& p, long out_lo, long out_hi);
/// zeta = rho o zeta-bar
XfPoint zeta(const HomoclinicData& hd, const SkewPoint& p, long out_lo, long out_hi);

struct DiskCount {
  BigInt count;
  double entropy = 0.0;
};

/// Words of length N over `alphabet` whose prefix sums sum_{k<=j} v_k theta^k
/// all stay in the closed disk of radius c (|theta| = 1). States are the
/// rotated partial sums, merged when they agree to `grid`; the default merges
/// only coincident states, coarser grids give an approximate count.
DiskCount disk_count(Complex theta, double c, const std::vector<std::int64_t>& alphabet, long N,
                     double grid = 1e-9, std::size_t state_budget = 5000000);

/// Same count by depth-first enumeration of all words.
DiskCount disk_count_enumerate(Complex theta, double c, const std::vector<std::int64_t>& alphabet,
                               long N, std::uint64_t node_budget = 200000000);

struct WindowEntropy {
  double entropy = 0.0;
  std::size_t distinct = 0;
  /// (samples seen, distinct words, estimate) at a few checkpoints.
  std::vector<std::tuple<long, std::size_t, double>> checkpoints;
};

/// (1/N) log #{distinct length-N words of sample_Zf(x)} over Haar samples x.
WindowEntropy zf_window_entropy(const LaurentPoly& f, long N, long samples, std::uint64_t seed);

}  // namespace homoclinic
