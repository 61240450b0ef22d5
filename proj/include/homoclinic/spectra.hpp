#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "homoclinic/laurent.hpp"
#include "homoclinic/rational.hpp"

namespace homoclinic {

using Complex = std::complex<double>;

enum class RootClass { minus, circle, plus };

std::string to_string(RootClass c);

struct SpectrumFlags {
  bool expansive = false;
  bool cyclotomic = false;
  bool pisot = false;
  bool salem = false;
  std::optional<bool> totally_irreducible;
};

struct Spectrum {
  /// f as given, shifted to low = 0 (sign kept).
  LaurentPoly poly;
  /// Sorted by modulus, then argument.
  std::vector<Complex> roots;
  std::vector<RootClass> tags;
  SpectrumFlags flags;
  double entropy_roots = 0.0;
  double entropy_integral = 0.0;
  double tol = 1e-9;
  /// Soft diagnostics, e.g. an obvious rational factor.
  std::vector<std::string> warnings;

  std::vector<Complex> roots_of(RootClass c) const;
  bool has(RootClass c) const;
  /// max |theta| over the minus part (0 if empty).
  double lambda_minus() const;
  /// min |theta| over the plus part (+inf if empty).
  double lambda_plus() const;
  /// The Pisot root, if flagged.
  std::optional<double> pisot_root() const;
};

/// All complex roots with multiplicity, Newton-polished. Conjugate pairs are
/// made exactly conjugate and near-real roots are snapped to the real axis.
std::vector<Complex> find_roots(const LaurentPoly& f, double tol = 1e-9);

/// Circle membership needs both a root of gcd(f, f*) over Q and ||theta|-1| < tol.
std::vector<RootClass> unit_circle_split(const LaurentPoly& f, std::span<const Complex> roots,
                                         double tol = 1e-9);

/// Exact test: some root of f is a root of unity.
bool is_cyclotomic(const LaurentPoly& f);

SpectrumFlags classify(const LaurentPoly& f, std::span<const Complex> roots,
                       std::span<const RootClass> tags, double tol = 1e-9);

/// log|f_m| + sum over the plus part of log|theta|.
double entropy_roots(const LaurentPoly& f, std::span<const Complex> roots,
                     std::span<const RootClass> tags);

/// int_0^1 log|f(e^{2 pi i t})| dt. Circle roots split the integral into arcs
/// handled by tanh-sinh; without them the periodic trapezoid rule is used.
/// `quad_points` caps the number of integrand evaluations.
double entropy_mahler(const LaurentPoly& f, int quad_points = 200000, double tol = 1e-9);

Spectrum analyze(const LaurentPoly& f, double tol = 1e-9, int quad_points = 200000);

/// |Res(f, u^k - 1)| = |prod_{zeta^k = 1} f(zeta)|, computed as the determinant
/// of the circulant matrix of f mod u^k - 1.
BigInt periodic_count(const LaurentPoly& f, long k);

/// |det(M^k - I)| for the companion matrix M of f; requires |f_0| = |f_m| = 1.
BigInt periodic_count_companion(const LaurentPoly& f, long k);

struct GrowthPoint {
  long k = 0;
  BigInt count;
  double log_rate = 0.0;
};

struct PeriodicGrowth {
  std::vector<GrowthPoint> points;
  double entropy = 0.0;
  /// |last log_rate - entropy|
  double final_gap = 0.0;
};

PeriodicGrowth periodic_growth(const LaurentPoly& f, long k_max);

/// Natural log of a positive big integer.
double log_bigint(const BigInt& x);

/// Coefficients of the primitive integer gcd of f and g over Q (low = 0),
/// normalized to a positive leading coefficient.
LaurentPoly gcd_over_q(const LaurentPoly& f, const LaurentPoly& g);

}  // namespace homoclinic
