#pragma once

#include <span>

#include "homoclinic/laurent.hpp"
#include "homoclinic/random.hpp"
#include "homoclinic/seq_window.hpp"

namespace homoclinic {

/// A point of X_f, known through its coordinates on a window.
struct XfPoint {
  TorusWindow coords;

  long lo() const { return coords.lo(); }
  long hi() const { return coords.hi(); }
  Torus at(long n) const { return coords.at(n); }
  /// alpha_f^k x, i.e. the window shifted so that index n reads x_{n+k}.
  XfPoint alpha(long k = 1) const { return {coords.shifted(k)}; }
};

/// max_n ||(f(sigma) x)_n|| over the indices the window determines.
double relation_residual(const LaurentPoly& f, const XfPoint& x);

/// Extends coordinates x_0..x_{m-1} to [lo, hi] through the relation
/// f(sigma) x = 0. When |f_m| (forward) or |f_0| (backward) exceeds 1 the
/// preimage branch is drawn from `rng`, or branch 0 is taken without one.
XfPoint extend_point(const LaurentPoly& f, std::span<const double> base, long lo, long hi,
                     Rng* rng = nullptr);

/// Haar-distributed point of X_f on [lo, hi].
XfPoint random_point(const LaurentPoly& f, long lo, long hi, Rng& rng);

/// d(alpha^k x, alpha^k y): max torus distance over coordinates k..k+m-1.
double point_distance(const XfPoint& x, const XfPoint& y, long k, long m);

}  // namespace homoclinic
