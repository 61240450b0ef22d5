#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "homoclinic/homoclinic.hpp"
#include "homoclinic/xf_point.hpp"

namespace homoclinic {

/// A symbol sequence together with the alphabet bound it is promised to obey.
struct CoverSeq {
  IntWindow v;
  std::int64_t alphabet_bound = 0;
};

std::int64_t sup_norm(const IntWindow& v);

/// xi-bar(v)_n = sum_k v_k w-delta_{n-k} on [out_lo, out_hi]. Zero tails are
/// summed exactly, periodic tails through the periodized kernel, and unknown
/// tails are bounded by the alphabet bound; throws NumericalError when that
/// truncation bound exceeds `tol`.
RealWindow xi_bar(const HomoclinicData& hd, const CoverSeq& v, long out_lo, long out_hi,
                  double tol = 1e-10);

XfPoint xi(const HomoclinicData& hd, const CoverSeq& v, long out_lo, long out_hi, double tol = 1e-10);

/// Smallest distance d from the window edges such that a sequence bounded by
/// `bound` outside the window moves xi-bar by less than `tol` at d.
long decay_margin(const HomoclinicData& hd, double bound, double tol);

/// Lift to [0,1) coordinatewise, apply f(sigma-bar) and round. The output
/// window is [lo, hi - m] unless the point has a periodic tail.
CoverSeq decode(const LaurentPoly& f, const XfPoint& x, double tol = 1e-8);

struct ShadowBlock {
  long lo = 0;
  long hi = 0;
  /// Coordinates x_0..x_{m-1} of the block's point at time 0.
  std::vector<double> point;
};

struct ShadowResult {
  XfPoint y;
  /// Extension length on each side of a block; the required gap is 2r + m.
  long r = 0;
  long n_eps = 0;
  /// Worst d(alpha^k x_I, alpha^k y) over k in I, per block.
  std::vector<double> block_errors;
  std::optional<long> period;
  /// max over the checked window of d(alpha^p y, y), when periodic.
  double period_residual = 0.0;
  /// The symbol sequence whose image is y.
  CoverSeq symbols;
};

/// Smallest N such that blocks separated by gaps of at least N can be
/// eps-shadowed, from the decay bound on w-delta.
long specification_gap(const HomoclinicData& hd, double eps, long* r_out = nullptr);

ShadowResult specification_shadow(const HomoclinicData& hd, const std::vector<ShadowBlock>& blocks,
                                   double eps, std::optional<long> period = std::nullopt);

struct BetaEncoding {
  CoverSeq digits;
  double beta = 0.0;
};

/// Two-sided greedy beta-expansion for Pisot f (leading coefficient 1).
/// Needs x on [lo - burn_in, hi + m - 1]; digits are produced on
/// [lo - burn_in, hi] with no digits assumed before the start.
BetaEncoding beta_encode(const HomoclinicData& hd, const XfPoint& x, long lo, long hi, long burn_in = 40);

/// Quasi-greedy expansion of 1 in base beta, first `n` digits.
std::vector<int> quasi_greedy_one(double beta, int n);

/// Each suffix of v must stay lexicographically below the quasi-greedy
/// expansion of 1 (checked on its first `depth` digits).
bool parry_admissible(const IntWindow& v, double beta, int depth = 24);

struct ReduceResult {
  CoverSeq v;
  /// Accumulated h with result = input - f(sigma-bar) h.
  LaurentPoly h;
  bool budget_exceeded = false;
  long nodes = 0;
};

/// Coset reduction toward the lexicographic minimum: repeatedly subtract
/// f(sigma-bar) h for the largest h (leading term = highest index) supported
/// on at most `support_bound` consecutive indices with |h_k| <= coeff_bound,
/// keeping the result inside the alphabet bound, until no h > 0 applies.
ReduceResult wstar_reduce(const LaurentPoly& f, const CoverSeq& v, long support_bound = 8,
                          std::int64_t coeff_bound = 2, long node_budget = 2000000);

}  // namespace homoclinic
