#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "homoclinic/errors.hpp"
#include "homoclinic/laurent.hpp"
#include "homoclinic/rational.hpp"

namespace homoclinic {

/// An element of T = R/Z, stored as its representative in [0,1).
class Torus {
 public:
  Torus() = default;
  explicit Torus(double x) : v_(x - std::floor(x)) {
    if (v_ >= 1.0) v_ = 0.0;
  }
  double value() const { return v_; }
  /// Distance to 0 along the circle, in [0, 1/2].
  double norm() const { return std::min(v_, 1.0 - v_); }

  friend Torus operator+(Torus a, Torus b) { return Torus(a.v_ + b.v_); }
  friend Torus operator-(Torus a, Torus b) { return Torus(a.v_ - b.v_); }
  friend Torus operator*(std::int64_t k, Torus a) {
    return Torus(std::fmod(static_cast<double>(k) * a.v_, 1.0));
  }
  Torus& operator+=(Torus b) { return *this = *this + b; }
  friend bool operator==(Torus a, Torus b) = default;

 private:
  double v_ = 0.0;
};

inline double torus_distance(Torus a, Torus b) { return (a - b).norm(); }

enum class TailKind { zero, decay, periodic, unknown };

/// What a window knows about the sequence outside [lo, hi].
struct Tail {
  TailKind kind = TailKind::unknown;
  /// decay: |s_{hi+d}| <= constant * rate_right^d and |s_{lo-d}| <= constant * rate_left^d.
  double constant = 0.0;
  double rate_left = 0.0;
  double rate_right = 0.0;
  /// periodic: s_{n+period} = s_n for all n.
  long period = 0;

  static Tail zero() { return {TailKind::zero}; }
  static Tail unknown() { return {TailKind::unknown}; }
  static Tail periodic(long p) { return {TailKind::periodic, 0.0, 0.0, 0.0, p}; }
  static Tail decay(double c, double left, double right) {
    return {TailKind::decay, c, left, right, 0};
  }
  bool exact() const { return kind == TailKind::zero || kind == TailKind::periodic; }
};

/// A doubly infinite sequence materialized on [lo, hi].
template <class T>
class SeqWindow {
 public:
  SeqWindow() = default;
  SeqWindow(long lo, std::vector<T> values, Tail tail = Tail::unknown())
      : lo_(lo), values_(std::move(values)), tail_(tail) {
    if (tail_.kind == TailKind::periodic &&
        (tail_.period <= 0 || tail_.period > static_cast<long>(values_.size())))
      throw InvalidArgument("periodic tail needs a full period inside the window");
  }
  /// Zero-filled window on [lo, hi].
  static SeqWindow filled(long lo, long hi, T value = T{}, Tail tail = Tail::unknown()) {
    if (hi < lo) throw InvalidArgument("empty window");
    return SeqWindow(lo, std::vector<T>(static_cast<std::size_t>(hi - lo + 1), value), tail);
  }

  long lo() const { return lo_; }
  long hi() const { return lo_ + static_cast<long>(values_.size()) - 1; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  bool contains(long n) const { return n >= lo_ && n <= hi(); }
  const Tail& tail() const { return tail_; }
  void set_tail(Tail t) { tail_ = t; }

  std::span<const T> values() const& { return values_; }
  std::span<T> values() & { return values_; }
  void values() const&& = delete;

  const T& operator[](long n) const { return values_[static_cast<std::size_t>(n - lo_)]; }
  T& operator[](long n) { return values_[static_cast<std::size_t>(n - lo_)]; }

  /// Value at any index the tail descriptor can answer for. Decaying tails
  /// read as zero (error bounded by the recorded constant).
  T at(long n) const {
    if (contains(n)) return (*this)[n];
    switch (tail_.kind) {
      case TailKind::zero:
      case TailKind::decay:
        return T{};
      case TailKind::periodic: {
        long r = (n - lo_) % tail_.period;
        if (r < 0) r += tail_.period;
        return values_[static_cast<std::size_t>(r)];
      }
      case TailKind::unknown:
        break;
    }
    throw InvalidArgument("index " + std::to_string(n) + " outside window [" +
                          std::to_string(lo_) + "," + std::to_string(hi()) + "] with unknown tail");
  }

  /// sigma-bar^s: (sigma-bar^s w)_n = w_{n+s}.
  SeqWindow shifted(long s) const {
    SeqWindow out = *this;
    out.lo_ = lo_ - s;
    return out;
  }

  /// Values on [a, b] (read through the tail where allowed).
  SeqWindow slice(long a, long b) const {
    std::vector<T> v;
    v.reserve(static_cast<std::size_t>(std::max(0L, b - a + 1)));
    for (long n = a; n <= b; ++n) v.push_back(at(n));
    Tail t = tail_.kind == TailKind::periodic ? tail_ : Tail::unknown();
    if (tail_.kind == TailKind::zero && a <= lo_ && b >= hi()) t = Tail::zero();
    return SeqWindow(a, std::move(v), t);
  }

 private:
  long lo_ = 0;
  std::vector<T> values_;
  Tail tail_;
};

using RealWindow = SeqWindow<double>;
using IntWindow = SeqWindow<std::int64_t>;
using TorusWindow = SeqWindow<Torus>;
using RationalWindow = SeqWindow<Rational>;

/// h(sigma-bar) s, i.e. out_n = sum_k h_k s_{n+k}. Zero tails extend the
/// output to the full support, periodic tails keep the window, and any other
/// tail shrinks the output to the indices fully determined by the window.
template <class T>
SeqWindow<T> apply_poly_shift(const LaurentPoly& h, const SeqWindow<T>& s) {
  if (h.is_zero()) throw InvalidArgument("apply_poly_shift: zero polynomial");
  long out_lo = 0;
  long out_hi = 0;
  Tail tail = Tail::unknown();
  switch (s.tail().kind) {
    case TailKind::zero:
      out_lo = s.lo() - h.high();
      out_hi = s.hi() - h.low();
      tail = Tail::zero();
      break;
    case TailKind::periodic:
      out_lo = s.lo();
      out_hi = s.hi();
      tail = s.tail();
      break;
    default:
      out_lo = s.lo() - h.low();
      out_hi = s.hi() - h.high();
      break;
  }
  if (out_hi < out_lo) throw InvalidArgument("apply_poly_shift: window underflow");
  std::vector<T> out(static_cast<std::size_t>(out_hi - out_lo + 1), T{});
  for (long n = out_lo; n <= out_hi; ++n) {
    T acc{};
    for (long k = h.low(); k <= h.high(); ++k) {
      std::int64_t c = h[k];
      if (c != 0) acc += c * s.at(n + k);
    }
    out[static_cast<std::size_t>(n - out_lo)] = acc;
  }
  return SeqWindow<T>(out_lo, std::move(out), tail);
}

/// Coordinatewise reduction mod 1.
inline TorusWindow to_torus(const RealWindow& w) {
  std::vector<Torus> v;
  v.reserve(w.size());
  for (double x : w.values()) v.emplace_back(x);
  Tail t = w.tail();
  if (t.kind == TailKind::decay) t = Tail::unknown();
  return TorusWindow(w.lo(), std::move(v), t);
}

}  // namespace homoclinic
