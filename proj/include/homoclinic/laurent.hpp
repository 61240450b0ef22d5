#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace homoclinic {

/// Integer Laurent polynomial h = sum_k h_k u^k, stored densely from the
/// exponent `low()` upwards. A nonzero value never carries zero coefficients
/// at either end; the zero polynomial has no coefficients.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  /// Coefficients of u^low, u^(low+1), ...; leading/trailing zeros are trimmed.
  explicit LaurentPoly(std::vector<std::int64_t> coeffs, long low = 0);

  static LaurentPoly monomial(std::int64_t coeff, long exponent);

  /// Accepts "f0,f1,...,fm" (low = 0) or a human string such as "5u^2-6u+5",
  /// "2-u", "u^-1 + 3". Throws InvalidArgument on malformed text.
  static LaurentPoly parse(std::string_view text);

  bool is_zero() const { return coeffs_.empty(); }
  long low() const { return low_; }
  /// Highest exponent (low + len - 1).
  long high() const { return low_ + static_cast<long>(coeffs_.size()) - 1; }
  /// Span high - low; equals the degree m when low = 0.
  long degree() const { return high() - low_; }
  const std::vector<std::int64_t>& coeffs() const { return coeffs_; }

  /// Coefficient of u^k (zero outside the stored range).
  std::int64_t operator[](long k) const;
  std::int64_t leading() const { return coeffs_.back(); }
  std::int64_t trailing() const { return coeffs_.front(); }

  /// The same coefficients with low = 0 (multiplication by the unit u^-low).
  LaurentPoly shifted_to_zero() const { return LaurentPoly(coeffs_, 0); }

  std::complex<long double> eval(std::complex<long double> z) const;
  LaurentPoly derivative() const;  // requires low >= 0

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly operator-() const;
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) = default;

  /// Human form with descending exponents, e.g. "5u^2-6u+5", "u^-1-2".
  std::string to_string() const;

 private:
  void trim();

  std::vector<std::int64_t> coeffs_;
  long low_ = 0;
};

/// Result of normalizing to low = 0 and a positive leading coefficient.
struct CanonicalForm {
  LaurentPoly poly;
  int sign = 1;     // -1 when the coefficients were negated
  long shift = 0;   // exponent removed: input = sign * u^shift * poly
};

CanonicalForm canonicalize(const LaurentPoly& f);

/// h*(u) = h(u^-1): coefficients reversed, exponents negated.
LaurentPoly adjoint(const LaurentPoly& f);

/// sum_k |f_k|
std::int64_t one_norm(const LaurentPoly& f);

/// True when g divides f in Z[u^{+-1}], i.e. f = g * q for some Laurent q with
/// integer coefficients.
bool divides(const LaurentPoly& g, const LaurentPoly& f);

}  // namespace homoclinic
