#include "homoclinic/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <sstream>

#include "homoclinic/errors.hpp"

namespace homoclinic {

LaurentPoly::LaurentPoly(std::vector<std::int64_t> coeffs, long low)
    : coeffs_(std::move(coeffs)), low_(low) {
  trim();
}

LaurentPoly LaurentPoly::monomial(std::int64_t coeff, long exponent) {
  return LaurentPoly({coeff}, exponent);
}

void LaurentPoly::trim() {
  auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](auto c) { return c != 0; });
  if (first == coeffs_.end()) {
    coeffs_.clear();
    low_ = 0;
    return;
  }
  low_ += static_cast<long>(first - coeffs_.begin());
  coeffs_.erase(coeffs_.begin(), first);
  while (coeffs_.back() == 0) coeffs_.pop_back();
}

std::int64_t LaurentPoly::operator[](long k) const {
  if (k < low_ || k > high()) return 0;
  return coeffs_[static_cast<std::size_t>(k - low_)];
}

std::complex<long double> LaurentPoly::eval(std::complex<long double> z) const {
  std::complex<long double> acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * z + static_cast<long double>(*it);
  if (low_ != 0) acc *= std::pow(z, static_cast<int>(low_));
  return acc;
}

LaurentPoly LaurentPoly::derivative() const {
  if (low_ < 0) throw InvalidArgument("derivative: negative exponents are not supported");
  std::vector<std::int64_t> d;
  for (long k = std::max(low_, 1L); k <= high(); ++k) d.push_back(k * (*this)[k]);
  return LaurentPoly(std::move(d), std::max(low_, 1L) - 1);
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  long lo = std::min(a.low(), b.low());
  long hi = std::max(a.high(), b.high());
  std::vector<std::int64_t> c(static_cast<std::size_t>(hi - lo + 1));
  for (long k = lo; k <= hi; ++k) c[static_cast<std::size_t>(k - lo)] = a[k] + b[k];
  return LaurentPoly(std::move(c), lo);
}

LaurentPoly LaurentPoly::operator-() const {
  auto c = coeffs_;
  for (auto& x : c) x = -x;
  return LaurentPoly(std::move(c), low_);
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<std::int64_t> c(a.coeffs().size() + b.coeffs().size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) c[i + j] += a.coeffs()[i] * b.coeffs()[j];
  return LaurentPoly(std::move(c), a.low() + b.low());
}

std::string LaurentPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (long k = high(); k >= low_; --k) {
    std::int64_t c = (*this)[k];
    if (c == 0) continue;
    if (c < 0)
      out << '-';
    else if (!first)
      out << '+';
    std::int64_t mag = c < 0 ? -c : c;
    if (k == 0) {
      out << mag;
    } else {
      if (mag != 1) out << mag;
      out << 'u';
      if (k != 1) out << '^' << k;
    }
    first = false;
  }
  return out.str();
}

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  if (s.empty()) throw InvalidArgument("malformed polynomial '" + std::string(whole) + "'");
  std::int64_t v = 0;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw InvalidArgument("malformed polynomial '" + std::string(whole) + "'");
    v = v * 10 + (ch - '0');
  }
  return v;
}

LaurentPoly parse_comma_list(std::string_view s) {
  std::vector<std::int64_t> c;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    std::string_view item = s.substr(pos, comma == std::string_view::npos ? s.npos : comma - pos);
    bool neg = !item.empty() && (item[0] == '-' || item[0] == '+');
    std::int64_t v = parse_int(neg ? item.substr(1) : item, s);
    c.push_back(!item.empty() && item[0] == '-' ? -v : v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return LaurentPoly(std::move(c), 0);
}

}  // namespace

LaurentPoly LaurentPoly::parse(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw InvalidArgument("empty polynomial");
  if (s.find('u') == std::string::npos) {
    auto p = parse_comma_list(s);
    if (p.is_zero()) throw InvalidArgument("zero polynomial");
    return p;
  }

  std::map<long, std::int64_t> terms;
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      throw InvalidArgument("malformed polynomial '" + s + "'");
    }
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    std::string_view digits(s.data() + start, i - start);
    if (i < s.size() && s[i] == '*') ++i;
    long exponent = 0;
    bool has_u = i < s.size() && s[i] == 'u';
    if (has_u) {
      ++i;
      exponent = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        int esign = 1;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
          esign = s[i] == '-' ? -1 : 1;
          ++i;
        }
        std::size_t es = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        exponent = esign * static_cast<long>(parse_int(std::string_view(s.data() + es, i - es), s));
      }
    }
    if (digits.empty() && !has_u) throw InvalidArgument("malformed polynomial '" + s + "'");
    std::int64_t coeff = digits.empty() ? 1 : parse_int(digits, s);
    terms[exponent] += sign * coeff;
    if (i < s.size() && s[i] != '+' && s[i] != '-')
      throw InvalidArgument("malformed polynomial '" + s + "'");
  }
  long lo = terms.begin()->first;
  long hi = terms.rbegin()->first;
  std::vector<std::int64_t> c(static_cast<std::size_t>(hi - lo + 1), 0);
  for (auto [e, v] : terms) c[static_cast<std::size_t>(e - lo)] = v;
  LaurentPoly p(std::move(c), lo);
  if (p.is_zero()) throw InvalidArgument("zero polynomial");
  return p;
}

CanonicalForm canonicalize(const LaurentPoly& f) {
  if (f.is_zero()) throw InvalidArgument("canonicalize: zero polynomial");
  CanonicalForm out;
  out.shift = f.low();
  out.sign = f.leading() < 0 ? -1 : 1;
  out.poly = out.sign < 0 ? -f.shifted_to_zero() : f.shifted_to_zero();
  return out;
}

LaurentPoly adjoint(const LaurentPoly& f) {
  if (f.is_zero()) throw InvalidArgument("adjoint: zero polynomial");
  std::vector<std::int64_t> c(f.coeffs().rbegin(), f.coeffs().rend());
  return LaurentPoly(std::move(c), -f.high());
}

std::int64_t one_norm(const LaurentPoly& f) {
  std::int64_t s = 0;
  for (auto c : f.coeffs()) s += c < 0 ? -c : c;
  return s;
}

bool divides(const LaurentPoly& g, const LaurentPoly& f) {
  if (g.is_zero()) throw InvalidArgument("divides: zero divisor");
  if (f.is_zero()) return true;
  // Units u^k are invertible, so compare the low = 0 representatives.
  std::vector<std::int64_t> rem = f.shifted_to_zero().coeffs();
  const auto& d = g.coeffs();
  if (rem.size() < d.size()) return false;
  const std::int64_t lead = d.back();
  const long dm = static_cast<long>(d.size()) - 1;
  for (long top = static_cast<long>(rem.size()) - 1; top >= dm; --top) {
    auto t = static_cast<std::size_t>(top);
    if (rem[t] % lead != 0) return false;
    std::int64_t q = rem[t] / lead;
    for (long j = 0; j <= dm; ++j) rem[static_cast<std::size_t>(top - dm + j)] -= q * d[static_cast<std::size_t>(j)];
  }
  return std::all_of(rem.begin(), rem.end(), [](auto c) { return c == 0; });
}

}  // namespace homoclinic
