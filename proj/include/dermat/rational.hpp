#pragma once

// Scalar field for every coordinate in the library: GMP rationals.
// mpq_class keeps values canonical (positive denominator, reduced) after each
// arithmetic operation; values built from a numerator/denominator pair must go
// through make_rational so the same holds for them.

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dermat {

using Rational = mpq_class;
using Vector = std::vector<Rational>;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

inline bool is_zero(const Vector& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

inline Vector zero_vector(std::size_t n) { return Vector(n, Rational(0)); }

inline Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v = zero_vector(n);
  v.at(i) = 1;
  return v;
}

/// Parses "p" or "p/q": optional sign, decimal digits, optional "/" and a
/// positive decimal denominator. A leading U+2212 minus is accepted as "-".
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  const std::string unicode_minus = "\xE2\x88\x92";
  if (s.rfind(unicode_minus, 0) == 0) s = "-" + s.substr(unicode_minus.size());

  auto bad = [&]() {
    return std::invalid_argument("malformed rational '" + std::string(text) + "'");
  };
  std::size_t pos = 0;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
  const std::size_t num_begin = pos;
  while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
  if (pos == num_begin) throw bad();
  std::string num = s.substr(0, pos);
  if (num[0] == '+') num.erase(0, 1);
  std::string den = "1";
  if (pos < s.size()) {
    if (s[pos] != '/') throw bad();
    ++pos;
    const std::size_t den_begin = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (pos == den_begin || pos != s.size()) throw bad();
    den = s.substr(den_begin);
  }
  mpz_class n(num, 10), d(den, 10);
  if (d == 0) throw std::invalid_argument("rational with zero denominator: " + std::string(text));
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(10); }

inline Vector operator+(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline Vector operator-(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline Vector operator*(const Rational& s, const Vector& v) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

}  // namespace dermat
