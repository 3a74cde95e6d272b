#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace confal {

// Exact rational scalars on top of GMP.  mpq_class does *not* canonicalize a
// num/den constructor by itself (mpq_class(2,6) stays 2/6), so every entry
// point below returns a canonical value; arithmetic between canonical values
// stays canonical, hence map-based equality of coefficients is exact.
using Rational = mpq_class;

inline Rational ratio(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational ratio_z(const mpz_class& num, const mpz_class& den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Strict "p" or "p/q" with optional leading sign; anything else throws.
inline Rational parse_rational(const std::string& s) {
  auto fail = [&] { throw std::invalid_argument("bad rational: '" + s + "'"); };
  if (s.empty()) fail();
  std::size_t i = 0;
  if (s[i] == '+' || s[i] == '-') ++i;
  std::size_t digits = 0;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i, ++digits;
  if (digits == 0) fail();
  if (i != s.size()) {
    if (s[i] != '/') fail();
    ++i;
    std::size_t den_digits = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i, ++den_digits;
    if (den_digits == 0 || i != s.size()) fail();
  }
  Rational r(s);
  if (r.get_den() == 0) fail();
  r.canonicalize();
  return r;
}

// Canonical rendering: reduced "p/q", "/1" omitted (mpq_class::get_str does
// exactly this for canonical values).
inline std::string rational_str(const Rational& r) { return r.get_str(); }

inline mpz_class factorial(long n) {
  if (n < 0) throw std::invalid_argument("factorial of negative");
  mpz_class z;
  mpz_fac_ui(z.get_mpz_t(), static_cast<unsigned long>(n));
  return z;
}

inline mpz_class binomial(long n, long k) {
  if (k < 0 || k > n || n < 0) return 0;
  mpz_class z;
  mpz_bin_uiui(z.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return z;
}

// n(n-1)...(n-k+1); zero once the product crosses zero (k > n >= 0).
inline mpz_class falling(long n, long k) {
  if (k < 0 || n < 0) throw std::invalid_argument("falling factorial range");
  if (k > n) return 0;
  return binomial(n, k) * factorial(k);
}

inline Rational inv_factorial(long n) { return ratio_z(1, factorial(n)); }

}  // namespace confal
