#pragma once

#include <array>
#include <map>
#include <string>

#include "rational.hpp"

namespace confal {

// Polynomial ring Q[d, l, m, x] with exact coefficients.  d stands for the
// translation generator, l and m are the two formal product variables, x is
// the extra commuting variable used by matrix differential operators.
enum class Var : int { D = 0, L = 1, M = 2, X = 3 };

constexpr int kNumVars = 4;
using Expo = std::array<int, kNumVars>;

const char* var_name(Var v);

// Canonical term order doubles as the print order: lexicographically
// descending on (deg x, deg d, deg l, deg m).
struct TermOrder {
  static std::array<int, 4> key(const Expo& e) {
    return {e[3], e[0], e[1], e[2]};
  }
  bool operator()(const Expo& a, const Expo& b) const {
    return key(a) > key(b);
  }
};

class ExactPoly {
 public:
  using Terms = std::map<Expo, Rational, TermOrder>;

  ExactPoly() = default;

  static ExactPoly constant(const Rational& c);
  static ExactPoly from_int(long n) { return constant(ratio(n)); }
  static ExactPoly variable(Var v, int power = 1);
  static ExactPoly monomial(const Rational& c, const Expo& e);

  bool is_zero() const { return terms_.empty(); }
  bool operator==(const ExactPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const ExactPoly& o) const { return !(*this == o); }

  ExactPoly& operator+=(const ExactPoly& o);
  ExactPoly& operator-=(const ExactPoly& o);
  ExactPoly operator+(const ExactPoly& o) const;
  ExactPoly operator-(const ExactPoly& o) const;
  ExactPoly operator-() const;
  ExactPoly operator*(const ExactPoly& o) const;
  ExactPoly& operator*=(const ExactPoly& o);
  ExactPoly& operator*=(const Rational& c);
  ExactPoly operator*(const Rational& c) const;
  ExactPoly pow(int k) const;

  // Replaces every occurrence of v by repl; repl may itself mention v (the
  // original exponents are collected before rebuilding).
  ExactPoly substitute(Var v, const ExactPoly& repl) const;

  // Coefficient of v^k (divided == false) or of v^k/k! (divided == true),
  // as a polynomial in the remaining variables.
  ExactPoly coefficient_of(Var v, int k, bool divided) const;

  int degree(Var v) const;
  bool depends_on(Var v) const { return degree(v) > 0; }
  Rational coeff(const Expo& e) const;
  Rational constant_coeff() const { return coeff({0, 0, 0, 0}); }

  const Terms& terms() const { return terms_; }
  std::string str() const;

 private:
  void add_term(const Expo& e, const Rational& c);
  Terms terms_;
};

inline ExactPoly operator*(const Rational& c, const ExactPoly& p) {
  return p * c;
}

// Shorthands for the four variables.
ExactPoly poly_d();
ExactPoly poly_l();
ExactPoly poly_m();
ExactPoly poly_x();

}  // namespace confal
