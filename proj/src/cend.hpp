#pragma once

#include <array>

#include "error.hpp"
#include "linalg.hpp"
#include "poly.hpp"

namespace confal {

// ---------------------------------------------------------------------------
// Conformal endomorphisms of a rank-2 free module over k[x]: 2x2 matrices
// with entries in k[d, x], associative lambda-product
//   (f l g)(d, x) = f(-l, x) * g(d + l, x + l).
// The H-action is multiplication by d.  This is the concrete module every
// abstract computation for the rank-(1|1) super engine is checked against.
// ---------------------------------------------------------------------------

struct CendElement {
  std::array<ExactPoly, 4> m;  // row-major

  ExactPoly& at(int r, int c) { return m[2 * r + c]; }
  const ExactPoly& at(int r, int c) const { return m[2 * r + c]; }

  bool is_zero() const;
  bool operator==(const CendElement& o) const { return m == o.m; }
  bool operator!=(const CendElement& o) const { return !(*this == o); }

  CendElement operator+(const CendElement& o) const;
  CendElement operator-(const CendElement& o) const;
  CendElement operator-() const;
  CendElement operator*(const ExactPoly& p) const;
  CendElement operator*(const Rational& c) const;

  CendElement substitute(Var v, const ExactPoly& repl) const;
  CendElement coefficient_of(Var v, int k, bool divided) const;
  bool depends_on(Var v) const;

  std::string str() const;  // [[p, q], [r, s]]
};

// Generators of the rank-(1|1) super engine inside Cend:
//   v = diag(x, x - d/2)          (even),
//   g = [[0, x/2], [-1/2, 0]]     (odd).
CendElement cend_v();
CendElement cend_g();

// Basis of the associated graded algebra image:
//   a_n = diag(x^n, x^n - (1/2) d x^{n-1})   n >= 1   even
//   b_n = [[0,0],[0, x^{n-2}]]               n >= 2   even
//   e_n = [[0, x^n],[-x^{n-1}, 0]]           n >= 1   odd
//   f_n = [[0,0],[x^{n-2}, 0]]               n >= 2   odd
CendElement cend_a(int n);
CendElement cend_b(int n);
CendElement cend_e(int n);
CendElement cend_f(int n);

// (f var g); both arguments must be free of the slot variable.
CendElement cend_mul(const CendElement& f, const CendElement& g, Var var = Var::L);
// {f var g} = (f_{-d-var} g)
CendElement cend_conjugate(const CendElement& f, const CendElement& g,
                           Var var = Var::L);
// [f var g] = (f var g) - (-1)^{pf pg} {g var f}
CendElement cend_bracket(const CendElement& f, const CendElement& g, int pf,
                         int pg, Var var = Var::L);
// f_(n) g, divided coefficient of the slot
CendElement cend_nth(const CendElement& f, const CendElement& g, int n,
                     Var var = Var::L);

// Exact coordinates in the a/b/e/f basis with coefficients in k[d] (slot
// variables may ride along).  Throws kErrVerify when the element is outside
// the span (constant term in a corner that must be divisible by x).
struct CendDecomp {
  std::map<int, ExactPoly> a, b, e, f;
  bool is_zero() const { return a.empty() && b.empty() && e.empty() && f.empty(); }
  std::string str() const;  // "a: {1: ...} b: {...}" style listing
};
CendDecomp cend_decompose(const CendElement& m);
CendElement cend_compose(const CendDecomp& d);

// Rank of a family over Q: flatten every (entry, monomial) coordinate.
int cend_rank(const std::vector<CendElement>& els);

}  // namespace confal
