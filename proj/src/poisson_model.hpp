#pragma once

#include <optional>

#include "conformal.hpp"

namespace confal {

// ---------------------------------------------------------------------------
// Finite-dimensional coefficient algebras over Q and the conformal structures
// they induce.  A FiniteModel is a commutative algebra V with an optional
// bracket (making it Poisson), an optional derivation D, and an optional
// grading window: when `grade` is set, products whose grade sum exceeds `cap`
// are unrepresentable and every check instance touching them is skipped.
// ---------------------------------------------------------------------------

using Vec = std::map<int, Rational>;  // coordinates in the chosen basis

struct FiniteModel {
  std::string name;
  std::vector<std::string> basis;
  std::map<std::pair<int, int>, Vec> prod;   // x_i x_j   (missing = zero)
  std::map<std::pair<int, int>, Vec> brack;  // [x_i, x_j]
  std::map<int, Vec> der;                    // D x_i
  std::vector<int> grade;                    // empty = ungraded
  int cap = 0;

  bool graded() const { return !grade.empty(); }
};

// k[v]/(v^k) with basis v^0..v^{k-1}; products wrap to zero.  With
// `with_ddv` the map D = d/dv is attached even though it does not descend to
// the quotient — validation is expected to reject that combination.
FiniteModel trunc_poly_quotient(int k, bool with_ddv);

// Window model of k[v]: basis v^0..v^maxexp graded by exponent, products
// defined only when exponents sum within the window.  D = d/dv is a genuine
// (window-compatible) derivation here.
FiniteModel trunc_poly_window(int maxexp, bool with_ddv);

// All algebra laws on basis instances, windowed: commutativity,
// associativity, D a derivation of the product; when a bracket is present
// also antisymmetry, Jacobi, Leibniz and D a derivation of the bracket.
AxiomReport validate_model(const FiniteModel& m);

// Conformal Poisson structure on H (x) V:
//   (x l y) = xy,   [x l y] = [x,y] + d (y Dx) + l D(xy).
// Throws kErrVerify when validate_model rejects V.
ConformalAlgebraDesc make_quadratic(const FiniteModel& m);

// Closed-form table of the Poisson structure carried by k[v] (windowed at
// maxexp):  (v^i l v^j) = v^{i+j},  [v^i l v^j] = (i d + (i+j) l) v^{i+j-1}.
ConformalAlgebraDesc make_weyl_poisson(int maxexp);

// Current-type conformal structures with one-entry tables (a,b,0) = a*b.
ConformalAlgebraDesc make_current_assoc(const std::string& name,
                                        const std::vector<std::string>& basis,
                                        const std::map<std::pair<int, int>, Vec>& mult);
ConformalAlgebraDesc make_current_lie(const std::string& name,
                                      const std::vector<std::string>& basis,
                                      const std::map<std::pair<int, int>, Vec>& brack);

// Brute-force Poisson check for V[t,t^-1], V = span(u^0..u^ucap), with
//   (a t^n)(b t^m) = ab t^{n+m},
//   {a t^n, b t^m} = (n a Db - m b Da) t^{n+m-1},  D = d/du.
// Monomials with u-degree beyond ucap are dropped and flagged; with
// `skip_overflow` every instance whose evaluation raised the flag is skipped
// (sound windowing), otherwise the truncated values are compared as-is and
// the broken identities surface as violations.
AxiomReport check_laurent_poisson(int ucap, int trange, bool skip_overflow);

}  // namespace confal
