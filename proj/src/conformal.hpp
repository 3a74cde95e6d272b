#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "error.hpp"
#include "poly.hpp"

namespace confal {

// ---------------------------------------------------------------------------
// Conformal (super)algebras with a finite generator table.  Everything is a
// free module over H = k[d]; an element is a finite sum  sum_g  p_g(d,l,m) g
// with exact polynomial coefficients.  The two formal variables l and m host
// the first and second product slot of nested lambda-expressions.
// ---------------------------------------------------------------------------

struct GeneratorSet {
  std::vector<std::string> names;        // declaration order = well-order
  std::map<std::string, int> parity;     // 0 even, 1 odd

  int index_of(const std::string& g) const {
    for (size_t i = 0; i < names.size(); ++i)
      if (names[i] == g) return static_cast<int>(i);
    return -1;
  }
  int parity_of(const std::string& g) const {
    auto it = parity.find(g);
    if (it == parity.end()) throw ConfalError(kErrParse, "unknown generator: " + g);
    return it->second;
  }
  bool contains(const std::string& g) const { return parity.count(g) != 0; }
};

struct ConfElement {
  std::map<std::string, ExactPoly> comps;

  static ConfElement gen(const std::string& g) {
    return term(ExactPoly::from_int(1), g);
  }
  static ConfElement term(const ExactPoly& p, const std::string& g) {
    ConfElement e;
    if (!p.is_zero()) e.comps.emplace(g, p);
    return e;
  }

  bool is_zero() const { return comps.empty(); }
  bool operator==(const ConfElement& o) const { return comps == o.comps; }
  bool operator!=(const ConfElement& o) const { return !(*this == o); }

  ConfElement& operator+=(const ConfElement& o);
  ConfElement& operator-=(const ConfElement& o);
  ConfElement operator+(const ConfElement& o) const;
  ConfElement operator-(const ConfElement& o) const;
  ConfElement operator-() const;
  ConfElement operator*(const ExactPoly& p) const;
  ConfElement operator*(const Rational& c) const;

  ConfElement substitute(Var v, const ExactPoly& repl) const;
  ConfElement coefficient_of(Var v, int k, bool divided) const;
  int degree(Var v) const;
  bool depends_on(Var v) const;

  // "(p) g + (q) h", components in map (lexicographic) order; "0" when empty.
  std::string str() const;
};

inline ConfElement operator*(const ExactPoly& p, const ConfElement& e) {
  return e * p;
}

enum class AlgKind { Lie, Associative, Commutative, Poisson };
enum class Which { Bracket, Product };

const char* kind_name(AlgKind k);

struct LocalityFn {
  int def = 1;
  std::map<std::pair<std::string, std::string>, int> overrides;
  int operator()(const std::string& a, const std::string& b) const {
    auto it = overrides.find({a, b});
    return it == overrides.end() ? def : it->second;
  }
};

// Table-driven description.  `table` holds the bracket for Lie kind and the
// (super)commutative/associative product otherwise; for Poisson kind `table`
// is the product and `bracket_table` the bracket.  Entries are H-elements
// (coefficients in d only).  An optional grading with cap declares a
// truncation window: products of generators whose grades sum beyond the cap
// are not representable and any identity instance touching them is skipped.
struct ConformalAlgebraDesc {
  std::string name;
  AlgKind kind = AlgKind::Lie;
  bool is_super = false;
  GeneratorSet gens;
  LocalityFn locality;
  std::map<std::tuple<std::string, std::string, int>, ConfElement> table;
  std::map<std::tuple<std::string, std::string, int>, ConfElement> bracket_table;
  std::map<std::string, int> grade;
  int grade_cap = 0;

  bool graded() const { return !grade.empty(); }
  int grade_of(const std::string& g) const;
  const std::map<std::tuple<std::string, std::string, int>, ConfElement>&
  table_for(Which w) const;
};

// (u lambda v) with the slot variable `var` (Var::L or Var::M); u and v must
// not depend on `var`.  Sesquilinearity is built in: a d^p factor on the left
// becomes (-var)^p, on the right (var+d)^q.
ConfElement lambda_product(const ConformalAlgebraDesc& alg, const ConfElement& u,
                           const ConfElement& v, Which which, Var var = Var::L);

ConfElement nth_product(const ConformalAlgebraDesc& alg, const ConfElement& u,
                        const ConfElement& v, Which which, int n);

// {u var v} = (u_{-d-var} v): evaluate then substitute the slot.
ConfElement conjugate(const ConformalAlgebraDesc& alg, const ConfElement& u,
                      const ConfElement& v, Which which, Var var = Var::L);

// Same value through the finite divided-power sum
//   {u_(n) v} = sum_s (-1)^{n+s} d^(s) (u_(n+s) v);
// kept separate from `conjugate` as an independent cross-check route.
ConfElement conjugate_by_sum(const ConformalAlgebraDesc& alg, const ConfElement& u,
                             const ConfElement& v, Which which, Var var = Var::L);

// Lie structure induced on an associative table by [x l y] = (x l y) - (-1)^{|x||y|}{y l x}.
ConformalAlgebraDesc commutator_functor(const ConformalAlgebraDesc& assoc);

struct AxiomReport {
  int checked = 0;
  int skipped = 0;
  std::vector<std::string> violations;
  bool pass() const { return violations.empty(); }
  std::string summary() const;
};

// Identity suite for the declared kind on all elements d^s g, s <= max_dpow.
// With a grading the instances whose grade sum exceeds the cap are skipped
// (counted), which keeps every evaluated instance inside the window.
AxiomReport check_axioms(const ConformalAlgebraDesc& alg, int max_dpow = 2);

// Module action <a lambda u> = [a lambda u] + lambda (a lambda u) of the Lie
// part of a Poisson desc on itself.
ConfElement poisson_module_action(const ConformalAlgebraDesc& alg,
                                  const ConfElement& a, const ConfElement& u,
                                  Var var);

// Checks that lie_gens span a bracket-closed subalgebra and that the action
// above satisfies the module Jacobi identity
//   <a l <b m u>> - <b m <a l u>> = <[a l b] l+m u>.
AxiomReport check_poisson_module_jacobi(const ConformalAlgebraDesc& alg,
                                        const std::vector<std::string>& lie_gens,
                                        int max_dpow = 2);

}  // namespace confal
