#pragma once

#include <optional>

#include "conformal.hpp"

namespace confal {

// ---------------------------------------------------------------------------
// The associative operator algebra attached to a conformal algebra: words in
// letters d, L_n^a, R_m^b subject to
//   (r1)  L_n^a d = d L_n^a + n L_{n-1}^a
//   (r2)  R_m^b d = d R_m^b + m R_{m-1}^b
//   (r3)  R_m^b L_n^a = L_n^a R_m^b
// and, when the Lie commutation rules are switched on,
//   (cL)  L_n^a L_m^b = (-1)^{|a||b|} L_m^b L_n^a
//                       + sum_s binom(n,s) Lify([a_(s) b], n+m-s)
// oriented so the larger side rewrites to smaller ones.
// ---------------------------------------------------------------------------

constexpr int kTagD = 0, kTagL = 1, kTagR = 2;

struct OpLetter {
  int tag = kTagD;
  int index = 0;  // n of L_n / R_n, 0 for d
  int gen = 0;    // generator position, 0 for d
  auto operator<=>(const OpLetter&) const = default;
};

inline OpLetter op_d() { return {kTagD, 0, 0}; }
inline OpLetter op_l(int n, int g) { return {kTagL, n, g}; }
inline OpLetter op_r(int n, int g) { return {kTagR, n, g}; }

using OpWord = std::vector<OpLetter>;
using OpElement = std::map<OpWord, Rational>;  // structural map order

void op_add(OpElement& e, const OpWord& w, const Rational& c);
void op_add(OpElement& e, const OpElement& o, const Rational& scale);

std::string letter_str(const OpLetter& a, const GeneratorSet& gens);
std::string word_str(const OpWord& w, const GeneratorSet& gens);
std::string op_elem_str(const OpElement& e, const GeneratorSet& gens);

// Well-orders on words: number of R letters, then length, then left-to-right
// letter ranks.  Standard ranks d below every L_n^a (by index, then
// generator) below every R_m^b.  The variant order interleaves d among the
// L's:  L_0 < L_1 < d < L_2 < L_3 < ...
struct MonomialOrder {
  enum class Kind { Standard, Variant };
  Kind kind = Kind::Standard;

  std::array<int, 3> letter_key(const OpLetter& a) const;
  bool letter_less(const OpLetter& a, const OpLetter& b) const {
    return letter_key(a) < letter_key(b);
  }
  bool word_less(const OpWord& a, const OpWord& b) const;
};

struct OpContext {
  const ConformalAlgebraDesc* alg = nullptr;  // generators, parity, Lie table
  MonomialOrder order;
  bool use_comm_l = false;
};

// H-linear conversion of a table value sum c d^t g into L-letters at index j:
// each term contributes c (-1)^t falling(j,t) L^g_{j-t}.
OpElement lify(const ConformalAlgebraDesc& alg, const ConfElement& val, int j);

// Rewriting step for a two-letter window, or nullopt when (x,y) is already
// ordered.  Priorities (shared with the module layer): 4 = r3, 5 = r1/r2,
// 6 = cL.
struct PairRedex {
  int priority = 0;
  OpElement repl;
};
std::optional<PairRedex> alg_pair_redex(const OpContext& ctx, const OpLetter& x,
                                        const OpLetter& y);

// Normal form under the algebra rules alone (terminating: every replacement
// is strictly smaller in the active order).
OpElement alg_normal_form(const OpContext& ctx, OpElement e);

// All three-letter overlap ambiguities over letters with index <= max_index
// must resolve to the same normal form; returns the unresolved ones.
std::vector<std::string> alg_composition_check(const OpContext& ctx,
                                               int max_index);

}  // namespace confal
