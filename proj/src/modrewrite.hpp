#pragma once

#include <cstdint>
#include <optional>

#include "opalg.hpp"

namespace confal {

// ---------------------------------------------------------------------------
// Rewriting in the free module over the operator algebra: monomials are words
// in d, L_n^a, R_m^b applied to a distinguished generator.  On top of the
// algebra rules the module layer has
//   locality     L_n^a b        = 0                          (n >= N(a,b))
//   right-mul    R_n^b a        = sum_s (-1)^{n+s} d^(s) L^a_{n+s} b,
//                                 0 <= s <= N(a,b)-n-1
//   ext-locality L_n^a L_m^b    = sum_{q>=1} (-1)^{q+1} binom(n,q)
//                                 L^a_{n-q} L^b_{m+q}        (n >= N(a,b))
// the first two anchored at the generator, the third valid at any position.
// Completion seeds the system with the difference of the two evaluations of
// R_n^a b (right-mul against (-1)^{|a||b|} L_n^a b - [a_(n) b]), resolves
// overlap ambiguities, and certifies local confluence inside the bounds.
// ---------------------------------------------------------------------------

struct Bounds {
  int max_degree = 6;  // generator letters applied to the module generator, plus one
  int max_dpow = 4;    // d letters per word
  int max_index = 6;   // largest operator index on a rule lead
};

// window measures of a word: generator letters plus one, d letters, top index
int word_degree(const OpWord& w);
int word_dpow(const OpWord& w);
int word_index_max(const OpWord& w);

struct ModMonomial {
  OpWord word;
  int gen = 0;
  auto operator<=>(const ModMonomial&) const = default;
};
using ModElement = std::map<ModMonomial, Rational>;  // structural map order

void mod_add(ModElement& e, const ModMonomial& m, const Rational& c);
void mod_add(ModElement& e, const ModElement& o, const Rational& scale);

std::string mod_mono_str(const ModMonomial& m, const GeneratorSet& gens);
std::string mod_elem_str(const ModElement& e, const GeneratorSet& gens);

// conformal element with coefficients in k[d] -> module element (d^t g words)
ModElement embed_conf(const ConformalAlgebraDesc& alg, const ConfElement& x);

// Discovered rule: the lead matches as a suffix of the word together with the
// generator; the rhs is monic-reduced at creation.
struct ModRule {
  ModMonomial lead;
  ModElement rhs;
  int id = 0;
};

struct RewriteSystem {
  OpContext ctx;
  Bounds bounds;
  std::vector<ModRule> rules;

  int locality(int ga, int gb) const;
  int parity_of(int g) const;
  bool mono_less(const ModMonomial& a, const ModMonomial& b) const;
};

RewriteSystem make_system(const ConformalAlgebraDesc* alg, MonomialOrder::Kind kind,
                          Bounds bounds = {});

// Deterministic normal form: per monomial the redex minimizing (position,
// priority, rule id) is applied; the worklist always processes its largest
// member, and every replacement is strictly smaller, so the loop terminates.
// Transient words beyond the internal guard raise kErrBounds.
ModElement mod_normal_form(const RewriteSystem& sys, ModElement e);

// Same value through a randomized strategy: each step rewrites a uniformly
// chosen monomial with a uniformly chosen applicable redex.  Confluence makes
// the result strategy-independent, so this doubles as a cross-check.
ModElement mod_normal_form_random(const RewriteSystem& sys, ModElement e,
                                  uint64_t seed);

struct CompletionStats {
  int seeds = 0;
  int processed = 0;
  int discovered = 0;
  int dropped = 0;
};

// Seeds, then overlap ambiguities (smallest first) until the queue drains,
// then interreduction.  A seed whose reduced lead falls outside the bounds
// raises kErrBounds (the window cannot hold the defining relations).  Leads
// discovered past the bounds belong to the untruncated system and are
// dropped: no in-window word can contain them.  Overlaps that would grow
// past the degree/d-power scope are skipped for the same reason.
CompletionStats complete(RewriteSystem& sys);

// Re-derive every overlap class against the final rules; nonempty = defect.
std::vector<std::string> confluence_recheck(const RewriteSystem& sys);

// All irreducible monomials inside the window, ascending in the active order.
std::vector<ModMonomial> enumerate_reduced(const RewriteSystem& sys,
                                           const Bounds& window);

// Printable form of the completed system, rules ascending by lead.
std::string certificate(const RewriteSystem& sys);

}  // namespace confal
