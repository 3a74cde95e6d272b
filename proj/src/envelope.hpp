#pragma once

#include <memory>

#include "cend.hpp"
#include "linalg.hpp"
#include "modrewrite.hpp"

namespace confal {

// ---------------------------------------------------------------------------
// The universal associative envelope of a Lie conformal (super)algebra with a
// declared locality bound, realized through its completed module rewriting
// system: envelope elements are module elements in normal form, the lambda
// product comes from peeling generator letters against associativity, and the
// degree filtration by generator letters induces a graded Poisson structure
// on the quotients.
// ---------------------------------------------------------------------------

struct Envelope {
  std::unique_ptr<ConformalAlgebraDesc> lie;  // pinned: the system points at it
  RewriteSystem sys;
  CompletionStats stats;
};

// Checks the input axioms, seeds the module relations, runs completion.
Envelope build_envelope(const ConformalAlgebraDesc& lie, MonomialOrder::Kind kind,
                        Bounds bounds = {});

// Parity of a normal word: module generator plus every operator letter.
int word_parity(const RewriteSystem& sys, const ModMonomial& m);

// B with L_n^a m = 0 for all n >= B: locality at the module generator plus
// the largest index drop each letter can feed back while commuting through.
int action_bound(const RewriteSystem& sys, int a, const ModMonomial& m);

// (u l v) as a polynomial in divided powers of the slot: entry n is u_(n) v.
using LambdaPoly = std::map<int, ModElement>;

LambdaPoly env_lambda_product(const Envelope& E, const ModElement& u,
                              const ModElement& v);
// {u l v} = (u_{-d-l} v)
LambdaPoly env_conjugate(const Envelope& E, const ModElement& u,
                         const ModElement& v);

std::string lambda_poly_str(const LambdaPoly& p, const GeneratorSet& gens);

// component of word degree exactly `deg`
ModElement degree_part(const ModElement& e, int deg);

// Images of (u l v) in the degree-(n+m) quotient and of the signed commutator
// in the degree-(n+m-1) quotient, for u, v of pure degree n, m.  The degree
// n+m part of the commutator must cancel; a leak raises kErrVerify.
struct GradedPair {
  LambdaPoly comm;
  LambdaPoly bracket;
};
GradedPair graded_products(const Envelope& E, const ModElement& u, int n,
                           const ModElement& v, int m);

// ---------------------------------------------------------------------------
// Graded Poisson tables over named basis labels.  An entry value is a
// ConfElement whose coefficients live in k[d, l]; an entry that is present
// but zero records a computed-and-vanishing product.
// ---------------------------------------------------------------------------

struct PoissonTable {
  std::string name;
  std::map<std::string, int> grade;
  std::map<std::string, int> parity;
  std::map<std::pair<std::string, std::string>, ConfElement> comm, bracket;

  // header, labels by (grade, name), then COMM and BRACKET lines sorted by
  // (grade, label) pairs
  std::string dump() const;
};

// gr U(Vir; 2): labels v_n of grade n, pairs with grade sum <= cap
PoissonTable pv2_table(const Envelope& vir2, int cap);
// gr U(Vir; 3): labels x_n and y_n_m, pairs with grade sum <= cap
PoissonTable pv3_table(const Envelope& vir3, int cap);
// even part of gr U(K_1; super): labels a_n, b_n through the rank (1|1)
// matrix realization; no envelope needed
PoissonTable pk10_table(int cap);
// same algebra in the shifted basis ahat_1 = a_1, ahat_n = a_n - (1/8) d^2 b_n
PoissonTable pk10_hatted_table(const PoissonTable& pk, int cap);

// One generator per label; pairs beyond the cap are outside the window and
// every identity instance touching them is skipped by the axiom suite.
ConformalAlgebraDesc table_as_algebra(const PoissonTable& t, int grade_cap);
AxiomReport verify_graded_poisson(const PoissonTable& t, int grade_cap);

// ---------------------------------------------------------------------------
// Matrix realization of the K_1 envelope inside Cend of rank (1|1).
// ---------------------------------------------------------------------------

// Letters act right to left on the generator image: d multiplies by the
// polynomial d, L_n^a composes with the n-th product by the image of a.
CendElement cend2_embed(const Envelope& k1, const ModMonomial& m);

struct IndependenceReport {
  int words = 0;
  int rank = 0;
  std::vector<std::string> shape_defects;  // top-row entries not divisible by x
  bool pass() const { return rank == words && shape_defects.empty(); }
};
// Reduced words inside the window, their images, the rank of the image span,
// and the expected matrix shape.
IndependenceReport cend2_independence(const Envelope& k1, int max_degree,
                                      int max_dpow);

}  // namespace confal
