#pragma once

#include <string>

#include "envelope.hpp"

namespace confal {

// ---------------------------------------------------------------------------
// Line-oriented algebra description files.  `#` starts a comment, blank
// lines are skipped, the first line must be the `algebra` header:
//
//   algebra <name> <lie|assoc|poisson> [super]
//   gen <name> <even|odd> [<grade>]
//   gradecap <n>                      # required iff any gen carries a grade
//   locality <a> <b> <n>
//   prod <a> <b> <n> = <sum>          # lie/assoc table entry
//   comm <a> <b> <n> = <sum>          # poisson product entry
//   bracket <a> <b> <n> = <sum>       # poisson bracket entry
//   order <std|variant>               # completion order for the envelope
//   bounds deg=<d> dpow=<s> idx=<n>   # completion window
//
//   sum  := 0 | term (+ term)*
//   term := <rational> [d^<s>] <gen>
//
// Zero entries are dropped; the locality default is the minimum declared
// pair locality (pairs at the minimum carry no override), or one past the
// top table index when no locality line is present.  Errors are raised as
// kErrParse with the offending line number.
// ---------------------------------------------------------------------------

struct EnvelopeOptions {
  MonomialOrder::Kind order = MonomialOrder::Kind::Standard;
  Bounds bounds{};
};

struct AlgebraFile {
  ConformalAlgebraDesc alg;
  EnvelopeOptions env;
};

AlgebraFile parse_algebra(const std::string& text);
AlgebraFile load_algebra_file(const std::string& path);

// Canonical form: header, gen lines in declaration order, gradecap, the
// full locality matrix, table entries in map order, then order and bounds.
// parse_algebra(render_algebra(f)) reproduces f exactly.
std::string render_algebra(const AlgebraFile& f);

// Element expressions over the envelope of a parsed file:
//   prod(n, <e1>, <e2>)   n-th product
//   d(<e>)                translation
//   c:<rational>*<e>      scaling (binds to the next atom)
//   <e> + <e>             sum
//   <gen>                 embedded generator
// The result is not reduced; callers normalize as needed.
ModElement eval_mod_expr(const Envelope& E, const std::string& expr);

}  // namespace confal
