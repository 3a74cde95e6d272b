#include "modrewrite.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

namespace confal {

namespace {

constexpr int kGuard = 64;

}  // namespace

int word_dpow(const OpWord& w) {
  int c = 0;
  for (const auto& a : w) c += a.tag == kTagD;
  return c;
}

int word_degree(const OpWord& w) {
  int c = 1;
  for (const auto& a : w) c += a.tag != kTagD;
  return c;
}

int word_index_max(const OpWord& w) {
  int m = 0;
  for (const auto& a : w)
    if (a.tag != kTagD) m = std::max(m, a.index);
  return m;
}

void mod_add(ModElement& e, const ModMonomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = e.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) e.erase(it);
  }
}

void mod_add(ModElement& e, const ModElement& o, const Rational& scale) {
  for (const auto& [m, c] : o) mod_add(e, m, c * scale);
}

std::string mod_mono_str(const ModMonomial& m, const GeneratorSet& gens) {
  const std::string g = gens.names.at(m.gen);
  if (m.word.empty()) return g;
  return word_str(m.word, gens) + " " + g;
}

std::string mod_elem_str(const ModElement& e, const GeneratorSet& gens) {
  if (e.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : e) {
    if (!out.empty()) out += " + ";
    out += "(" + rational_str(c) + ") " + mod_mono_str(m, gens);
  }
  return out;
}

ModElement embed_conf(const ConformalAlgebraDesc& alg, const ConfElement& x) {
  ModElement out;
  for (const auto& [g, p] : x.comps) {
    const int gi = alg.gens.index_of(g);
    if (gi < 0) throw ConfalError(kErrParse, "unknown generator: " + g);
    for (const auto& [e, c] : p.terms()) {
      if (e[1] || e[2] || e[3])
        throw std::logic_error("embed_conf expects coefficients in k[d]");
      ModMonomial m;
      m.word.assign(e[0], op_d());
      m.gen = gi;
      mod_add(out, m, c);
    }
  }
  return out;
}

int RewriteSystem::locality(int ga, int gb) const {
  const auto& names = ctx.alg->gens.names;
  return ctx.alg->locality(names.at(ga), names.at(gb));
}

int RewriteSystem::parity_of(int g) const {
  return ctx.alg->gens.parity_of(ctx.alg->gens.names.at(g));
}

bool RewriteSystem::mono_less(const ModMonomial& a, const ModMonomial& b) const {
  if (ctx.order.word_less(a.word, b.word)) return true;
  if (ctx.order.word_less(b.word, a.word)) return false;
  return a.gen < b.gen;
}

RewriteSystem make_system(const ConformalAlgebraDesc* alg, MonomialOrder::Kind kind,
                          Bounds bounds) {
  RewriteSystem sys;
  sys.ctx.alg = alg;
  sys.ctx.order.kind = kind;
  sys.ctx.use_comm_l = alg->kind == AlgKind::Lie;
  sys.bounds = bounds;
  return sys;
}

// ---------------------------------------------------------------------------
// redex machinery
// ---------------------------------------------------------------------------

namespace {

// extended locality shadows the plain algebra rules on an L,L window
std::optional<PairRedex> mod_pair_redex(const RewriteSystem& sys, const OpLetter& x,
                                        const OpLetter& y) {
  if (x.tag == kTagL && y.tag == kTagL && x.index >= sys.locality(x.gen, y.gen)) {
    PairRedex r;
    r.priority = 3;
    for (int q = 1; q <= x.index; ++q)
      op_add(r.repl, OpWord{op_l(x.index - q, x.gen), op_l(y.index + q, y.gen)},
             binomial(x.index, q) * ratio(q % 2 ? 1 : -1));
    return r;
  }
  return alg_pair_redex(sys.ctx, x, y);
}

// R_n^g applied to the module generator mg
ModElement rightmul_expansion(const RewriteSystem& sys, const OpLetter& r, int mg) {
  ModElement out;
  const int bound = sys.locality(mg, r.gen);
  for (int s = 0; r.index + s + 1 <= bound; ++s) {
    ModMonomial m;
    m.gen = r.gen;
    m.word.assign(s, op_d());
    m.word.push_back(op_l(r.index + s, mg));
    mod_add(out, m, ratio((r.index + s) % 2 ? -1 : 1) * inv_factorial(s));
  }
  return out;
}

struct ModStep {
  int pos = 0;
  int priority = 0;  // 0 discovered, 1 locality, 2 right-mul, 3.. pair window
  int rule_id = -1;
  bool suffix = false;    // replacement covers word[pos..) and the generator
  OpElement word_repl;    // infix: replaces word[pos..pos+2)
  ModElement tail_repl;
};

std::optional<ModStep> find_mod_redex(const RewriteSystem& sys, const ModMonomial& mo) {
  std::optional<ModStep> best;
  auto better = [&](const ModStep& s) {
    return !best || std::tie(s.pos, s.priority, s.rule_id) <
                        std::tie(best->pos, best->priority, best->rule_id);
  };
  const int len = static_cast<int>(mo.word.size());
  for (const auto& r : sys.rules) {
    const int rl = static_cast<int>(r.lead.word.size());
    if (r.lead.gen != mo.gen || rl > len) continue;
    if (!std::equal(r.lead.word.begin(), r.lead.word.end(), mo.word.end() - rl))
      continue;
    ModStep s;
    s.pos = len - rl;
    s.priority = 0;
    s.rule_id = r.id;
    s.suffix = true;
    s.tail_repl = r.rhs;
    if (better(s)) best = std::move(s);
  }
  if (len > 0) {
    const OpLetter& last = mo.word.back();
    if (last.tag == kTagL && last.index >= sys.locality(last.gen, mo.gen)) {
      ModStep s;
      s.pos = len - 1;
      s.priority = 1;
      s.suffix = true;
      if (better(s)) best = std::move(s);
    } else if (last.tag == kTagR) {
      ModStep s;
      s.pos = len - 1;
      s.priority = 2;
      s.suffix = true;
      s.tail_repl = rightmul_expansion(sys, last, mo.gen);
      if (better(s)) best = std::move(s);
    }
  }
  for (int i = 0; i + 1 < len; ++i) {
    if (best && best->pos <= i) break;  // pair priorities never beat anchored ones
    if (auto pr = mod_pair_redex(sys, mo.word[i], mo.word[i + 1])) {
      ModStep s;
      s.pos = i;
      s.priority = pr->priority;
      s.word_repl = std::move(pr->repl);
      if (better(s)) best = std::move(s);
    }
  }
  return best;
}

template <class Emit>
void apply_step(const ModMonomial& mo, const ModStep& st, const Rational& coeff,
                Emit&& emit) {
  if (st.suffix) {
    for (const auto& [t, c] : st.tail_repl) {
      ModMonomial nm;
      nm.gen = t.gen;
      nm.word.reserve(st.pos + t.word.size());
      nm.word.assign(mo.word.begin(), mo.word.begin() + st.pos);
      nm.word.insert(nm.word.end(), t.word.begin(), t.word.end());
      emit(std::move(nm), c * coeff);
    }
  } else {
    for (const auto& [rw, c] : st.word_repl) {
      ModMonomial nm;
      nm.gen = mo.gen;
      nm.word.reserve(mo.word.size() - 2 + rw.size());
      nm.word.assign(mo.word.begin(), mo.word.begin() + st.pos);
      nm.word.insert(nm.word.end(), rw.begin(), rw.end());
      nm.word.insert(nm.word.end(), mo.word.begin() + st.pos + 2, mo.word.end());
      emit(std::move(nm), c * coeff);
    }
  }
}

}  // namespace

ModElement mod_normal_form(const RewriteSystem& sys, ModElement e) {
  struct ActiveLess {
    const RewriteSystem* s;
    bool operator()(const ModMonomial& a, const ModMonomial& b) const {
      return s->mono_less(a, b);
    }
  };
  std::map<ModMonomial, Rational, ActiveLess> pending(ActiveLess{&sys});
  auto push = [&](ModMonomial&& m, const Rational& c) {
    if (c == 0) return;
    if (static_cast<int>(m.word.size()) > kGuard)
      throw ConfalError(kErrBounds,
                        "transient guard exceeded: word length beyond " +
                            std::to_string(kGuard));
    for (const auto& a : m.word)
      if (a.index > kGuard)
        throw ConfalError(kErrBounds,
                          "transient guard exceeded: operator index beyond " +
                              std::to_string(kGuard));
    auto [it, fresh] = pending.emplace(std::move(m), c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) pending.erase(it);
    }
  };
  for (auto& [m, c] : e) push(ModMonomial(m), c);
  ModElement done;
  // the processed monomial strictly exceeds everything later, so each
  // irreducible word is final the moment it is popped
  while (!pending.empty()) {
    auto it = std::prev(pending.end());
    ModMonomial m = it->first;
    const Rational c = it->second;
    pending.erase(it);
    if (auto st = find_mod_redex(sys, m))
      apply_step(m, *st, c, push);
    else
      mod_add(done, m, c);
  }
  return done;
}

namespace {

// every applicable step, not just the deterministic minimum
std::vector<ModStep> all_mod_redexes(const RewriteSystem& sys, const ModMonomial& mo) {
  std::vector<ModStep> out;
  const int len = static_cast<int>(mo.word.size());
  for (const auto& r : sys.rules) {
    const int rl = static_cast<int>(r.lead.word.size());
    if (r.lead.gen != mo.gen || rl > len) continue;
    if (!std::equal(r.lead.word.begin(), r.lead.word.end(), mo.word.end() - rl))
      continue;
    ModStep s;
    s.pos = len - rl;
    s.priority = 0;
    s.rule_id = r.id;
    s.suffix = true;
    s.tail_repl = r.rhs;
    out.push_back(std::move(s));
  }
  if (len > 0) {
    const OpLetter& last = mo.word.back();
    if (last.tag == kTagL && last.index >= sys.locality(last.gen, mo.gen)) {
      ModStep s;
      s.pos = len - 1;
      s.priority = 1;
      s.suffix = true;
      out.push_back(std::move(s));
    } else if (last.tag == kTagR) {
      ModStep s;
      s.pos = len - 1;
      s.priority = 2;
      s.suffix = true;
      s.tail_repl = rightmul_expansion(sys, last, mo.gen);
      out.push_back(std::move(s));
    }
  }
  for (int i = 0; i + 1 < len; ++i)
    if (auto pr = mod_pair_redex(sys, mo.word[i], mo.word[i + 1])) {
      ModStep s;
      s.pos = i;
      s.priority = pr->priority;
      s.word_repl = std::move(pr->repl);
      out.push_back(std::move(s));
    }
  return out;
}

}  // namespace

ModElement mod_normal_form_random(const RewriteSystem& sys, ModElement e,
                                  uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto guard = [](const ModMonomial& m) {
    if (static_cast<int>(m.word.size()) > kGuard)
      throw ConfalError(kErrBounds,
                        "transient guard exceeded: word length beyond " +
                            std::to_string(kGuard));
    for (const auto& a : m.word)
      if (a.index > kGuard)
        throw ConfalError(kErrBounds,
                          "transient guard exceeded: operator index beyond " +
                              std::to_string(kGuard));
  };
  // Each step replaces one monomial by strictly smaller ones, so the multiset
  // of monomials descends and any strategy terminates.
  for (;;) {
    std::vector<std::pair<ModMonomial, std::vector<ModStep>>> reducible;
    for (const auto& [m, c] : e) {
      auto steps = all_mod_redexes(sys, m);
      if (!steps.empty()) reducible.emplace_back(m, std::move(steps));
    }
    if (reducible.empty()) return e;
    auto& [m, steps] =
        reducible[std::uniform_int_distribution<size_t>(0, reducible.size() - 1)(rng)];
    const ModStep& st =
        steps[std::uniform_int_distribution<size_t>(0, steps.size() - 1)(rng)];
    const Rational c = e.at(m);
    e.erase(m);
    apply_step(m, st, c, [&](ModMonomial&& nm, const Rational& nc) {
      if (nc == 0) return;
      guard(nm);
      mod_add(e, nm, nc);
    });
  }
}

// ---------------------------------------------------------------------------
// completion
// ---------------------------------------------------------------------------

namespace {

struct AmbKey {
  ModMonomial mono;
  int cat = 0;  // 0 seeds, 1 schema overlaps, 2 rule overlaps
  int i1 = 0;
  int i2 = 0;
};

struct AmbLess {
  const RewriteSystem* sys;
  bool operator()(const AmbKey& a, const AmbKey& b) const {
    if (sys->mono_less(a.mono, b.mono)) return true;
    if (sys->mono_less(b.mono, a.mono)) return false;
    return std::tie(a.cat, a.i1, a.i2) < std::tie(b.cat, b.i1, b.i2);
  }
};

int lie_support(const RewriteSystem& sys, int a, int b) {
  const auto& names = sys.ctx.alg->gens.names;
  int s = 0;
  for (const auto& [k, v] : sys.ctx.alg->table)
    if (std::get<0>(k) == names.at(a) && std::get<1>(k) == names.at(b))
      s = std::max(s, std::get<2>(k) + 1);
  return s;
}

int max_locality(const RewriteSystem& sys) {
  const int ng = static_cast<int>(sys.ctx.alg->gens.names.size());
  int m = 1;
  for (int a = 0; a < ng; ++a)
    for (int b = 0; b < ng; ++b) m = std::max(m, sys.locality(a, b));
  return m;
}

// letters used for overlap enumeration; indexes carry a locality margin so
// that boundary overlaps (e.g. a rel3 swap against a locality kill) are seen
std::vector<OpLetter> overlap_letters(const RewriteSystem& sys) {
  const int ng = static_cast<int>(sys.ctx.alg->gens.names.size());
  const int cap = sys.bounds.max_index + max_locality(sys);
  std::vector<OpLetter> out{op_d()};
  for (int n = 0; n <= cap; ++n)
    for (int g = 0; g < ng; ++g) {
      out.push_back(op_l(n, g));
      out.push_back(op_r(n, g));
    }
  return out;
}

bool overlap_in_scope(const RewriteSystem& sys, const OpWord& w) {
  return word_degree(w) <= sys.bounds.max_degree &&
         word_dpow(w) <= sys.bounds.max_dpow;
}

// Leads outside the bounds window belong to the untruncated system; no word
// inside the window can contain them, so discoveries there are dropped.
bool lead_in_bounds(const RewriteSystem& sys, const OpWord& w) {
  return word_degree(w) <= sys.bounds.max_degree &&
         word_dpow(w) <= sys.bounds.max_dpow &&
         word_index_max(w) <= sys.bounds.max_index;
}

ModElement branch_infix(const ModMonomial& mo, int pos, const PairRedex& pr) {
  ModStep st;
  st.pos = pos;
  st.word_repl = pr.repl;
  ModElement out;
  apply_step(mo, st, ratio(1), [&](ModMonomial&& m, const Rational& c) {
    mod_add(out, m, c);
  });
  return out;
}

ModElement branch_suffix(const ModMonomial& mo, int pos, const ModElement& tail) {
  ModStep st;
  st.pos = pos;
  st.suffix = true;
  st.tail_repl = tail;
  ModElement out;
  apply_step(mo, st, ratio(1), [&](ModMonomial&& m, const Rational& c) {
    mod_add(out, m, c);
  });
  return out;
}

// Three-letter overlaps of two infix windows and two-letter overlaps of an
// infix window against a generator-anchored schema rule (locality; nothing
// pairs with an R on its right, so right-mul needs no case here).
template <class Sink>
void schema_ambiguities(const RewriteSystem& sys, const std::vector<OpLetter>& letters,
                        Sink&& sink) {
  const int ng = static_cast<int>(sys.ctx.alg->gens.names.size());
  const int nl = static_cast<int>(letters.size());
  std::vector<std::optional<PairRedex>> pair(nl * nl);
  for (int i = 0; i < nl; ++i)
    for (int j = 0; j < nl; ++j)
      pair[i * nl + j] = mod_pair_redex(sys, letters[i], letters[j]);
  int tick = 0;
  for (int i = 0; i < nl; ++i)
    for (int j = 0; j < nl; ++j) {
      if (!pair[i * nl + j]) continue;
      for (int k = 0; k < nl; ++k) {
        if (!pair[j * nl + k]) continue;
        for (int g = 0; g < ng; ++g) {
          ModMonomial om{{letters[i], letters[j], letters[k]}, g};
          ModElement diff = branch_infix(om, 0, *pair[i * nl + j]);
          mod_add(diff, branch_infix(om, 1, *pair[j * nl + k]), ratio(-1));
          sink(AmbKey{om, 1, tick++, 0}, std::move(diff));
        }
      }
    }
  for (int a = 0; a < ng; ++a)
    for (int b = 0; b < ng; ++b)
      for (int n = sys.locality(a, b); n <= sys.bounds.max_index + max_locality(sys);
           ++n) {
        const OpLetter ln = op_l(n, a);
        for (int i = 0; i < nl; ++i) {
          auto pr = mod_pair_redex(sys, letters[i], ln);
          if (!pr) continue;
          ModMonomial om{{letters[i], ln}, b};
          // the anchored branch is zero, so the infix branch must resolve
          sink(AmbKey{om, 1, tick++, 0}, branch_infix(om, 0, *pr));
        }
      }
}

// Overlaps contributed by one discovered rule: an infix window hanging off
// the left end of its lead, and suffix-in-suffix against earlier rules.
template <class Sink>
void rule_ambiguities(const RewriteSystem& sys, const ModRule& r,
                      const std::vector<OpLetter>& letters, Sink&& sink) {
  const OpWord& w = r.lead.word;
  if (w.empty()) return;
  int tick = 0;
  for (const auto& x : letters) {
    auto pr = mod_pair_redex(sys, x, w.front());
    if (!pr) continue;
    OpWord ow;
    ow.reserve(w.size() + 1);
    ow.push_back(x);
    ow.insert(ow.end(), w.begin(), w.end());
    if (!overlap_in_scope(sys, ow)) continue;
    ModMonomial om{std::move(ow), r.lead.gen};
    ModElement diff = branch_infix(om, 0, *pr);
    mod_add(diff, branch_suffix(om, 1, r.rhs), ratio(-1));
    sink(AmbKey{om, 2, r.id, tick}, std::move(diff));
    ++tick;
  }
  for (const auto& r2 : sys.rules) {
    if (r2.id >= r.id || r2.lead.gen != r.lead.gen) continue;
    const OpWord& w2 = r2.lead.word;
    const ModRule& lng = w2.size() >= w.size() ? r2 : r;
    const ModRule& sht = w2.size() >= w.size() ? r : r2;
    const OpWord& lw = lng.lead.word;
    const OpWord& sw = sht.lead.word;
    if (lw.size() == sw.size()) continue;  // distinct leads of equal length
    if (!std::equal(sw.begin(), sw.end(), lw.end() - sw.size())) continue;
    ModMonomial om = lng.lead;
    ModElement diff = branch_suffix(om, 0, lng.rhs);
    mod_add(diff,
            branch_suffix(om, static_cast<int>(lw.size() - sw.size()), sht.rhs),
            ratio(-1));
    sink(AmbKey{om, 2, r.id, 1000 + r2.id}, std::move(diff));
  }
}

int interreduce(RewriteSystem& sys) {
  int dropped = 0;
  bool changed = true;
  int passes = 0;
  while (changed) {
    if (++passes > 100)
      throw ConfalError(kErrBounds, "interreduction did not stabilize");
    changed = false;
    std::sort(sys.rules.begin(), sys.rules.end(),
              [&](const ModRule& a, const ModRule& b) {
                return sys.mono_less(a.lead, b.lead);
              });
    for (size_t i = 0; i < sys.rules.size();) {
      ModRule r = std::move(sys.rules[i]);
      sys.rules.erase(sys.rules.begin() + i);
      ModElement e;
      mod_add(e, r.lead, ratio(1));
      mod_add(e, r.rhs, ratio(-1));
      ModElement n = mod_normal_form(sys, e);
      if (n.empty()) {
        ++dropped;
        changed = true;
        continue;
      }
      auto lead = n.begin();
      for (auto it = n.begin(); it != n.end(); ++it)
        if (sys.mono_less(lead->first, it->first)) lead = it;
      if (!lead_in_bounds(sys, lead->first.word)) {  // truncation boundary
        ++dropped;
        changed = true;
        continue;
      }
      ModRule nr;
      nr.lead = lead->first;
      nr.id = r.id;
      const Rational lc = lead->second;
      for (const auto& [m, c] : n)
        if (m != nr.lead) nr.rhs[m] = -c / lc;
      if (nr.lead != r.lead || nr.rhs != r.rhs) changed = true;
      sys.rules.insert(sys.rules.begin() + i, std::move(nr));
      ++i;
    }
  }
  std::sort(sys.rules.begin(), sys.rules.end(),
            [&](const ModRule& a, const ModRule& b) {
              return sys.mono_less(a.lead, b.lead);
            });
  for (size_t i = 0; i < sys.rules.size(); ++i)
    sys.rules[i].id = static_cast<int>(i);
  return dropped;
}

}  // namespace

CompletionStats complete(RewriteSystem& sys) {
  if (!sys.rules.empty())
    throw std::logic_error("complete() expects a fresh system");
  CompletionStats stats;
  const auto& G = sys.ctx.alg->gens;
  const int ng = static_cast<int>(G.names.size());
  const std::vector<OpLetter> letters = overlap_letters(sys);

  std::map<AmbKey, ModElement, AmbLess> queue{AmbLess{&sys}};
  auto enqueue = [&](const AmbKey& k, ModElement&& e) {
    queue.emplace(k, std::move(e));
  };

  int boundary_drops = 0;
  auto add_rule = [&](const ModElement& nf, bool from_seed) {
    auto lead = nf.begin();
    for (auto it = nf.begin(); it != nf.end(); ++it)
      if (sys.mono_less(lead->first, it->first)) lead = it;
    ModRule r;
    r.lead = lead->first;
    r.id = static_cast<int>(sys.rules.size());
    if (!lead_in_bounds(sys, r.lead.word)) {
      if (from_seed)
        throw ConfalError(kErrBounds,
                          "bounds too small for defining relation: " +
                              mod_mono_str(r.lead, G));
      ++boundary_drops;
      return;
    }
    const Rational lc = lead->second;
    for (const auto& [m, c] : nf)
      if (m != r.lead) r.rhs[m] = -c / lc;
    rule_ambiguities(sys, r, letters, enqueue);
    sys.rules.push_back(std::move(r));
    ++stats.discovered;
  };

  auto handle = [&](const ModElement& e, bool from_seed) {
    ++stats.processed;
    ModElement n = mod_normal_form(sys, e);
    if (!n.empty()) add_rule(n, from_seed);
  };

  // commutator seeds: both evaluations of R_n^a b
  std::vector<std::pair<AmbKey, ModElement>> seeds;
  for (int a = 0; a < ng; ++a)
    for (int b = 0; b < ng; ++b) {
      const int top = std::max({sys.locality(a, b), sys.locality(b, a),
                                lie_support(sys, a, b)});
      for (int n = 0; n < top; ++n) {
        // R_n^a b = (-1)^{|a||b|} (L_n^a b - [a_(n) b]): the parity sign
        // covers the whole commutator rearrangement
        ModElement e = rightmul_expansion(sys, op_r(n, a), b);
        const int sgn = (sys.parity_of(a) && sys.parity_of(b)) ? -1 : 1;
        mod_add(e, ModMonomial{{op_l(n, a)}, b}, ratio(-sgn));
        auto it = sys.ctx.alg->table.find({G.names.at(a), G.names.at(b), n});
        if (it != sys.ctx.alg->table.end())
          mod_add(e, embed_conf(*sys.ctx.alg, it->second), ratio(sgn));
        seeds.push_back({AmbKey{ModMonomial{{op_r(n, a)}, b}, 0, a * ng + b, n},
                         std::move(e)});
        ++stats.seeds;
      }
    }
  std::sort(seeds.begin(), seeds.end(),
            [&](const auto& x, const auto& y) {
              return AmbLess{&sys}(x.first, y.first);
            });
  for (auto& [k, e] : seeds) handle(e, true);

  schema_ambiguities(sys, letters, enqueue);
  while (!queue.empty()) {
    auto it = queue.begin();
    ModElement e = std::move(it->second);
    queue.erase(it);
    handle(e, false);
  }

  stats.dropped = boundary_drops + interreduce(sys);
  return stats;
}

std::vector<std::string> confluence_recheck(const RewriteSystem& sys) {
  std::vector<std::string> bad;
  const std::vector<OpLetter> letters = overlap_letters(sys);
  auto probe = [&](const AmbKey& k, ModElement&& e) {
    ModElement n = mod_normal_form(sys, e);
    if (n.empty()) return;
    auto lead = n.begin();
    for (auto it = n.begin(); it != n.end(); ++it)
      if (sys.mono_less(lead->first, it->first)) lead = it;
    if (!lead_in_bounds(sys, lead->first.word)) return;  // truncation boundary
    bad.push_back("unresolved overlap " + mod_mono_str(k.mono, sys.ctx.alg->gens) +
                  ": " + mod_elem_str(n, sys.ctx.alg->gens));
  };
  schema_ambiguities(sys, letters, probe);
  for (const auto& r : sys.rules) rule_ambiguities(sys, r, letters, probe);
  return bad;
}

std::vector<ModMonomial> enumerate_reduced(const RewriteSystem& sys,
                                           const Bounds& window) {
  const int ng = static_cast<int>(sys.ctx.alg->gens.names.size());
  std::vector<OpLetter> letters{op_d()};  // R words are always reducible
  for (int n = 0; n <= window.max_index; ++n)
    for (int g = 0; g < ng; ++g) letters.push_back(op_l(n, g));
  std::vector<ModMonomial> out;
  OpWord cur;
  std::function<void(int, int)> rec = [&](int lcount, int dcount) {
    for (int g = 0; g < ng; ++g) {
      ModMonomial m{cur, g};
      if (!find_mod_redex(sys, m)) out.push_back(std::move(m));
    }
    for (const auto& a : letters) {
      if (a.tag == kTagD ? dcount + 1 > window.max_dpow
                         : lcount + 2 > window.max_degree)
        continue;
      if (!cur.empty() && mod_pair_redex(sys, cur.back(), a)) continue;
      cur.push_back(a);
      rec(lcount + (a.tag != kTagD), dcount + (a.tag == kTagD));
      cur.pop_back();
    }
  };
  rec(0, 0);
  std::sort(out.begin(), out.end(), [&](const ModMonomial& a, const ModMonomial& b) {
    return sys.mono_less(a, b);
  });
  return out;
}

std::string certificate(const RewriteSystem& sys) {
  std::ostringstream os;
  os << "system " << sys.ctx.alg->name << " order="
     << (sys.ctx.order.kind == MonomialOrder::Kind::Standard ? "standard"
                                                             : "variant")
     << " degree<=" << sys.bounds.max_degree << " dpow<=" << sys.bounds.max_dpow
     << " index<=" << sys.bounds.max_index << "\n";
  os << "rules " << sys.rules.size() << "\n";
  std::vector<const ModRule*> sorted;
  for (const auto& r : sys.rules) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(), [&](const ModRule* a, const ModRule* b) {
    return sys.mono_less(a->lead, b->lead);
  });
  for (const ModRule* r : sorted)
    os << mod_mono_str(r->lead, sys.ctx.alg->gens) << " -> "
       << mod_elem_str(r->rhs, sys.ctx.alg->gens) << "\n";
  return os.str();
}

}  // namespace confal
