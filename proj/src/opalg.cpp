#include "opalg.hpp"

namespace confal {

void op_add(OpElement& e, const OpWord& w, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = e.emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) e.erase(it);
  }
}

void op_add(OpElement& e, const OpElement& o, const Rational& scale) {
  for (const auto& [w, c] : o) op_add(e, w, c * scale);
}

std::string letter_str(const OpLetter& a, const GeneratorSet& gens) {
  if (a.tag == kTagD) return "d";
  std::string s = (a.tag == kTagL ? "L" : "R");
  s += std::to_string(a.index);
  s += "^";
  s += gens.names.at(a.gen);
  return s;
}

std::string word_str(const OpWord& w, const GeneratorSet& gens) {
  if (w.empty()) return "1";
  std::string s;
  for (const auto& a : w) {
    if (!s.empty()) s += " ";
    s += letter_str(a, gens);
  }
  return s;
}

std::string op_elem_str(const OpElement& e, const GeneratorSet& gens) {
  if (e.empty()) return "0";
  std::string s;
  for (const auto& [w, c] : e) {
    if (!s.empty()) s += " + ";
    s += "(" + rational_str(c) + ") " + word_str(w, gens);
  }
  return s;
}

std::array<int, 3> MonomialOrder::letter_key(const OpLetter& a) const {
  if (kind == Kind::Standard) {
    if (a.tag == kTagD) return {0, 0, 0};
    if (a.tag == kTagL) return {1, a.index, a.gen};
    return {2, a.index, a.gen};
  }
  // variant: L_0 < L_1 < d < L_2 < ... < R's
  if (a.tag == kTagL) return {a.index <= 1 ? 0 : 2, a.index, a.gen};
  if (a.tag == kTagD) return {1, 0, 0};
  return {3, a.index, a.gen};
}

bool MonomialOrder::word_less(const OpWord& a, const OpWord& b) const {
  auto rcount = [](const OpWord& w) {
    int n = 0;
    for (const auto& x : w) n += x.tag == kTagR;
    return n;
  };
  const int ra = rcount(a), rb = rcount(b);
  if (ra != rb) return ra < rb;
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = 0; i < a.size(); ++i) {
    const auto ka = letter_key(a[i]), kb = letter_key(b[i]);
    if (ka != kb) return ka < kb;
  }
  return false;
}

OpElement lify(const ConformalAlgebraDesc& alg, const ConfElement& val, int j) {
  OpElement out;
  for (const auto& [g, p] : val.comps) {
    const int gi = alg.gens.index_of(g);
    if (gi < 0) throw ConfalError(kErrParse, "unknown generator: " + g);
    for (const auto& [e, c] : p.terms()) {
      if (e[static_cast<int>(Var::L)] || e[static_cast<int>(Var::M)] ||
          e[static_cast<int>(Var::X)])
        throw std::logic_error("table value must lie in k[d]");
      const int t = e[static_cast<int>(Var::D)];
      const Rational f = falling(j, t);
      if (f == 0) continue;
      op_add(out, OpWord{op_l(j - t, gi)}, c * f * ratio(t % 2 ? -1 : 1));
    }
  }
  return out;
}

std::optional<PairRedex> alg_pair_redex(const OpContext& ctx, const OpLetter& x,
                                        const OpLetter& y) {
  const MonomialOrder& ord = ctx.order;
  if (x.tag == kTagR && y.tag == kTagL) {
    PairRedex r{4, {}};
    op_add(r.repl, OpWord{y, x}, ratio(1));
    return r;
  }
  if (x.tag == kTagL && y.tag == kTagD && ord.letter_less(y, x)) {
    PairRedex r{5, {}};
    op_add(r.repl, OpWord{y, x}, ratio(1));
    if (x.index > 0) op_add(r.repl, OpWord{op_l(x.index - 1, x.gen)}, ratio(x.index));
    return r;
  }
  if (x.tag == kTagD && y.tag == kTagL && ord.letter_less(y, x)) {
    PairRedex r{5, {}};
    op_add(r.repl, OpWord{y, x}, ratio(1));
    if (y.index > 0) op_add(r.repl, OpWord{op_l(y.index - 1, y.gen)}, ratio(-y.index));
    return r;
  }
  if (x.tag == kTagR && y.tag == kTagD) {
    PairRedex r{5, {}};
    op_add(r.repl, OpWord{y, x}, ratio(1));
    if (x.index > 0) op_add(r.repl, OpWord{op_r(x.index - 1, x.gen)}, ratio(x.index));
    return r;
  }
  if (ctx.use_comm_l && x.tag == kTagL && y.tag == kTagL) {
    if (!ctx.alg) throw std::logic_error("commutation rules need an algebra");
    const auto& gens = ctx.alg->gens;
    const int pa = gens.parity_of(gens.names.at(x.gen));
    const int pb = gens.parity_of(gens.names.at(y.gen));
    const std::string &a = gens.names.at(x.gen), &b = gens.names.at(y.gen);
    if (ord.letter_less(y, x)) {
      PairRedex r{6, {}};
      op_add(r.repl, OpWord{y, x}, ratio((pa * pb) % 2 ? -1 : 1));
      for (auto it = ctx.alg->table.lower_bound({a, b, 0});
           it != ctx.alg->table.end() && std::get<0>(it->first) == a &&
           std::get<1>(it->first) == b;
           ++it) {
        const int s = std::get<2>(it->first);
        const Rational bn = binomial(x.index, s);
        if (bn == 0) continue;
        op_add(r.repl, lify(*ctx.alg, it->second, x.index + y.index - s), bn);
      }
      return r;
    }
    if (x == y && pa % 2 == 1) {
      PairRedex r{6, {}};
      for (auto it = ctx.alg->table.lower_bound({a, a, 0});
           it != ctx.alg->table.end() && std::get<0>(it->first) == a &&
           std::get<1>(it->first) == a;
           ++it) {
        const int s = std::get<2>(it->first);
        const Rational bn = binomial(x.index, s);
        if (bn == 0) continue;
        op_add(r.repl, lify(*ctx.alg, it->second, 2 * x.index - s),
               bn * ratio(1, 2));
      }
      return r;
    }
  }
  return std::nullopt;
}

namespace {

struct WordLess {
  MonomialOrder ord;
  bool operator()(const OpWord& a, const OpWord& b) const {
    return ord.word_less(a, b);
  }
};

std::optional<std::pair<int, PairRedex>> find_alg_redex(const OpContext& ctx,
                                                        const OpWord& w) {
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (auto r = alg_pair_redex(ctx, w[i], w[i + 1]))
      return std::make_pair(static_cast<int>(i), *r);
  return std::nullopt;
}

}  // namespace

OpElement alg_normal_form(const OpContext& ctx, OpElement e) {
  std::map<OpWord, Rational, WordLess> pending{WordLess{ctx.order}};
  for (const auto& [w, c] : e)
    if (c != 0) pending.emplace(w, c);
  OpElement done;
  while (!pending.empty()) {
    auto top = std::prev(pending.end());
    const OpWord w = top->first;
    const Rational c = top->second;
    pending.erase(top);
    if (c == 0) continue;
    auto red = find_alg_redex(ctx, w);
    if (!red) {
      op_add(done, w, c);
      continue;
    }
    const auto& [pos, pr] = *red;
    for (const auto& [rw, rc] : pr.repl) {
      OpWord nw;
      nw.reserve(w.size() - 2 + rw.size());
      nw.insert(nw.end(), w.begin(), w.begin() + pos);
      nw.insert(nw.end(), rw.begin(), rw.end());
      nw.insert(nw.end(), w.begin() + pos + 2, w.end());
      auto [it, fresh] = pending.emplace(std::move(nw), rc * c);
      if (!fresh) {
        it->second += rc * c;
        if (it->second == 0) pending.erase(it);
      }
    }
  }
  return done;
}

std::vector<std::string> alg_composition_check(const OpContext& ctx,
                                               int max_index) {
  if (!ctx.alg) throw std::logic_error("composition check needs an algebra");
  std::vector<OpLetter> letters{op_d()};
  const int ng = static_cast<int>(ctx.alg->gens.names.size());
  for (int n = 0; n <= max_index; ++n)
    for (int g = 0; g < ng; ++g) {
      letters.push_back(op_l(n, g));
      letters.push_back(op_r(n, g));
    }
  std::vector<std::string> out;
  for (const auto& x : letters)
    for (const auto& y : letters) {
      auto rxy = alg_pair_redex(ctx, x, y);
      if (!rxy) continue;
      for (const auto& z : letters) {
        auto ryz = alg_pair_redex(ctx, y, z);
        if (!ryz) continue;
        OpElement b1, b2;
        for (const auto& [w, c] : rxy->repl) {
          OpWord nw = w;
          nw.push_back(z);
          op_add(b1, nw, c);
        }
        for (const auto& [w, c] : ryz->repl) {
          OpWord nw{x};
          nw.insert(nw.end(), w.begin(), w.end());
          op_add(b2, nw, c);
        }
        OpElement diff = alg_normal_form(ctx, b1);
        op_add(diff, alg_normal_form(ctx, b2), ratio(-1));
        if (!diff.empty())
          out.push_back("overlap " + word_str({x, y, z}, ctx.alg->gens) +
                        " leaves " + op_elem_str(diff, ctx.alg->gens));
      }
    }
  return out;
}

}  // namespace confal
