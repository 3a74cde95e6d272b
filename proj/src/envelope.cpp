#include "envelope.hpp"

#include <algorithm>
#include <sstream>

namespace confal {

Envelope build_envelope(const ConformalAlgebraDesc& lie, MonomialOrder::Kind kind,
                        Bounds bounds) {
  AxiomReport rep = check_axioms(lie);
  if (!rep.pass())
    throw ConfalError(kErrVerify,
                      "input axioms fail: " + rep.violations.front());
  Envelope E;
  E.lie = std::make_unique<ConformalAlgebraDesc>(lie);
  E.sys = make_system(E.lie.get(), kind, bounds);
  E.stats = complete(E.sys);
  return E;
}

int word_parity(const RewriteSystem& sys, const ModMonomial& m) {
  int p = sys.parity_of(m.gen);
  for (const auto& a : m.word)
    if (a.tag != kTagD) p ^= sys.parity_of(a.gen);
  return p;
}

int action_bound(const RewriteSystem& sys, int a, const ModMonomial& m) {
  // Pushing L_n^a to the generator loses at most one index per d (r1) and at
  // most N(a,b)-1 per letter L^b (the commutator table stops at that depth);
  // what reaches the generator with index >= N(a, gen) dies by locality.
  int b = sys.locality(a, m.gen);
  for (const auto& x : m.word) {
    if (x.tag == kTagD)
      b += 1;
    else if (x.tag == kTagL)
      b += std::max(0, sys.locality(a, x.gen) - 1 - x.index);
  }
  return b;
}

namespace {

ModElement apply_letter(const OpLetter& a, const ModElement& e) {
  ModElement out;
  for (const auto& [m, c] : e) {
    ModMonomial nm;
    nm.gen = m.gen;
    nm.word.reserve(m.word.size() + 1);
    nm.word.push_back(a);
    nm.word.insert(nm.word.end(), m.word.begin(), m.word.end());
    mod_add(out, nm, c);
  }
  return out;
}

// product of the tail w[pos..) applied to generator `gen` with z, in divided
// powers of the slot
LambdaPoly peel(const RewriteSystem& sys, const OpWord& w, size_t pos, int gen,
                const ModElement& z) {
  LambdaPoly out;
  if (z.empty()) return out;
  if (pos == w.size()) {
    int bound = 0;
    for (const auto& [m, c] : z)
      bound = std::max(bound, action_bound(sys, gen, m));
    for (int n = 0; n < bound + 3; ++n) {
      ModElement e = mod_normal_form(sys, apply_letter(op_l(n, gen), z));
      if (e.empty()) continue;
      if (n >= bound)
        throw ConfalError(kErrVerify, "action bound defect at index " +
                                          std::to_string(n));
      out.emplace(n, std::move(e));
    }
    return out;
  }
  const OpLetter& head = w[pos];
  LambdaPoly p = peel(sys, w, pos + 1, gen, z);
  if (p.empty()) return out;
  const int top = p.rbegin()->first;
  if (head.tag == kTagD) {
    // (d u)_(k+1) = -(k+1) u_(k)
    for (const auto& [k, e] : p) {
      ModElement s = e;
      for (auto& [m, c] : s) c *= ratio(-(k + 1));
      out.emplace(k + 1, std::move(s));
    }
    return out;
  }
  if (head.tag != kTagL)
    throw ConfalError(kErrVerify, "right-multiplication letter in a normal word");
  // (a_(s) u)_(i) = sum_q (-1)^q binom(s,q) a_(s-q) u_(i+q)
  for (int i = 0; i <= top; ++i) {
    ModElement acc;
    for (int q = 0; q <= head.index && i + q <= top; ++q) {
      auto it = p.find(i + q);
      if (it == p.end()) continue;
      Rational c = ratio_z(binomial(head.index, q));
      if (q % 2) c = -c;
      ModElement t = mod_normal_form(
          sys, apply_letter(op_l(head.index - q, head.gen), it->second));
      mod_add(acc, t, c);
    }
    if (!acc.empty()) out.emplace(i, std::move(acc));
  }
  return out;
}

}  // namespace

LambdaPoly env_lambda_product(const Envelope& E, const ModElement& u,
                              const ModElement& v) {
  ModElement un = mod_normal_form(E.sys, u);
  ModElement vn = mod_normal_form(E.sys, v);
  LambdaPoly out;
  for (const auto& [m, c] : un) {
    LambdaPoly p = peel(E.sys, m.word, 0, m.gen, vn);
    for (auto& [n, e] : p) mod_add(out[n], e, c);
  }
  for (auto it = out.begin(); it != out.end();) {
    for (auto jt = it->second.begin(); jt != it->second.end();)
      jt = jt->second == 0 ? it->second.erase(jt) : std::next(jt);
    it = it->second.empty() ? out.erase(it) : std::next(it);
  }
  return out;
}

LambdaPoly env_conjugate(const Envelope& E, const ModElement& u,
                         const ModElement& v) {
  // {u l v} = sum_k (-d-l)^(k) u_(k) v,  (-d-l)^(k) = (-1)^k sum d^(i)/ l^(j)
  LambdaPoly p = env_lambda_product(E, u, v);
  LambdaPoly out;
  for (const auto& [k, e] : p) {
    for (int i = 0; i <= k; ++i) {
      ModElement t = e;
      for (int step = 0; step < i; ++step) t = apply_letter(op_d(), t);
      t = mod_normal_form(E.sys, t);
      Rational c = inv_factorial(i);
      if (k % 2) c = -c;
      mod_add(out[k - i], t, c);
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    for (auto jt = it->second.begin(); jt != it->second.end();)
      jt = jt->second == 0 ? it->second.erase(jt) : std::next(jt);
    it = it->second.empty() ? out.erase(it) : std::next(it);
  }
  return out;
}

std::string lambda_poly_str(const LambdaPoly& p, const GeneratorSet& gens) {
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [n, e] : p) {
    if (!first) os << "\n";
    first = false;
    os << "l^(" << n << ") " << mod_elem_str(e, gens);
  }
  return os.str();
}

ModElement degree_part(const ModElement& e, int deg) {
  ModElement out;
  for (const auto& [m, c] : e)
    if (word_degree(m.word) == deg) out.emplace(m, c);
  return out;
}

namespace {

// pure parity and pure degree of a normalized element, or throw
std::pair<int, int> pure_shape(const RewriteSystem& sys, const ModElement& e,
                               const char* side) {
  auto it = e.begin();
  const int par = word_parity(sys, it->first);
  const int deg = word_degree(it->first.word);
  for (const auto& [m, c] : e)
    if (word_parity(sys, m) != par || word_degree(m.word) != deg)
      throw ConfalError(kErrVerify,
                        std::string("mixed ") + side + " factor in graded product");
  return {par, deg};
}

}  // namespace

GradedPair graded_products(const Envelope& E, const ModElement& u, int n,
                           const ModElement& v, int m) {
  GradedPair out;
  ModElement un = mod_normal_form(E.sys, u);
  ModElement vn = mod_normal_form(E.sys, v);
  if (un.empty() || vn.empty()) return out;
  auto [pu, du] = pure_shape(E.sys, un, "left");
  auto [pv, dv] = pure_shape(E.sys, vn, "right");
  if (du != n || dv != m)
    throw ConfalError(kErrVerify, "graded product factors off their degrees");
  LambdaPoly p = env_lambda_product(E, un, vn);
  for (const auto& [k, e] : p) {
    for (const auto& [mm, cc] : e)
      if (word_degree(mm.word) > n + m)
        throw ConfalError(kErrVerify, "filtration overflow in product: " +
                                          mod_mono_str(mm, E.lie->gens));
    ModElement top = degree_part(e, n + m);
    if (!top.empty()) out.comm.emplace(k, std::move(top));
  }
  LambdaPoly q = env_conjugate(E, vn, un);
  const int sign = (pu && pv) ? -1 : 1;
  std::map<int, ModElement> diff;
  for (const auto& [k, e] : p) mod_add(diff[k], e, ratio(1));
  for (const auto& [k, e] : q) mod_add(diff[k], e, ratio(-sign));
  for (auto& [k, e] : diff) {
    ModElement top = degree_part(e, n + m);
    if (!top.empty())
      throw ConfalError(kErrVerify,
                        "commutator keeps the top degree: " +
                            mod_elem_str(top, E.lie->gens));
    ModElement brk = degree_part(e, n + m - 1);
    if (!brk.empty()) out.bracket.emplace(k, std::move(brk));
  }
  return out;
}

// ---------------------------------------------------------------------------
// tables
// ---------------------------------------------------------------------------

std::string PoissonTable::dump() const {
  std::vector<std::string> labels;
  for (const auto& [g, d] : grade) labels.push_back(g);
  auto by_grade = [&](const std::string& a, const std::string& b) {
    return std::pair(grade.at(a), a) < std::pair(grade.at(b), b);
  };
  std::sort(labels.begin(), labels.end(), by_grade);
  std::ostringstream os;
  os << "poisson table " << name << "\n";
  for (const auto& g : labels) {
    os << "label " << g << " grade " << grade.at(g);
    auto p = parity.find(g);
    if (p != parity.end() && p->second) os << " odd";
    os << "\n";
  }
  auto block = [&](const char* head,
                   const std::map<std::pair<std::string, std::string>,
                                  ConfElement>& entries) {
    std::vector<std::pair<std::string, std::string>> keys;
    for (const auto& [k, e] : entries) keys.push_back(k);
    std::sort(keys.begin(), keys.end(), [&](const auto& a, const auto& b) {
      return std::tuple(grade.at(a.first), a.first, grade.at(a.second), a.second) <
             std::tuple(grade.at(b.first), b.first, grade.at(b.second), b.second);
    });
    for (const auto& k : keys)
      os << head << " " << k.first << " " << k.second << " = "
         << entries.at(k).str() << "\n";
  };
  block("COMM", comm);
  block("BRACKET", bracket);
  return os.str();
}

namespace {

ModElement single(ModMonomial m) {
  ModElement e;
  e.emplace(std::move(m), ratio(1));
  return e;
}

ExactPoly l_divided(int k) { return poly_l().pow(k) * inv_factorial(k); }

// --- direct conversion for the locality-two envelope: every reduced word of
// degree j is d^s (L_0)^{j-1} applied to the generator -----------------------
ConfElement pv2_convert(const LambdaPoly& p, int deg) {
  ConfElement out;
  for (const auto& [k, e] : p) {
    for (const auto& [m, c] : e) {
      int dpow = 0;
      for (const auto& a : m.word) {
        if (a.tag == kTagD)
          ++dpow;
        else if (a.tag != kTagL || a.index != 0 || a.gen != 0)
          throw ConfalError(kErrVerify, "unexpected word shape in pv2 quotient");
      }
      out += ConfElement::term(poly_d().pow(dpow) * l_divided(k) * c,
                               "v_" + std::to_string(deg));
    }
  }
  return out;
}

// --- label solve: express a degree-homogeneous element over d-shifts of the
// label representatives ------------------------------------------------------
struct LabelBasis {
  std::vector<std::string> labels;          // labels of this grade
  std::vector<std::pair<int, int>> cols;    // (label position, d-shift)
  std::vector<ModElement> col_elems;
};

ConfElement solve_labels(const RewriteSystem& sys,
                         const std::map<std::string, ModMonomial>& reps,
                         const std::map<std::string, int>& grade,
                         const LambdaPoly& p, int deg) {
  ConfElement out;
  if (p.empty()) return out;
  int maxd = 0;
  for (const auto& [k, e] : p)
    for (const auto& [m, c] : e) maxd = std::max(maxd, word_dpow(m.word));
  const int S = maxd + 2;
  LabelBasis B;
  for (const auto& [g, d] : grade)
    if (d == deg) B.labels.push_back(g);
  for (size_t li = 0; li < B.labels.size(); ++li) {
    ModElement e = single(reps.at(B.labels[li]));
    for (int s = 0; s <= S; ++s) {
      B.cols.emplace_back(static_cast<int>(li), s);
      B.col_elems.push_back(degree_part(mod_normal_form(sys, e), deg));
      e = apply_letter(op_d(), e);
    }
  }
  std::map<ModMonomial, int> row;
  for (const auto& e : B.col_elems)
    for (const auto& [m, c] : e) row.emplace(m, 0);
  for (const auto& [k, e] : p)
    for (const auto& [m, c] : e) row.emplace(m, 0);
  int r = 0;
  for (auto& [m, idx] : row) idx = r++;
  QMatrix A(r, static_cast<int>(B.cols.size()));
  for (size_t j = 0; j < B.col_elems.size(); ++j)
    for (const auto& [m, c] : B.col_elems[j])
      A.a[static_cast<size_t>(row.at(m)) * A.cols + j] = c;
  if (q_rank(A) != A.cols)
    throw ConfalError(kErrVerify, "dependent label representatives at grade " +
                                      std::to_string(deg));
  for (const auto& [k, e] : p) {
    std::vector<Rational> rhs(static_cast<size_t>(r), ratio(0));
    for (const auto& [m, c] : e) rhs[static_cast<size_t>(row.at(m))] = c;
    auto sol = q_solve(A, rhs);
    if (!sol)
      throw ConfalError(kErrVerify, "element outside the label span at grade " +
                                        std::to_string(deg));
    for (size_t j = 0; j < B.cols.size(); ++j) {
      if ((*sol)[j] == 0) continue;
      const auto& [li, s] = B.cols[j];
      out += ConfElement::term((*sol)[j] * poly_d().pow(s) * l_divided(k),
                               B.labels[static_cast<size_t>(li)]);
    }
  }
  return out;
}

}  // namespace

PoissonTable pv2_table(const Envelope& vir2, int cap) {
  PoissonTable t;
  t.name = "pv2";
  for (int j = 1; j <= cap; ++j) {
    t.grade["v_" + std::to_string(j)] = j;
    t.parity["v_" + std::to_string(j)] = 0;
  }
  auto rep = [](int j) {
    ModMonomial m;
    m.word.assign(static_cast<size_t>(j - 1), op_l(0, 0));
    return m;
  };
  for (int i = 1; i <= cap; ++i)
    for (int j = 1; i + j <= cap; ++j) {
      GradedPair gp =
          graded_products(vir2, single(rep(i)), i, single(rep(j)), j);
      std::pair key{"v_" + std::to_string(i), "v_" + std::to_string(j)};
      t.comm[key] = pv2_convert(gp.comm, i + j);
      t.bracket[key] = pv2_convert(gp.bracket, i + j - 1);
    }
  return t;
}

PoissonTable pv3_table(const Envelope& vir3, int cap) {
  PoissonTable t;
  t.name = "pv3";
  std::map<std::string, ModMonomial> reps;
  for (int n = 1; n <= cap; ++n) {
    std::string g = "x_" + std::to_string(n);
    t.grade[g] = n;
    t.parity[g] = 0;
    ModMonomial m;
    m.word.assign(static_cast<size_t>(n - 1), op_l(0, 0));
    reps[g] = m;
  }
  for (int n = 1; n < cap; ++n)
    for (int m = 1; n + m <= cap; ++m) {
      std::string g = "y_" + std::to_string(n) + "_" + std::to_string(m);
      t.grade[g] = n + m;
      t.parity[g] = 0;
      ModMonomial w;
      w.word.assign(static_cast<size_t>(n - 1), op_l(0, 0));
      w.word.insert(w.word.end(), static_cast<size_t>(m - 1), op_l(1, 0));
      w.word.push_back(op_l(2, 0));
      reps[g] = w;
    }
  for (const auto& [ga, da] : t.grade)
    for (const auto& [gb, db] : t.grade) {
      if (da + db > cap) continue;
      GradedPair gp = graded_products(vir3, single(reps.at(ga)), da,
                                      single(reps.at(gb)), db);
      std::pair key{ga, gb};
      t.comm[key] = solve_labels(vir3.sys, reps, t.grade, gp.comm, da + db);
      t.bracket[key] =
          solve_labels(vir3.sys, reps, t.grade, gp.bracket, da + db - 1);
    }
  return t;
}

// ---------------------------------------------------------------------------
// even K_1 quotient through the rank (1|1) matrix realization
// ---------------------------------------------------------------------------

namespace {

// coordinates of the decomposition at one index as a table entry; indexes
// beyond `top` are filtration leaks, odd coordinates must not appear
ConfElement decomp_slice(const CendDecomp& d, int at, int top) {
  if (!d.e.empty() || !d.f.empty())
    throw ConfalError(kErrVerify, "odd component in an even product");
  ConfElement out;
  for (const auto& [idx, p] : d.a) {
    if (p.is_zero()) continue;
    if (idx > top)
      throw ConfalError(kErrVerify, "filtration overflow at a_" +
                                        std::to_string(idx));
    if (idx == at) out += ConfElement::term(p, "a_" + std::to_string(idx));
  }
  for (const auto& [idx, p] : d.b) {
    if (p.is_zero()) continue;
    if (idx > top)
      throw ConfalError(kErrVerify, "filtration overflow at b_" +
                                        std::to_string(idx));
    if (idx == at) out += ConfElement::term(p, "b_" + std::to_string(idx));
  }
  return out;
}

}  // namespace

PoissonTable pk10_table(int cap) {
  PoissonTable t;
  t.name = "pk10";
  auto mat = [](const std::string& g) {
    int idx = std::stoi(g.substr(2));
    return g[0] == 'a' ? cend_a(idx) : cend_b(idx);
  };
  for (int n = 1; n <= cap; ++n) {
    t.grade["a_" + std::to_string(n)] = n;
    t.parity["a_" + std::to_string(n)] = 0;
  }
  for (int n = 2; n <= cap; ++n) {
    t.grade["b_" + std::to_string(n)] = n;
    t.parity["b_" + std::to_string(n)] = 0;
  }
  for (const auto& [ga, da] : t.grade)
    for (const auto& [gb, db] : t.grade) {
      if (da + db > cap) continue;
      CendElement U = mat(ga), V = mat(gb);
      CendElement P = cend_mul(U, V, Var::L);
      std::pair key{ga, gb};
      t.comm[key] = decomp_slice(cend_decompose(P), da + db, da + db);
      CendElement D = P - cend_conjugate(V, U, Var::L);
      // the top filtration layer of a commutator must cancel
      t.bracket[key] = decomp_slice(cend_decompose(D), da + db - 1, da + db - 1);
    }
  return t;
}

PoissonTable pk10_hatted_table(const PoissonTable& pk, int cap) {
  ConformalAlgebraDesc alg = table_as_algebra(pk, cap);
  PoissonTable t;
  t.name = "pk10hat";
  for (const auto& [g, d] : pk.grade) {
    std::string h = g[0] == 'a' ? "ahat" + g.substr(1) : g;
    t.grade[h] = d;
    t.parity[h] = 0;
  }
  const ExactPoly shift = poly_d().pow(2) * ratio(1, 8);
  auto rep = [&](const std::string& h) {
    if (h[0] != 'a') return ConfElement::gen(h);
    std::string base = "a" + h.substr(4);
    ConfElement e = ConfElement::gen(base);
    if (std::stoi(base.substr(2)) >= 2)
      e -= ConfElement::term(shift, "b" + base.substr(1));
    return e;
  };
  auto to_hat = [&](const ConfElement& e) {
    ConfElement out;
    for (const auto& [g, p] : e.comps) {
      if (g[0] == 'a') {
        out += ConfElement::term(p, "ahat" + g.substr(1));
        if (std::stoi(g.substr(2)) >= 2)
          out += ConfElement::term(p * shift, "b" + g.substr(1));
      } else {
        out += ConfElement::term(p, g);
      }
    }
    return out;
  };
  for (const auto& [ga, da] : t.grade)
    for (const auto& [gb, db] : t.grade) {
      if (da + db > cap) continue;
      std::pair key{ga, gb};
      t.comm[key] =
          to_hat(lambda_product(alg, rep(ga), rep(gb), Which::Product));
      t.bracket[key] =
          to_hat(lambda_product(alg, rep(ga), rep(gb), Which::Bracket));
    }
  return t;
}

ConformalAlgebraDesc table_as_algebra(const PoissonTable& t, int grade_cap) {
  ConformalAlgebraDesc d;
  d.name = t.name;
  d.kind = AlgKind::Poisson;
  std::vector<std::string> labels;
  for (const auto& [g, gr] : t.grade) labels.push_back(g);
  std::sort(labels.begin(), labels.end(),
            [&](const std::string& a, const std::string& b) {
              return std::pair(t.grade.at(a), a) < std::pair(t.grade.at(b), b);
            });
  d.gens.names = labels;
  for (const auto& g : labels) {
    auto p = t.parity.find(g);
    d.gens.parity[g] = p == t.parity.end() ? 0 : p->second;
    if (d.gens.parity[g]) d.is_super = true;
  }
  int lmax = 0;
  auto fill = [&](const std::map<std::pair<std::string, std::string>,
                                 ConfElement>& entries,
                  std::map<std::tuple<std::string, std::string, int>,
                           ConfElement>& table) {
    for (const auto& [key, ce] : entries) {
      const int deg = ce.degree(Var::L);
      lmax = std::max(lmax, deg);
      for (int n = 0; n <= deg; ++n) {
        ConfElement v = ce.coefficient_of(Var::L, n, true);
        if (!v.is_zero()) table[{key.first, key.second, n}] = v;
      }
    }
  };
  fill(t.comm, d.table);
  fill(t.bracket, d.bracket_table);
  d.locality.def = lmax + 1;
  d.grade = t.grade;
  d.grade_cap = grade_cap;
  return d;
}

AxiomReport verify_graded_poisson(const PoissonTable& t, int grade_cap) {
  return check_axioms(table_as_algebra(t, grade_cap));
}

// ---------------------------------------------------------------------------
// Cend realization
// ---------------------------------------------------------------------------

CendElement cend2_embed(const Envelope& k1, const ModMonomial& m) {
  const GeneratorSet& G = k1.lie->gens;
  if (G.names.size() != 2 || G.parity_of(G.names[0]) != 0 ||
      G.parity_of(G.names[1]) != 1)
    throw ConfalError(kErrVerify,
                      "rank (1|1) realization needs generators (even, odd)");
  const CendElement img[2] = {cend_v(), cend_g()};
  CendElement out = img[m.gen];
  for (auto it = m.word.rbegin(); it != m.word.rend(); ++it) {
    if (it->tag == kTagD)
      out = out * poly_d();
    else if (it->tag == kTagL)
      out = cend_nth(img[it->gen], out, it->index);
    else
      throw ConfalError(kErrVerify,
                        "right-multiplication letter in a normal word");
  }
  return out;
}

IndependenceReport cend2_independence(const Envelope& k1, int max_degree,
                                      int max_dpow) {
  Bounds w = k1.sys.bounds;
  w.max_degree = max_degree;
  w.max_dpow = max_dpow;
  std::vector<ModMonomial> words = enumerate_reduced(k1.sys, w);
  IndependenceReport r;
  r.words = static_cast<int>(words.size());
  std::vector<CendElement> els;
  els.reserve(words.size());
  for (const auto& m : words) {
    CendElement e = cend2_embed(k1, m);
    for (int col = 0; col < 2; ++col)
      if (!e.at(0, col).coefficient_of(Var::X, 0, false).is_zero())
        r.shape_defects.push_back(mod_mono_str(m, k1.lie->gens) +
                                  ": top row entry not divisible by x");
    els.push_back(std::move(e));
  }
  r.rank = cend_rank(els);
  return r;
}

}  // namespace confal
