#include "poisson_model.hpp"

namespace confal {

namespace {

void vec_add(Vec& v, int k, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = v.emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) v.erase(it);
  }
}

void vec_add(Vec& v, const Vec& w, const Rational& scale) {
  for (const auto& [k, c] : w) vec_add(v, k, c * scale);
}

using OptVec = std::optional<Vec>;

struct ModelOps {
  const FiniteModel& m;

  bool in_window(int i, int j) const {
    return !m.graded() || m.grade[i] + m.grade[j] <= m.cap;
  }
  Vec lookup(const std::map<std::pair<int, int>, Vec>& tab, int i, int j) const {
    auto it = tab.find({i, j});
    return it == tab.end() ? Vec{} : it->second;
  }
  OptVec mul(int i, int j) const {
    if (!in_window(i, j)) return std::nullopt;
    return lookup(m.prod, i, j);
  }
  OptVec brk(int i, int j) const {
    if (!in_window(i, j)) return std::nullopt;
    return lookup(m.brack, i, j);
  }
  Vec der(int i) const {
    auto it = m.der.find(i);
    return it == m.der.end() ? Vec{} : it->second;
  }
  OptVec mul(const OptVec& a, const OptVec& b) const {
    if (!a || !b) return std::nullopt;
    Vec out;
    for (const auto& [i, ci] : *a)
      for (const auto& [j, cj] : *b) {
        OptVec p = mul(i, j);
        if (!p) return std::nullopt;
        vec_add(out, *p, ci * cj);
      }
    return out;
  }
  OptVec brk(const OptVec& a, const OptVec& b) const {
    if (!a || !b) return std::nullopt;
    Vec out;
    for (const auto& [i, ci] : *a)
      for (const auto& [j, cj] : *b) {
        OptVec p = brk(i, j);
        if (!p) return std::nullopt;
        vec_add(out, *p, ci * cj);
      }
    return out;
  }
  OptVec der(const OptVec& a) const {
    if (!a) return std::nullopt;
    Vec out;
    for (const auto& [i, c] : *a) vec_add(out, der(i), c);
    return out;
  }
  OptVec unit(int i) const { return Vec{{i, ratio(1)}}; }

  std::string show(const Vec& v) const {
    if (v.empty()) return "0";
    std::string s;
    for (const auto& [k, c] : v) {
      if (!s.empty()) s += " + ";
      s += "(" + rational_str(c) + ") " + m.basis[k];
    }
    return s;
  }
};

}  // namespace

FiniteModel trunc_poly_quotient(int k, bool with_ddv) {
  FiniteModel m;
  m.name = "poly_mod_v" + std::to_string(k);
  for (int i = 0; i < k; ++i) m.basis.push_back("v" + std::to_string(i));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i + j < k) m.prod[{i, j}] = Vec{{i + j, ratio(1)}};
  if (with_ddv)
    for (int i = 1; i < k; ++i) m.der[i] = Vec{{i - 1, ratio(i)}};
  return m;
}

FiniteModel trunc_poly_window(int maxexp, bool with_ddv) {
  FiniteModel m;
  m.name = "poly_window_" + std::to_string(maxexp);
  for (int i = 0; i <= maxexp; ++i) {
    m.basis.push_back("v" + std::to_string(i));
    m.grade.push_back(i);
  }
  m.cap = maxexp;
  for (int i = 0; i <= maxexp; ++i)
    for (int j = 0; i + j <= maxexp; ++j)
      m.prod[{i, j}] = Vec{{i + j, ratio(1)}};
  if (with_ddv)
    for (int i = 1; i <= maxexp; ++i) m.der[i] = Vec{{i - 1, ratio(i)}};
  return m;
}

AxiomReport validate_model(const FiniteModel& m) {
  AxiomReport rep;
  ModelOps ops{m};
  const int n = static_cast<int>(m.basis.size());
  auto at = [&](int i) { return "(" + m.basis[i] + ")"; };
  auto check = [&](const char* what, const std::string& who, const OptVec& a,
                   const OptVec& b) {
    if (!a || !b) {
      ++rep.skipped;
      return;
    }
    ++rep.checked;
    Vec diff = *a;
    vec_add(diff, *b, ratio(-1));
    if (!diff.empty())
      rep.violations.push_back(std::string(what) + " fails at " + who +
                               ": residue = " + ops.show(diff));
  };

  auto opt_sum = [](const OptVec& a, const OptVec& b) -> OptVec {
    if (!a || !b) return std::nullopt;
    Vec out = *a;
    vec_add(out, *b, ratio(1));
    return out;
  };
  auto opt_neg = [](const OptVec& a) -> OptVec {
    if (!a) return std::nullopt;
    Vec out;
    vec_add(out, *a, ratio(-1));
    return out;
  };

  const bool has_brack = !m.brack.empty();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      check("commutativity", at(i) + at(j), ops.mul(i, j), ops.mul(j, i));
      // D(xy) = Dx y + x Dy
      check("derivation(product)", at(i) + at(j), ops.der(ops.mul(i, j)),
            opt_sum(ops.mul(ops.der(ops.unit(i)), ops.unit(j)),
                    ops.mul(ops.unit(i), ops.der(ops.unit(j)))));
      if (has_brack)
        check("antisymmetry", at(i) + at(j), ops.brk(i, j),
              opt_neg(ops.brk(j, i)));
      for (int k = 0; k < n; ++k) {
        check("associativity", at(i) + at(j) + at(k),
              ops.mul(ops.mul(i, j), ops.unit(k)),
              ops.mul(ops.unit(i), ops.mul(j, k)));
        if (has_brack) {
          // Jacobi [[i,j],k] + [[j,k],i] + [[k,i],j] = 0
          OptVec sum = opt_sum(opt_sum(ops.brk(ops.brk(i, j), ops.unit(k)),
                                       ops.brk(ops.brk(j, k), ops.unit(i))),
                               ops.brk(ops.brk(k, i), ops.unit(j)));
          check("jacobi", at(i) + at(j) + at(k), sum, OptVec{Vec{}});
          // Leibniz [i, jk] = [i,j]k + j[i,k]
          check("leibniz", at(i) + at(j) + at(k),
                ops.brk(ops.unit(i), ops.mul(j, k)),
                opt_sum(ops.mul(ops.brk(i, j), ops.unit(k)),
                        ops.mul(ops.unit(j), ops.brk(i, k))));
        }
      }
      if (has_brack)
        // D[x,y] = [Dx,y] + [x,Dy]
        check("derivation(bracket)", at(i) + at(j), ops.der(ops.brk(i, j)),
              opt_sum(ops.brk(ops.der(ops.unit(i)), ops.unit(j)),
                      ops.brk(ops.unit(i), ops.der(ops.unit(j)))));
    }
  return rep;
}

namespace {

ConfElement vec_to_elem(const FiniteModel& m, const Vec& v,
                        const ExactPoly& scale) {
  ConfElement e;
  for (const auto& [k, c] : v)
    e += ConfElement::term(scale * ExactPoly::constant(c), m.basis[k]);
  return e;
}

}  // namespace

ConformalAlgebraDesc make_quadratic(const FiniteModel& m) {
  AxiomReport rep = validate_model(m);
  if (!rep.pass()) {
    std::string msg = "coefficient algebra rejected: " + rep.violations.front();
    if (rep.violations.size() > 1)
      msg += " (+" + std::to_string(rep.violations.size() - 1) + " more)";
    throw ConfalError(kErrVerify, msg);
  }
  ModelOps ops{m};
  ConformalAlgebraDesc alg;
  alg.name = m.name;
  alg.kind = AlgKind::Poisson;
  alg.gens.names = m.basis;
  for (const auto& g : m.basis) alg.gens.parity[g] = 0;
  alg.locality.def = 2;
  if (m.graded()) {
    for (size_t i = 0; i < m.basis.size(); ++i) alg.grade[m.basis[i]] = m.grade[i];
    alg.grade_cap = m.cap;
  }
  const ExactPoly one = ExactPoly::from_int(1), d = poly_d();
  const int n = static_cast<int>(m.basis.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!ops.in_window(i, j)) continue;
      OptVec xy = ops.mul(i, j);
      OptVec ydx = ops.mul(ops.unit(j), ops.der(ops.unit(i)));
      OptVec dxy = ops.der(xy);
      OptVec bij = ops.brk(i, j);
      if (!xy || !ydx || !dxy || !bij)
        throw ConfalError(kErrVerify, "derivation leaves the window at (" +
                                          m.basis[i] + ", " + m.basis[j] + ")");
      ConfElement p0 = vec_to_elem(m, *xy, one);
      if (!p0.is_zero()) alg.table[{m.basis[i], m.basis[j], 0}] = p0;
      ConfElement b0 = vec_to_elem(m, *bij, one) + vec_to_elem(m, *ydx, d);
      if (!b0.is_zero()) alg.bracket_table[{m.basis[i], m.basis[j], 0}] = b0;
      ConfElement b1 = vec_to_elem(m, *dxy, one);
      if (!b1.is_zero()) alg.bracket_table[{m.basis[i], m.basis[j], 1}] = b1;
    }
  return alg;
}

ConformalAlgebraDesc make_weyl_poisson(int maxexp) {
  ConformalAlgebraDesc alg;
  alg.name = "weyl_window_" + std::to_string(maxexp);
  alg.kind = AlgKind::Poisson;
  alg.locality.def = 2;
  alg.grade_cap = maxexp;
  auto nm = [](int i) { return "v" + std::to_string(i); };
  for (int i = 0; i <= maxexp; ++i) {
    alg.gens.names.push_back(nm(i));
    alg.gens.parity[nm(i)] = 0;
    alg.grade[nm(i)] = i;
  }
  for (int i = 0; i <= maxexp; ++i)
    for (int j = 0; i + j <= maxexp; ++j) {
      alg.table[{nm(i), nm(j), 0}] = ConfElement::gen(nm(i + j));
      if (i + j >= 1) {
        if (i >= 1)
          alg.bracket_table[{nm(i), nm(j), 0}] =
              ConfElement::term(poly_d() * ExactPoly::from_int(i), nm(i + j - 1));
        alg.bracket_table[{nm(i), nm(j), 1}] =
            ConfElement::term(ExactPoly::from_int(i + j), nm(i + j - 1));
      }
    }
  return alg;
}

namespace {

ConformalAlgebraDesc make_current(const std::string& name,
                                  const std::vector<std::string>& basis,
                                  const std::map<std::pair<int, int>, Vec>& tab,
                                  AlgKind kind) {
  ConformalAlgebraDesc alg;
  alg.name = name;
  alg.kind = kind;
  alg.locality.def = 1;
  alg.gens.names = basis;
  for (const auto& g : basis) alg.gens.parity[g] = 0;
  for (const auto& [ij, v] : tab) {
    ConfElement e;
    for (const auto& [k, c] : v)
      e += ConfElement::term(ExactPoly::constant(c), basis[k]);
    if (!e.is_zero()) alg.table[{basis[ij.first], basis[ij.second], 0}] = e;
  }
  return alg;
}

}  // namespace

ConformalAlgebraDesc make_current_assoc(
    const std::string& name, const std::vector<std::string>& basis,
    const std::map<std::pair<int, int>, Vec>& mult) {
  return make_current(name, basis, mult, AlgKind::Associative);
}

ConformalAlgebraDesc make_current_lie(
    const std::string& name, const std::vector<std::string>& basis,
    const std::map<std::pair<int, int>, Vec>& brack) {
  return make_current(name, basis, brack, AlgKind::Lie);
}

// ---------------------------------------------------------------------------
// Laurent-coefficient brute check.
// ---------------------------------------------------------------------------

namespace {

struct LElem {
  std::map<std::pair<int, int>, Rational> c;  // key (tpow, upow)
  bool over = false;

  void add(int t, int u, const Rational& x) {
    if (x == 0) return;
    auto [it, fresh] = c.emplace(std::make_pair(t, u), x);
    if (!fresh) {
      it->second += x;
      if (it->second == 0) c.erase(it);
    }
  }
};

LElem l_sub(const LElem& a, const LElem& b) {
  LElem out = a;
  out.over = a.over || b.over;
  for (const auto& [k, x] : b.c) out.add(k.first, k.second, -x);
  return out;
}

LElem l_mul(const LElem& a, const LElem& b, int ucap) {
  LElem out;
  out.over = a.over || b.over;
  for (const auto& [ka, xa] : a.c)
    for (const auto& [kb, xb] : b.c) {
      const int u = ka.second + kb.second;
      if (u > ucap) {
        out.over = true;
        continue;
      }
      out.add(ka.first + kb.first, u, xa * xb);
    }
  return out;
}

// {u^i t^n, u^j t^m} = (n j - m i) u^{i+j-1} t^{n+m-1}
LElem l_brk(const LElem& a, const LElem& b, int ucap) {
  LElem out;
  out.over = a.over || b.over;
  for (const auto& [ka, xa] : a.c)
    for (const auto& [kb, xb] : b.c) {
      const int n = ka.first, i = ka.second, m = kb.first, j = kb.second;
      const Rational coef = xa * xb * ratio(n * j - m * i);
      if (coef == 0) continue;
      const int u = i + j - 1;
      if (u > ucap) {
        out.over = true;
        continue;
      }
      out.add(n + m - 1, u, coef);
    }
  return out;
}

std::string l_mono_name(int t, int u) {
  std::string s;
  if (u > 0) s = u == 1 ? "u" : "u^" + std::to_string(u);
  if (t != 0) {
    if (!s.empty()) s += "*";
    s += t == 1 ? "t" : "t^" + std::to_string(t);
  }
  return s.empty() ? "1" : s;
}

}  // namespace

AxiomReport check_laurent_poisson(int ucap, int trange, bool skip_overflow) {
  AxiomReport rep;
  std::vector<LElem> mono;
  std::vector<std::string> name;
  for (int u = 0; u <= ucap; ++u)
    for (int t = -trange; t <= trange; ++t) {
      LElem e;
      e.add(t, u, ratio(1));
      mono.push_back(e);
      name.push_back(l_mono_name(t, u));
    }
  const int n = static_cast<int>(mono.size());
  auto settle = [&](const char* what, const std::string& who, const LElem& diff) {
    if (diff.over && skip_overflow) {
      ++rep.skipped;
      return;
    }
    ++rep.checked;
    if (!diff.c.empty())
      rep.violations.push_back(std::string(what) + " fails at " + who);
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const std::string who2 = "(" + name[i] + ", " + name[j] + ")";
      settle("commutativity", who2,
             l_sub(l_mul(mono[i], mono[j], ucap), l_mul(mono[j], mono[i], ucap)));
      LElem anti = l_brk(mono[j], mono[i], ucap);
      for (auto& [k, x] : anti.c) x = -x;
      settle("antisymmetry", who2, l_sub(l_brk(mono[i], mono[j], ucap), anti));
      for (int k = 0; k < n; ++k) {
        const std::string who3 =
            "(" + name[i] + ", " + name[j] + ", " + name[k] + ")";
        settle("associativity", who3,
               l_sub(l_mul(l_mul(mono[i], mono[j], ucap), mono[k], ucap),
                     l_mul(mono[i], l_mul(mono[j], mono[k], ucap), ucap)));
        LElem jac = l_brk(l_brk(mono[i], mono[j], ucap), mono[k], ucap);
        {
          LElem t2 = l_brk(l_brk(mono[j], mono[k], ucap), mono[i], ucap);
          LElem t3 = l_brk(l_brk(mono[k], mono[i], ucap), mono[j], ucap);
          jac.over = jac.over || t2.over || t3.over;
          for (const auto& [kk, x] : t2.c) jac.add(kk.first, kk.second, x);
          for (const auto& [kk, x] : t3.c) jac.add(kk.first, kk.second, x);
        }
        settle("jacobi", who3, jac);
        LElem lhs = l_brk(mono[i], l_mul(mono[j], mono[k], ucap), ucap);
        LElem rhs = l_mul(l_brk(mono[i], mono[j], ucap), mono[k], ucap);
        {
          LElem r2 = l_mul(mono[j], l_brk(mono[i], mono[k], ucap), ucap);
          rhs.over = rhs.over || r2.over;
          for (const auto& [kk, x] : r2.c) rhs.add(kk.first, kk.second, x);
        }
        settle("leibniz", who3, l_sub(lhs, rhs));
      }
    }
  return rep;
}

}  // namespace confal
