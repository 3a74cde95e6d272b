#include "conformal.hpp"

#include <sstream>

namespace confal {

namespace {

void add_comp(std::map<std::string, ExactPoly>& m, const std::string& g,
              const ExactPoly& p) {
  if (p.is_zero()) return;
  auto [it, fresh] = m.emplace(g, p);
  if (!fresh) {
    it->second += p;
    if (it->second.is_zero()) m.erase(it);
  }
}

int sign_pm(int parity_product) { return parity_product % 2 == 0 ? 1 : -1; }

}  // namespace

ConfElement& ConfElement::operator+=(const ConfElement& o) {
  for (const auto& [g, p] : o.comps) add_comp(comps, g, p);
  return *this;
}

ConfElement& ConfElement::operator-=(const ConfElement& o) {
  for (const auto& [g, p] : o.comps) add_comp(comps, g, -p);
  return *this;
}

ConfElement ConfElement::operator+(const ConfElement& o) const {
  ConfElement e = *this;
  e += o;
  return e;
}

ConfElement ConfElement::operator-(const ConfElement& o) const {
  ConfElement e = *this;
  e -= o;
  return e;
}

ConfElement ConfElement::operator-() const {
  ConfElement e;
  for (const auto& [g, p] : comps) e.comps.emplace(g, -p);
  return e;
}

ConfElement ConfElement::operator*(const ExactPoly& p) const {
  ConfElement e;
  for (const auto& [g, q] : comps) add_comp(e.comps, g, q * p);
  return e;
}

ConfElement ConfElement::operator*(const Rational& c) const {
  return *this * ExactPoly::constant(c);
}

ConfElement ConfElement::substitute(Var v, const ExactPoly& repl) const {
  ConfElement e;
  for (const auto& [g, p] : comps) add_comp(e.comps, g, p.substitute(v, repl));
  return e;
}

ConfElement ConfElement::coefficient_of(Var v, int k, bool divided) const {
  ConfElement e;
  for (const auto& [g, p] : comps)
    add_comp(e.comps, g, p.coefficient_of(v, k, divided));
  return e;
}

int ConfElement::degree(Var v) const {
  int deg = 0;
  for (const auto& [g, p] : comps) deg = std::max(deg, p.degree(v));
  return deg;
}

bool ConfElement::depends_on(Var v) const {
  for (const auto& [g, p] : comps)
    if (p.depends_on(v)) return true;
  return false;
}

std::string ConfElement::str() const {
  if (comps.empty()) return "0";
  std::string out;
  for (const auto& [g, p] : comps) {
    if (!out.empty()) out += " + ";
    out += "(" + p.str() + ") " + g;
  }
  return out;
}

const char* kind_name(AlgKind k) {
  switch (k) {
    case AlgKind::Lie: return "lie";
    case AlgKind::Associative: return "assoc";
    case AlgKind::Commutative: return "comm";
    case AlgKind::Poisson: return "poisson";
  }
  throw std::logic_error("bad AlgKind");
}

int ConformalAlgebraDesc::grade_of(const std::string& g) const {
  auto it = grade.find(g);
  if (it == grade.end())
    throw ConfalError(kErrParse, "generator without grade: " + g);
  return it->second;
}

const std::map<std::tuple<std::string, std::string, int>, ConfElement>&
ConformalAlgebraDesc::table_for(Which w) const {
  if (w == Which::Bracket) {
    if (kind == AlgKind::Lie) return table;
    if (kind == AlgKind::Poisson) return bracket_table;
    throw ConfalError(kErrUsage,
                      std::string("no bracket on kind ") + kind_name(kind));
  }
  if (kind == AlgKind::Associative || kind == AlgKind::Commutative ||
      kind == AlgKind::Poisson)
    return table;
  throw ConfalError(kErrUsage,
                    std::string("no product on kind ") + kind_name(kind));
}

ConfElement lambda_product(const ConformalAlgebraDesc& alg, const ConfElement& u,
                           const ConfElement& v, Which which, Var var) {
  if (var != Var::L && var != Var::M)
    throw std::logic_error("lambda slot must be l or m");
  if (u.depends_on(var) || v.depends_on(var))
    throw std::logic_error("slot variable already occurs in an argument");
  const auto& tab = alg.table_for(which);
  const ExactPoly slot = ExactPoly::variable(var);
  const ExactPoly shift = slot + poly_d();
  const ExactPoly neg = -slot;

  ConfElement out;
  for (const auto& [a, P] : u.comps) {
    if (!alg.gens.contains(a)) throw ConfalError(kErrParse, "unknown generator: " + a);
    for (const auto& [b, Q] : v.comps) {
      if (!alg.gens.contains(b))
        throw ConfalError(kErrParse, "unknown generator: " + b);
      if (alg.graded()) {
        int s = alg.grade_of(a) + alg.grade_of(b);
        if (s > alg.grade_cap)
          throw ConfalError(kErrBounds, "graded window exceeded: " + a + " * " +
                                            b + " has degree " +
                                            std::to_string(s) + " > cap " +
                                            std::to_string(alg.grade_cap));
      }
      // T_ab(var) = sum_n var^(n) (a_(n) b)
      ConfElement T;
      for (auto it = tab.lower_bound({a, b, 0});
           it != tab.end() && std::get<0>(it->first) == a &&
           std::get<1>(it->first) == b;
           ++it) {
        int n = std::get<2>(it->first);
        T += it->second * (slot.pow(n) * inv_factorial(n));
      }
      if (T.is_zero()) continue;
      for (const auto& [eP, cP] : P.terms()) {
        Expo sP = eP;
        const int p = sP[static_cast<int>(Var::D)];
        sP[static_cast<int>(Var::D)] = 0;
        for (const auto& [eQ, cQ] : Q.terms()) {
          Expo sQ = eQ;
          const int q = sQ[static_cast<int>(Var::D)];
          sQ[static_cast<int>(Var::D)] = 0;
          Expo spect;
          for (int i = 0; i < kNumVars; ++i) spect[i] = sP[i] + sQ[i];
          ExactPoly factor = ExactPoly::monomial(cP * cQ, spect) * neg.pow(p) *
                             shift.pow(q);
          out += T * factor;
        }
      }
    }
  }
  return out;
}

ConfElement nth_product(const ConformalAlgebraDesc& alg, const ConfElement& u,
                        const ConfElement& v, Which which, int n) {
  return lambda_product(alg, u, v, which, Var::L)
      .coefficient_of(Var::L, n, true);
}

ConfElement conjugate(const ConformalAlgebraDesc& alg, const ConfElement& u,
                      const ConfElement& v, Which which, Var var) {
  ConfElement w = lambda_product(alg, u, v, which, var);
  return w.substitute(var, -poly_d() - ExactPoly::variable(var));
}

ConfElement conjugate_by_sum(const ConformalAlgebraDesc& alg,
                             const ConfElement& u, const ConfElement& v,
                             Which which, Var var) {
  ConfElement k = lambda_product(alg, u, v, which, var);
  const int nmax = k.degree(var);
  const ExactPoly slot = ExactPoly::variable(var);
  const ExactPoly d = poly_d();
  ConfElement out;
  for (int n = 0; n <= nmax; ++n) {
    ConfElement inner;
    for (int s = 0; s + n <= nmax; ++s) {
      ConfElement t = k.coefficient_of(var, n + s, true);
      inner += t * (d.pow(s) * inv_factorial(s) * ratio((n + s) % 2 ? -1 : 1));
    }
    out += inner * (slot.pow(n) * inv_factorial(n));
  }
  return out;
}

ConformalAlgebraDesc commutator_functor(const ConformalAlgebraDesc& assoc) {
  if (assoc.kind != AlgKind::Associative && assoc.kind != AlgKind::Commutative)
    throw ConfalError(kErrUsage, "commutator functor needs an associative kind");
  ConformalAlgebraDesc lie;
  lie.name = assoc.name + "^(-)";
  lie.kind = AlgKind::Lie;
  lie.is_super = assoc.is_super;
  lie.gens = assoc.gens;
  lie.grade = assoc.grade;
  lie.grade_cap = assoc.grade_cap;
  lie.locality.def = 1;
  for (const auto& a : assoc.gens.names) {
    for (const auto& b : assoc.gens.names) {
      if (assoc.graded() &&
          assoc.grade_of(a) + assoc.grade_of(b) > assoc.grade_cap)
        continue;
      const int sg = assoc.gens.parity_of(a) * assoc.gens.parity_of(b);
      ConfElement k =
          lambda_product(assoc, ConfElement::gen(a), ConfElement::gen(b),
                         Which::Product, Var::L) -
          conjugate(assoc, ConfElement::gen(b), ConfElement::gen(a),
                    Which::Product, Var::L) *
              ratio(sign_pm(sg));
      const int deg = k.degree(Var::L);
      int support = 0;
      for (int n = 0; n <= deg; ++n) {
        ConfElement c = k.coefficient_of(Var::L, n, true);
        if (c.is_zero()) continue;
        lie.table[{a, b, n}] = c;
        support = n + 1;
      }
      if (support > 0) lie.locality.overrides[{a, b}] = support;
    }
  }
  return lie;
}

std::string AxiomReport::summary() const {
  std::ostringstream os;
  os << "checked=" << checked << " skipped=" << skipped
     << " violations=" << violations.size();
  return os.str();
}

namespace {

struct Instance {
  ConfElement elem;
  std::string desc;
  int parity;
  int grade;
};

ConfElement subst_elem(const ConfElement& e, Var from, const ExactPoly& to) {
  return e.substitute(from, to);
}

}  // namespace

AxiomReport check_axioms(const ConformalAlgebraDesc& alg, int max_dpow) {
  AxiomReport rep;
  const ExactPoly d = poly_d(), l = poly_l(), m = poly_m();

  // Structural table checks: locality consistency and grade homogeneity.
  auto scan_table = [&](Which w, const char* label) {
    for (const auto& [key, val] : alg.table_for(w)) {
      const auto& [a, b, n] = key;
      if (val.is_zero()) continue;
      if (n >= alg.locality(a, b))
        rep.violations.push_back(std::string("locality: ") + label + " entry (" +
                                 a + "," + b + "," + std::to_string(n) +
                                 ") at or beyond N=" +
                                 std::to_string(alg.locality(a, b)));
      if (alg.graded()) {
        const int s = alg.grade_of(a) + alg.grade_of(b);
        if (s > alg.grade_cap)
          rep.violations.push_back(std::string("window: ") + label +
                                   " entry (" + a + "," + b + "," +
                                   std::to_string(n) + ") outside the cap");
        for (const auto& [g, p] : val.comps)
          if (alg.grade_of(g) > s)
            rep.violations.push_back(std::string("grading: ") + label +
                                     " entry (" + a + "," + b + "," +
                                     std::to_string(n) + ") hits " + g +
                                     " above degree " + std::to_string(s));
      }
    }
  };
  const bool has_product = alg.kind != AlgKind::Lie;
  const bool has_bracket =
      alg.kind == AlgKind::Lie || alg.kind == AlgKind::Poisson;
  if (has_product) scan_table(Which::Product, "product");
  if (has_bracket) scan_table(Which::Bracket, "bracket");

  std::vector<Instance> inst;
  for (const auto& g : alg.gens.names)
    for (int s = 0; s <= max_dpow; ++s)
      inst.push_back({ConfElement::term(d.pow(s), g),
                      (s ? "d^" + std::to_string(s) + "*" + g : g),
                      alg.gens.parity_of(g),
                      alg.graded() ? alg.grade_of(g) : 0});

  auto window2 = [&](const Instance& u, const Instance& v) {
    return alg.graded() && u.grade + v.grade > alg.grade_cap;
  };
  auto window3 = [&](const Instance& u, const Instance& v, const Instance& w) {
    return alg.graded() && u.grade + v.grade + w.grade > alg.grade_cap;
  };
  auto report = [&](const std::string& axiom, const std::string& who,
                    const ConfElement& diff) {
    ++rep.checked;
    if (!diff.is_zero())
      rep.violations.push_back(axiom + " fails at " + who +
                               ": residue = " + diff.str());
  };

  auto pair_checks = [&](Which w, const char* tag) {
    for (const auto& u : inst)
      for (const auto& v : inst) {
        if (window2(u, v)) {
          ++rep.skipped;
          continue;
        }
        const std::string who = "(" + u.desc + ", " + v.desc + ")";
        // sesquilinearity, both slots, computed along two different paths
        ConfElement base = lambda_product(alg, u.elem, v.elem, w, Var::L);
        report(std::string(tag) + " sesqui-left", who,
               lambda_product(alg, u.elem * d, v.elem, w, Var::L) + base * l);
        report(std::string(tag) + " sesqui-right", who,
               lambda_product(alg, u.elem, v.elem * d, w, Var::L) -
                   base * (d + l));
        // substitution route for the conjugate vs divided-power sum route
        report(std::string(tag) + " conjugate-routes", who,
               conjugate(alg, u.elem, v.elem, w, Var::L) -
                   conjugate_by_sum(alg, u.elem, v.elem, w, Var::L));
      }
  };

  if (has_bracket) {
    pair_checks(Which::Bracket, "bracket");
    // anticommutativity [u l v] = -(-1)^{|u||v|}{v l u}
    for (const auto& u : inst)
      for (const auto& v : inst) {
        if (window2(u, v)) {
          ++rep.skipped;
          continue;
        }
        ConfElement diff =
            lambda_product(alg, u.elem, v.elem, Which::Bracket, Var::L) +
            conjugate(alg, v.elem, u.elem, Which::Bracket, Var::L) *
                ratio(sign_pm(u.parity * v.parity));
        report("anticommutativity", "(" + u.desc + ", " + v.desc + ")", diff);
      }
    // Jacobi  [u l [v m w]] - (-1)^{|u||v|}[v m [u l w]] = [[u l v] l+m w]
    for (const auto& u : inst)
      for (const auto& v : inst)
        for (const auto& w : inst) {
          if (window3(u, v, w)) {
            ++rep.skipped;
            continue;
          }
          ConfElement t1 = lambda_product(
              alg, u.elem,
              lambda_product(alg, v.elem, w.elem, Which::Bracket, Var::M),
              Which::Bracket, Var::L);
          ConfElement t2 = lambda_product(
              alg, v.elem,
              lambda_product(alg, u.elem, w.elem, Which::Bracket, Var::L),
              Which::Bracket, Var::M);
          ConfElement c =
              lambda_product(alg, u.elem, v.elem, Which::Bracket, Var::L);
          ConfElement t3 = subst_elem(
              lambda_product(alg, c, w.elem, Which::Bracket, Var::M), Var::M,
              l + m);
          report("jacobi", "(" + u.desc + ", " + v.desc + ", " + w.desc + ")",
                 t1 - t2 * ratio(sign_pm(u.parity * v.parity)) - t3);
        }
  }

  if (has_product) {
    pair_checks(Which::Product, "product");
    // associativity (u l (v m w)) = ((u l v) l+m w)
    for (const auto& u : inst)
      for (const auto& v : inst)
        for (const auto& w : inst) {
          if (window3(u, v, w)) {
            ++rep.skipped;
            continue;
          }
          ConfElement lhs = lambda_product(
              alg, u.elem,
              lambda_product(alg, v.elem, w.elem, Which::Product, Var::M),
              Which::Product, Var::L);
          ConfElement c =
              lambda_product(alg, u.elem, v.elem, Which::Product, Var::L);
          ConfElement rhs = subst_elem(
              lambda_product(alg, c, w.elem, Which::Product, Var::M), Var::M,
              l + m);
          report("associativity",
                 "(" + u.desc + ", " + v.desc + ", " + w.desc + ")", lhs - rhs);
        }
    if (alg.kind == AlgKind::Commutative || alg.kind == AlgKind::Poisson) {
      // (u l v) = (-1)^{|u||v|}{v l u}
      for (const auto& u : inst)
        for (const auto& v : inst) {
          if (window2(u, v)) {
            ++rep.skipped;
            continue;
          }
          ConfElement diff =
              lambda_product(alg, u.elem, v.elem, Which::Product, Var::L) -
              conjugate(alg, v.elem, u.elem, Which::Product, Var::L) *
                  ratio(sign_pm(u.parity * v.parity));
          report("commutativity", "(" + u.desc + ", " + v.desc + ")", diff);
        }
    }
  }

  if (alg.kind == AlgKind::Poisson) {
    for (const auto& u : inst)
      for (const auto& v : inst)
        for (const auto& w : inst) {
          if (window3(u, v, w)) {
            rep.skipped += 2;
            continue;
          }
          const std::string who =
              "(" + u.desc + ", " + v.desc + ", " + w.desc + ")";
          const Rational sg = ratio(sign_pm(u.parity * v.parity));
          // Leibniz I: [u l (v m w)] = ([u l v] l+m w) + (-1)^{|u||v|}(v m [u l w])
          {
            ConfElement t1 = lambda_product(
                alg, u.elem,
                lambda_product(alg, v.elem, w.elem, Which::Product, Var::M),
                Which::Bracket, Var::L);
            ConfElement c =
                lambda_product(alg, u.elem, v.elem, Which::Bracket, Var::L);
            ConfElement t2 = subst_elem(
                lambda_product(alg, c, w.elem, Which::Product, Var::M), Var::M,
                l + m);
            ConfElement t3 = lambda_product(
                alg, v.elem,
                lambda_product(alg, u.elem, w.elem, Which::Bracket, Var::L),
                Which::Product, Var::M);
            report("leibniz", who, t1 - t2 - t3 * sg);
          }
          // Leibniz II (even case): [(u l v) m w] = (v m-l [u l w]) + (u l [v m-l w])
          if (u.parity + v.parity + w.parity == 0) {
            ConfElement c =
                lambda_product(alg, u.elem, v.elem, Which::Product, Var::L);
            ConfElement t1 =
                lambda_product(alg, c, w.elem, Which::Bracket, Var::M);
            ConfElement t2 = subst_elem(
                lambda_product(
                    alg, v.elem,
                    lambda_product(alg, u.elem, w.elem, Which::Bracket, Var::L),
                    Which::Product, Var::M),
                Var::M, m - l);
            ConfElement t3 = subst_elem(
                lambda_product(
                    alg, u.elem,
                    lambda_product(alg, v.elem, w.elem, Which::Bracket, Var::M),
                    Which::Product, Var::L),
                Var::M, m - l);
            report("leibniz2", who, t1 - t2 - t3);
          } else {
            ++rep.skipped;
          }
        }
  }

  return rep;
}

ConfElement poisson_module_action(const ConformalAlgebraDesc& alg,
                                  const ConfElement& a, const ConfElement& u,
                                  Var var) {
  return lambda_product(alg, a, u, Which::Bracket, var) +
         lambda_product(alg, a, u, Which::Product, var) *
             ExactPoly::variable(var);
}

AxiomReport check_poisson_module_jacobi(const ConformalAlgebraDesc& alg,
                                        const std::vector<std::string>& lie_gens,
                                        int max_dpow) {
  AxiomReport rep;
  const ExactPoly d = poly_d(), l = poly_l(), m = poly_m();
  std::map<std::string, bool> in_span;
  for (const auto& g : lie_gens) in_span[g] = true;

  // closure of the chosen generators under the bracket
  for (const auto& a : lie_gens)
    for (const auto& b : lie_gens) {
      if (alg.graded() && alg.grade_of(a) + alg.grade_of(b) > alg.grade_cap) {
        ++rep.skipped;
        continue;
      }
      ConfElement k = lambda_product(alg, ConfElement::gen(a),
                                     ConfElement::gen(b), Which::Bracket, Var::L);
      ++rep.checked;
      for (const auto& [g, p] : k.comps)
        if (!in_span.count(g))
          rep.violations.push_back("bracket of (" + a + ", " + b +
                                   ") leaves the subalgebra: hits " + g);
    }

  for (const auto& a : lie_gens)
    for (const auto& b : lie_gens) {
      const int sg =
          sign_pm(alg.gens.parity_of(a) * alg.gens.parity_of(b));
      for (const auto& g : alg.gens.names)
        for (int s = 0; s <= max_dpow; ++s) {
          if (alg.graded() && alg.grade_of(a) + alg.grade_of(b) +
                                  alg.grade_of(g) >
                              alg.grade_cap) {
            ++rep.skipped;
            continue;
          }
          ConfElement u = ConfElement::term(d.pow(s), g);
          ConfElement A = ConfElement::gen(a), B = ConfElement::gen(b);
          ConfElement t1 = poisson_module_action(
              alg, A, poisson_module_action(alg, B, u, Var::M), Var::L);
          ConfElement t2 = poisson_module_action(
              alg, B, poisson_module_action(alg, A, u, Var::L), Var::M);
          ConfElement c = lambda_product(alg, A, B, Which::Bracket, Var::L);
          ConfElement rhs =
              poisson_module_action(alg, c, u, Var::M).substitute(Var::M, l + m);
          ConfElement diff = t1 - t2 * ratio(sg) - rhs;
          ++rep.checked;
          if (!diff.is_zero())
            rep.violations.push_back(
                "module jacobi fails at (" + a + ", " + b + ", " +
                (s ? "d^" + std::to_string(s) + "*" + g : g) +
                "): residue = " + diff.str());
        }
    }
  return rep;
}

}  // namespace confal
