#include "cend.hpp"

namespace confal {

bool CendElement::is_zero() const {
  for (const auto& p : m)
    if (!p.is_zero()) return false;
  return true;
}

CendElement CendElement::operator+(const CendElement& o) const {
  CendElement r;
  for (int i = 0; i < 4; ++i) r.m[i] = m[i] + o.m[i];
  return r;
}

CendElement CendElement::operator-(const CendElement& o) const {
  CendElement r;
  for (int i = 0; i < 4; ++i) r.m[i] = m[i] - o.m[i];
  return r;
}

CendElement CendElement::operator-() const {
  CendElement r;
  for (int i = 0; i < 4; ++i) r.m[i] = -m[i];
  return r;
}

CendElement CendElement::operator*(const ExactPoly& p) const {
  CendElement r;
  for (int i = 0; i < 4; ++i) r.m[i] = m[i] * p;
  return r;
}

CendElement CendElement::operator*(const Rational& c) const {
  return *this * ExactPoly::constant(c);
}

CendElement CendElement::substitute(Var v, const ExactPoly& repl) const {
  CendElement r;
  for (int i = 0; i < 4; ++i) r.m[i] = m[i].substitute(v, repl);
  return r;
}

CendElement CendElement::coefficient_of(Var v, int k, bool divided) const {
  CendElement r;
  for (int i = 0; i < 4; ++i) r.m[i] = m[i].coefficient_of(v, k, divided);
  return r;
}

bool CendElement::depends_on(Var v) const {
  for (const auto& p : m)
    if (p.depends_on(v)) return true;
  return false;
}

std::string CendElement::str() const {
  return "[[" + m[0].str() + ", " + m[1].str() + "], [" + m[2].str() + ", " +
         m[3].str() + "]]";
}

CendElement cend_v() { return cend_a(1); }

CendElement cend_g() { return cend_e(1) * ratio(1, 2); }

CendElement cend_a(int n) {
  if (n < 1) throw ConfalError(kErrBounds, "a_n needs n >= 1");
  CendElement r;
  ExactPoly xn = poly_x().pow(n);
  r.at(0, 0) = xn;
  r.at(1, 1) = xn - poly_d() * poly_x().pow(n - 1) * ratio(1, 2);
  return r;
}

CendElement cend_b(int n) {
  if (n < 2) throw ConfalError(kErrBounds, "b_n needs n >= 2");
  CendElement r;
  r.at(1, 1) = poly_x().pow(n - 2);
  return r;
}

CendElement cend_e(int n) {
  if (n < 1) throw ConfalError(kErrBounds, "e_n needs n >= 1");
  CendElement r;
  r.at(0, 1) = poly_x().pow(n);
  r.at(1, 0) = -poly_x().pow(n - 1);
  return r;
}

CendElement cend_f(int n) {
  if (n < 2) throw ConfalError(kErrBounds, "f_n needs n >= 2");
  CendElement r;
  r.at(1, 0) = poly_x().pow(n - 2);
  return r;
}

CendElement cend_mul(const CendElement& f, const CendElement& g, Var var) {
  if (var != Var::L && var != Var::M)
    throw std::logic_error("cend slot must be l or m");
  if (f.depends_on(var) || g.depends_on(var))
    throw std::logic_error("slot variable already occurs in a cend argument");
  const ExactPoly slot = ExactPoly::variable(var);
  CendElement lf = f.substitute(Var::D, -slot);
  CendElement rg =
      g.substitute(Var::D, poly_d() + slot).substitute(Var::X, poly_x() + slot);
  CendElement out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        out.at(i, j) += lf.at(i, k) * rg.at(k, j);
  return out;
}

CendElement cend_conjugate(const CendElement& f, const CendElement& g, Var var) {
  return cend_mul(f, g, var).substitute(var,
                                        -poly_d() - ExactPoly::variable(var));
}

CendElement cend_bracket(const CendElement& f, const CendElement& g, int pf,
                         int pg, Var var) {
  const Rational sg = ratio((pf * pg) % 2 ? -1 : 1);
  return cend_mul(f, g, var) - cend_conjugate(g, f, var) * sg;
}

CendElement cend_nth(const CendElement& f, const CendElement& g, int n, Var var) {
  return cend_mul(f, g, var).coefficient_of(var, n, true);
}

CendDecomp cend_decompose(const CendElement& m) {
  CendDecomp out;
  // even half: (1,1) = sum alpha_n x^n (n >= 1), remainder of (2,2) in b's
  const ExactPoly& p00 = m.at(0, 0);
  if (!p00.coefficient_of(Var::X, 0, false).is_zero())
    throw ConfalError(kErrVerify,
                      "outside the a/b span: corner (1,1) has an x-free term");
  ExactPoly q = m.at(1, 1);
  for (int n = 1; n <= p00.degree(Var::X); ++n) {
    ExactPoly alpha = p00.coefficient_of(Var::X, n, false);
    if (alpha.is_zero()) continue;
    out.a[n] = alpha;
    q -= alpha * (poly_x().pow(n) -
                  poly_d() * poly_x().pow(n - 1) * ratio(1, 2));
  }
  for (int k = 0; k <= q.degree(Var::X); ++k) {
    ExactPoly beta = q.coefficient_of(Var::X, k, false);
    if (!beta.is_zero()) out.b[k + 2] = beta;
  }
  // odd half: (1,2) = sum c_n x^n (n >= 1), remainder of (2,1) in f's
  const ExactPoly& p01 = m.at(0, 1);
  if (!p01.coefficient_of(Var::X, 0, false).is_zero())
    throw ConfalError(kErrVerify,
                      "outside the e/f span: corner (1,2) has an x-free term");
  ExactPoly r = m.at(1, 0);
  for (int n = 1; n <= p01.degree(Var::X); ++n) {
    ExactPoly c = p01.coefficient_of(Var::X, n, false);
    if (c.is_zero()) continue;
    out.e[n] = c;
    r += c * poly_x().pow(n - 1);
  }
  for (int k = 0; k <= r.degree(Var::X); ++k) {
    ExactPoly co = r.coefficient_of(Var::X, k, false);
    if (!co.is_zero()) out.f[k + 2] = co;
  }
  return out;
}

CendElement cend_compose(const CendDecomp& d) {
  CendElement out;
  for (const auto& [n, c] : d.a) out = out + cend_a(n) * c;
  for (const auto& [n, c] : d.b) out = out + cend_b(n) * c;
  for (const auto& [n, c] : d.e) out = out + cend_e(n) * c;
  for (const auto& [n, c] : d.f) out = out + cend_f(n) * c;
  return out;
}

std::string CendDecomp::str() const {
  auto dump = [](const char* tag, const std::map<int, ExactPoly>& m,
                 std::string& acc) {
    for (const auto& [n, c] : m) {
      if (!acc.empty()) acc += " + ";
      acc += "(" + c.str() + ") " + tag + std::to_string(n);
    }
  };
  std::string acc;
  dump("a", a, acc);
  dump("b", b, acc);
  dump("e", e, acc);
  dump("f", f, acc);
  return acc.empty() ? "0" : acc;
}

int cend_rank(const std::vector<CendElement>& els) {
  std::map<std::pair<int, Expo>, int> coord;
  for (const auto& el : els)
    for (int i = 0; i < 4; ++i)
      for (const auto& [e, c] : el.m[i].terms())
        coord.emplace(std::make_pair(i, e), 0);
  int idx = 0;
  for (auto& [k, v] : coord) v = idx++;
  QMatrix mat(static_cast<int>(coord.size()), static_cast<int>(els.size()));
  for (size_t j = 0; j < els.size(); ++j)
    for (int i = 0; i < 4; ++i)
      for (const auto& [e, c] : els[j].m[i].terms())
        mat.at(coord[{i, e}], static_cast<int>(j)) = c;
  return q_rank(mat);
}

}  // namespace confal
