#include "poly.hpp"

#include <stdexcept>
#include <vector>

namespace confal {

const char* var_name(Var v) {
  switch (v) {
    case Var::D: return "d";
    case Var::L: return "l";
    case Var::M: return "m";
    case Var::X: return "x";
  }
  throw std::logic_error("bad Var");
}

ExactPoly ExactPoly::constant(const Rational& c) {
  ExactPoly p;
  p.add_term({0, 0, 0, 0}, c);
  return p;
}

ExactPoly ExactPoly::variable(Var v, int power) {
  if (power < 0) throw std::invalid_argument("negative exponent");
  Expo e{0, 0, 0, 0};
  e[static_cast<int>(v)] = power;
  return monomial(ratio(1), e);
}

ExactPoly ExactPoly::monomial(const Rational& c, const Expo& e) {
  for (int k : e)
    if (k < 0) throw std::invalid_argument("negative exponent");
  ExactPoly p;
  p.add_term(e, c);
  return p;
}

void ExactPoly::add_term(const Expo& e, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

ExactPoly& ExactPoly::operator+=(const ExactPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

ExactPoly& ExactPoly::operator-=(const ExactPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

ExactPoly ExactPoly::operator+(const ExactPoly& o) const {
  ExactPoly p = *this;
  p += o;
  return p;
}

ExactPoly ExactPoly::operator-(const ExactPoly& o) const {
  ExactPoly p = *this;
  p -= o;
  return p;
}

ExactPoly ExactPoly::operator-() const {
  ExactPoly p;
  for (const auto& [e, c] : terms_) p.terms_.emplace(e, -c);
  return p;
}

ExactPoly ExactPoly::operator*(const ExactPoly& o) const {
  ExactPoly p;
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      Expo e;
      for (int i = 0; i < kNumVars; ++i) e[i] = ea[i] + eb[i];
      p.add_term(e, ca * cb);
    }
  return p;
}

ExactPoly& ExactPoly::operator*=(const ExactPoly& o) {
  *this = *this * o;
  return *this;
}

ExactPoly& ExactPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

ExactPoly ExactPoly::operator*(const Rational& c) const {
  ExactPoly p = *this;
  p *= c;
  return p;
}

ExactPoly ExactPoly::pow(int k) const {
  if (k < 0) throw std::invalid_argument("negative power");
  ExactPoly r = constant(ratio(1));
  for (int i = 0; i < k; ++i) r *= *this;
  return r;
}

ExactPoly ExactPoly::substitute(Var v, const ExactPoly& repl) const {
  const int vi = static_cast<int>(v);
  std::vector<ExactPoly> pows{constant(ratio(1))};
  ExactPoly out;
  for (const auto& [e, c] : terms_) {
    const int k = e[vi];
    while (static_cast<int>(pows.size()) <= k) pows.push_back(pows.back() * repl);
    Expo rest = e;
    rest[vi] = 0;
    out += pows[k] * monomial(c, rest);
  }
  return out;
}

ExactPoly ExactPoly::coefficient_of(Var v, int k, bool divided) const {
  if (k < 0) throw std::invalid_argument("negative coefficient index");
  const int vi = static_cast<int>(v);
  ExactPoly out;
  for (const auto& [e, c] : terms_) {
    if (e[vi] != k) continue;
    Expo rest = e;
    rest[vi] = 0;
    out.add_term(rest, c);
  }
  if (divided) out *= ratio_z(factorial(k));
  return out;
}

int ExactPoly::degree(Var v) const {
  const int vi = static_cast<int>(v);
  int deg = 0;
  for (const auto& [e, c] : terms_)
    if (e[vi] > deg) deg = e[vi];
  return deg;
}

Rational ExactPoly::coeff(const Expo& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::string ExactPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool neg = c < 0;
    Rational a = neg ? Rational(-c) : c;
    std::string mono;
    for (int i = 0; i < kNumVars; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += var_name(static_cast<Var>(i));
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string term;
    if (mono.empty())
      term = rational_str(a);
    else if (a == 1)
      term = mono;
    else
      term = rational_str(a) + "*" + mono;
    if (first) {
      out = (neg ? "-" : "") + term;
      first = false;
    } else {
      out += (neg ? " - " : " + ") + term;
    }
  }
  return out;
}

ExactPoly poly_d() { return ExactPoly::variable(Var::D); }
ExactPoly poly_l() { return ExactPoly::variable(Var::L); }
ExactPoly poly_m() { return ExactPoly::variable(Var::M); }
ExactPoly poly_x() { return ExactPoly::variable(Var::X); }

}  // namespace confal
