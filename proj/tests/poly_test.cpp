#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "poly.hpp"

using namespace confal;

namespace {

// Dense reference model: coefficients indexed by the full exponent box.
// Deliberately structure-free so it cannot share bugs with ExactPoly.
struct DensePoly {
  int n;  // exponents 0..n-1 per variable
  std::vector<Rational> c;
  explicit DensePoly(int n_) : n(n_), c(n_ * n_ * n_ * n_, Rational(0)) {}
  int idx(int a, int b, int e, int f) const { return ((a * n + b) * n + e) * n + f; }
  static DensePoly from(const ExactPoly& p, int n) {
    DensePoly d(n);
    for (const auto& [e, co] : p.terms()) d.c[d.idx(e[0], e[1], e[2], e[3])] += co;
    return d;
  }
  DensePoly add(const DensePoly& o) const {
    DensePoly r(n);
    for (size_t i = 0; i < c.size(); ++i) r.c[i] = c[i] + o.c[i];
    return r;
  }
  std::vector<std::array<int, 4>> support() const {
    std::vector<std::array<int, 4>> s;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int e = 0; e < n; ++e)
          for (int f = 0; f < n; ++f)
            if (c[idx(a, b, e, f)] != 0) s.push_back({a, b, e, f});
    return s;
  }
  DensePoly mul(const DensePoly& o) const {
    DensePoly r(n);
    for (const auto& u : support())
      for (const auto& v : o.support())
        r.c[idx(u[0] + v[0], u[1] + v[1], u[2] + v[2], u[3] + v[3])] +=
            c[idx(u[0], u[1], u[2], u[3])] * o.c[o.idx(v[0], v[1], v[2], v[3])];
    return r;
  }
  bool eq(const DensePoly& o) const { return c == o.c; }
};

ExactPoly rand_poly(std::mt19937& rng, int max_deg, int max_terms) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 4);
  ExactPoly p;
  const int k = nterms(rng);
  for (int i = 0; i < k; ++i) {
    Expo e{deg(rng), deg(rng), deg(rng), deg(rng)};
    p += ExactPoly::monomial(ratio(num(rng), den(rng)), e);
  }
  return p;
}

}  // namespace

TEST_CASE("construction and canonical zero handling") {
  CHECK(ExactPoly().is_zero());
  CHECK(ExactPoly::from_int(0).is_zero());
  ExactPoly p = poly_d() - poly_d();
  CHECK(p.is_zero());
  CHECK(p.str() == "0");
  CHECK(ExactPoly::constant(ratio(2, 6)).str() == "1/3");
}

TEST_CASE("frozen arithmetic examples") {
  ExactPoly d = poly_d(), l = poly_l();
  // (2d + 3l) + (d - l) = 3d + 2l
  ExactPoly s = (ratio(2) * d + ratio(3) * l) + (d - l);
  CHECK(s.str() == "3*d + 2*l");
  // (l + d)(l - d) = l^2 - d^2, printed d-major
  CHECK(((l + d) * (l - d)).str() == "-d^2 + l^2");
  // substitute l -> -d - l in l^2
  ExactPoly sub = (l * l).substitute(Var::L, -d - l);
  CHECK(sub.str() == "d^2 + 2*d*l + l^2");
  CHECK(sub == d * d + ratio(2) * d * l + l * l);
}

TEST_CASE("frozen coefficient extraction examples") {
  ExactPoly d = poly_d(), l = poly_l();
  ExactPoly p = d + ratio(2) * l;
  CHECK(p.coefficient_of(Var::L, 1, true) == ExactPoly::from_int(2));
  CHECK(p.coefficient_of(Var::L, 0, true) == d);
  CHECK((l * l).coefficient_of(Var::L, 2, true) == ExactPoly::from_int(2));
  CHECK((l * l).coefficient_of(Var::L, 2, false) == ExactPoly::from_int(1));
  CHECK((l * l).coefficient_of(Var::L, 1, true).is_zero());
}

TEST_CASE("rendering contract") {
  ExactPoly d = poly_d(), l = poly_l(), m = poly_m(), x = poly_x();
  CHECK((d * d * l + ratio(1, 2) * m).str() == "d^2*l + 1/2*m");
  CHECK((x * d - ExactPoly::from_int(1)).str() == "d*x - 1");
  CHECK((-(d + l)).str() == "-d - l");
  CHECK((ratio(-3, 2) * d * l * m * x).str() == "-3/2*d*l*m*x");
  // term order: deg x major, then d, l, m
  CHECK((m + l + d + x).str() == "x + d + l + m");
  CHECK((l * m + d * m * m).str() == "d*m^2 + l*m");
}

TEST_CASE("substitution involution and self-reference") {
  std::mt19937 rng(12345);
  ExactPoly d = poly_d(), l = poly_l();
  for (int i = 0; i < 200; ++i) {
    ExactPoly p = rand_poly(rng, 5, 6);
    // l -> -d - l twice is the identity
    ExactPoly q = p.substitute(Var::L, -d - l).substitute(Var::L, -d - l);
    CHECK(q == p);
  }
  // substitution whose replacement mentions the variable being replaced
  ExactPoly p = l.pow(2) + d * l;
  CHECK(p.substitute(Var::L, l + ExactPoly::from_int(1)) ==
        (l + ExactPoly::from_int(1)).pow(2) + d * (l + ExactPoly::from_int(1)));
}

TEST_CASE("divided coefficients reconstruct the polynomial") {
  std::mt19937 rng(777);
  ExactPoly l = poly_l();
  for (int i = 0; i < 100; ++i) {
    ExactPoly p = rand_poly(rng, 5, 6);
    ExactPoly acc;
    for (int k = 0; k <= p.degree(Var::L); ++k) {
      // coeff_div(k) * l^k / k! summed over k gives back p
      acc += p.coefficient_of(Var::L, k, true) * l.pow(k) * inv_factorial(k);
    }
    CHECK(acc == p);
  }
}

TEST_CASE("add and mul agree with the dense reference model") {
  std::mt19937 rng(424242);
  for (int i = 0; i < 200; ++i) {
    ExactPoly a = rand_poly(rng, 4, 5), b = rand_poly(rng, 4, 5);
    const int n = 9;  // products of degree-4 factors fit exponents < 9
    DensePoly da = DensePoly::from(a, n), db = DensePoly::from(b, n);
    CHECK(DensePoly::from(a + b, n).eq(da.add(db)));
    CHECK(DensePoly::from(a * b, n).eq(da.mul(db)));
  }
}

TEST_CASE("ring axioms on random triples") {
  std::mt19937 rng(20240915);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    ExactPoly a = rand_poly(rng, 6, 5), b = rand_poly(rng, 6, 5),
              c = rand_poly(rng, 6, 5);
    CHECK(a + (b + c) == (a + b) + c);
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK((a - a).is_zero());
    ++checked;
  }
  CHECK(checked == 1000);
}

TEST_CASE("rational helpers") {
  CHECK(parse_rational("3/6") == ratio(1, 2));
  CHECK(parse_rational("-4/2") == ratio(-2));
  CHECK(rational_str(ratio(-3, 9)) == "-1/3");
  CHECK(rational_str(ratio(5)) == "5");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("x"));
  CHECK_THROWS(parse_rational("1/"));
  CHECK_THROWS(parse_rational(""));
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(3, 5) == 0);
  CHECK(falling(5, 2) == 20);
  CHECK(falling(2, 5) == 0);
  CHECK(factorial(5) == 120);
  CHECK(inv_factorial(4) == ratio(1, 24));
}
