#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "envelope.hpp"

using namespace confal;

namespace {

ConformalAlgebraDesc build_virasoro(int locality) {
  ConformalAlgebraDesc a;
  a.name = "vir" + std::to_string(locality);
  a.kind = AlgKind::Lie;
  a.gens.names = {"v"};
  a.gens.parity["v"] = 0;
  a.locality.def = locality;
  a.table[{"v", "v", 0}] = ConfElement::term(poly_d(), "v");
  a.table[{"v", "v", 1}] = ConfElement::term(ExactPoly::from_int(2), "v");
  return a;
}

// [v l v] = (d+2l)v with N(v,v)=3, [v l g] = (d+3/2 l)g, [g l v] = (d/2+3/2 l)g,
// [g l g] = -1/2 v
ConformalAlgebraDesc build_k1() {
  ConformalAlgebraDesc a;
  a.name = "k1";
  a.kind = AlgKind::Lie;
  a.is_super = true;
  a.gens.names = {"v", "g"};
  a.gens.parity["v"] = 0;
  a.gens.parity["g"] = 1;
  a.locality.def = 2;
  a.locality.overrides[{"v", "v"}] = 3;
  a.table[{"v", "v", 0}] = ConfElement::term(poly_d(), "v");
  a.table[{"v", "v", 1}] = ConfElement::term(ExactPoly::from_int(2), "v");
  a.table[{"g", "v", 0}] = ConfElement::term(poly_d() * ratio(1, 2), "g");
  a.table[{"g", "v", 1}] = ConfElement::term(ExactPoly::constant(ratio(3, 2)), "g");
  a.table[{"v", "g", 0}] = ConfElement::term(poly_d(), "g");
  a.table[{"v", "g", 1}] = ConfElement::term(ExactPoly::constant(ratio(3, 2)), "g");
  a.table[{"g", "g", 0}] = ConfElement::term(ExactPoly::constant(ratio(-1, 2)), "v");
  return a;
}

ModMonomial mono(const OpWord& w, int gen = 0) { return ModMonomial{w, gen}; }

ModElement single(const ModMonomial& m) {
  ModElement e;
  e.emplace(m, ratio(1));
  return e;
}

// the bracket table as a divided-power polynomial of embedded module elements
LambdaPoly embedded_bracket(const Envelope& E, int ga, int gb) {
  LambdaPoly out;
  const auto& names = E.lie->gens.names;
  for (int n = 0;; ++n) {
    auto it = E.lie->table.find({names[ga], names[gb], n});
    if (it == E.lie->table.end()) break;
    ModElement e = embed_conf(*E.lie, it->second);
    if (!e.empty()) out.emplace(n, std::move(e));
  }
  return out;
}

std::string read_golden(const char* name) {
  std::ifstream in(std::string(CONFAL_REPO_DIR) + "/tests/golden/" + name);
  REQUIRE_MESSAGE(in.good(), "missing golden file " << name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExactPoly dl(long cd, long cl) {  // cd*d + cl*l
  return poly_d() * ratio(cd) + poly_l() * ratio(cl);
}

}  // namespace

TEST_CASE("lambda product and conjugate against the defining bracket") {
  Envelope e3 = build_envelope(build_virasoro(3), MonomialOrder::Kind::Variant);
  ModElement v = single(mono({}));

  LambdaPoly p = env_lambda_product(e3, v, v);
  REQUIRE(p.size() == 3);
  CHECK(p.at(0) == single(mono({op_l(0, 0)})));
  CHECK(p.at(1) == single(mono({op_l(1, 0)})));
  CHECK(p.at(2) == single(mono({op_l(2, 0)})));

  // left d twists by -l: ((dv) l v) has entries shifted up with -(k+1)
  LambdaPoly pd = env_lambda_product(e3, single(mono({op_d()})), v);
  CHECK(pd.count(0) == 0);
  CHECK(pd.at(1) == mod_normal_form(e3.sys, ModElement{{mono({op_l(0, 0)}), ratio(-1)}}));
  CHECK(pd.at(3).at(mono({op_l(2, 0)})) == ratio(-3));

  // (v l v) - {v l v} embeds [v l v]
  LambdaPoly q = env_conjugate(e3, v, v);
  LambdaPoly diff = p;
  for (const auto& [k, e] : q) mod_add(diff[k], e, ratio(-1));
  for (auto it = diff.begin(); it != diff.end();)
    it = it->second.empty() ? diff.erase(it) : std::next(it);
  CHECK(diff == embedded_bracket(e3, 0, 0));

  // the super envelope: i(a) l i(b) - (-1)^{|a||b|} {i(b) l i(a)} = i([a l b])
  Envelope k1 = build_envelope(build_k1(), MonomialOrder::Kind::Variant,
                               Bounds{4, 3, 2});
  const GeneratorSet& G = k1.lie->gens;
  for (int ga = 0; ga < 2; ++ga)
    for (int gb = 0; gb < 2; ++gb) {
      ModElement u = single(mono({}, ga)), w = single(mono({}, gb));
      LambdaPoly prod = env_lambda_product(k1, u, w);
      LambdaPoly conj = env_conjugate(k1, w, u);
      const int sign = (ga == 1 && gb == 1) ? -1 : 1;
      LambdaPoly d = prod;
      for (const auto& [k, e] : conj) mod_add(d[k], e, ratio(-sign));
      for (auto it = d.begin(); it != d.end();)
        it = it->second.empty() ? d.erase(it) : std::next(it);
      CHECK_MESSAGE(d == embedded_bracket(k1, ga, gb),
                    "pair " << G.names[ga] << "," << G.names[gb] << ": "
                            << lambda_poly_str(d, k1.lie->gens));
    }
}

TEST_CASE("action bound caps the letter index") {
  Envelope e2 = build_envelope(build_virasoro(2), MonomialOrder::Kind::Standard);
  CHECK(action_bound(e2.sys, 0, mono({})) == 2);
  CHECK(action_bound(e2.sys, 0, mono({op_d()})) == 3);
  CHECK(action_bound(e2.sys, 0, mono({op_l(0, 0)})) == 3);
  // tight: one below the bound survives
  CHECK(mod_normal_form(e2.sys, single(mono({op_l(1, 0)}))) == single(mono({})));
  CHECK(!mod_normal_form(e2.sys, single(mono({op_l(2, 0), op_l(0, 0)}))).empty());

  Envelope e3 = build_envelope(build_virasoro(3), MonomialOrder::Kind::Variant);
  CHECK(action_bound(e3.sys, 0, mono({})) == 3);
  CHECK(action_bound(e3.sys, 0, mono({op_d()})) == 4);
  CHECK(action_bound(e3.sys, 0, mono({op_l(0, 0)})) == 5);
  // L_3 d v = 3 L_2 v survives, L_4 d v dies
  CHECK(mod_normal_form(e3.sys, single(mono({op_l(3, 0), op_d()}))) ==
        ModElement{{mono({op_l(2, 0)}), ratio(3)}});
  CHECK(mod_normal_form(e3.sys, single(mono({op_l(4, 0), op_d()}))).empty());
}

TEST_CASE("graded products drop to the quotient and cancel on top") {
  Envelope e3 = build_envelope(build_virasoro(3), MonomialOrder::Kind::Variant);
  ModMonomial y11 = mono({op_l(2, 0)});
  GradedPair gp = graded_products(e3, single(y11), 2, single(y11), 2);
  // (y_11 l y_11) = -2 y_13 in the top quotient: the product is not zero
  REQUIRE(gp.comm.size() == 1);
  CHECK(gp.comm.at(0) ==
        ModElement{{mono({op_l(1, 0), op_l(1, 0), op_l(2, 0)}), ratio(-2)}});
  // its commutator vanishes one degree down
  CHECK(gp.bracket.empty());

  ModMonomial x2 = mono({op_l(0, 0)});
  CHECK_THROWS_AS(graded_products(e3, single(x2), 3, single(x2), 2), ConfalError);
  ModElement mixed = single(x2);
  mod_add(mixed, mono({}), ratio(1));
  CHECK_THROWS_AS(graded_products(e3, mixed, 2, single(x2), 2), ConfalError);
}

TEST_CASE("locality-two quotient is the polynomial Poisson algebra") {
  Envelope e2 = build_envelope(build_virasoro(2), MonomialOrder::Kind::Standard);
  const int cap = 6;
  PoissonTable t = pv2_table(e2, cap);
  for (int i = 1; i <= cap; ++i)
    for (int j = 1; i + j <= cap; ++j) {
      std::pair key{"v_" + std::to_string(i), "v_" + std::to_string(j)};
      // (v^i l v^j) = v^{i+j},  [v^i l v^j] = (i d + (i+j) l) v^{i+j-1}
      CHECK(t.comm.at(key) == ConfElement::gen("v_" + std::to_string(i + j)));
      CHECK(t.bracket.at(key) ==
            ConfElement::term(dl(i, i + j), "v_" + std::to_string(i + j - 1)));
    }
  CHECK(verify_graded_poisson(t, cap).pass());
  CHECK(t.dump() == read_golden("pv2_cap6.txt"));
}

TEST_CASE("locality-three quotient: closed forms on both families") {
  Envelope e3 = build_envelope(build_virasoro(3), MonomialOrder::Kind::Variant);
  const int cap = 5;
  PoissonTable t = pv3_table(e3, cap);
  auto X = [](int n) { return "x_" + std::to_string(n); };
  auto Y = [](int n, int m) {
    return "y_" + std::to_string(n) + "_" + std::to_string(m);
  };
  const ExactPoly D = poly_d(), L = poly_l();

  for (int n = 1; n < cap; ++n)
    for (int m = 1; n + m <= cap; ++m) {
      // (x_n l x_m) = x_{n+m} + 1/2 (dl + l^2) y_{n+m-1,1}
      ConfElement comm = ConfElement::gen(X(n + m)) +
                         ConfElement::term((D * L + L * L) * ratio(1, 2),
                                           Y(n + m - 1, 1));
      CHECK_MESSAGE(t.comm.at({X(n), X(m)}) == comm, "comm x x at " << n << "," << m);
      // [x_n l x_m] = (nd + (n+m)l) x_{n+m-1}
      //             + 1/2 l (d+l) ((n-1)d + (n+m-2)l) y_{n+m-2,1}
      ConfElement br = ConfElement::term(dl(n, n + m), X(n + m - 1));
      if (n + m > 2)
        br += ConfElement::term(L * (D + L) * dl(n - 1, n + m - 2) * ratio(1, 2),
                                Y(n + m - 2, 1));
      CHECK_MESSAGE(t.bracket.at({X(n), X(m)}) == br, "bracket x x at " << n << "," << m);
    }

  for (int n = 1; n < cap; ++n)
    for (int m = 1; m < cap; ++m)
      for (int k = 1; n + m + k <= cap; ++k) {
        // (x_n l y_mk) = y_{n+m,k} + l y_{n+m-1,k+1}
        ConfElement comm = ConfElement::gen(Y(n + m, k)) +
                           ConfElement::term(L, Y(n + m - 1, k + 1));
        CHECK(t.comm.at({X(n), Y(m, k)}) == comm);
        // [x_n l y_mk] = (nd + (n+m-1)l) y_{n+m-1,k}
        //             + l ((n+m-2)l + (n-1)d) y_{n+m-2,k+1}
        ConfElement br = ConfElement::term(dl(n, n + m - 1), Y(n + m - 1, k));
        if (n + m > 2)
          br += ConfElement::term(L * dl(n - 1, n + m - 2), Y(n + m - 2, k + 1));
        CHECK_MESSAGE(t.bracket.at({X(n), Y(m, k)}) == br,
                      "bracket x y at " << n << "," << m << "," << k);
      }

  // both y-family products survive in the quotient
  for (int n = 1; n < cap; ++n)
    for (int k = 1; n + k < cap; ++k)
      for (int m = 1; m < cap; ++m)
        for (int j = 1; n + k + m + j <= cap; ++j) {
          // (y_nk l y_mj) = -2 y_{n+m-1,k+j+1}
          CHECK(t.comm.at({Y(n, k), Y(m, j)}) ==
                ConfElement::term(ExactPoly::from_int(-2), Y(n + m - 1, k + j + 1)));
          // [y_nk l y_mj] = -2 ((n-1)d + (n+m-2)l) y_{n+m-2,k+j+1}
          ConfElement br;
          if (n + m > 2)
            br = ConfElement::term(dl(n - 1, n + m - 2) * ratio(-2),
                                   Y(n + m - 2, k + j + 1));
          CHECK(t.bracket.at({Y(n, k), Y(m, j)}) == br);
        }
  CHECK(t.comm.at({Y(1, 1), Y(1, 1)}) != ConfElement{});

  CHECK(verify_graded_poisson(t, cap).pass());
  CHECK(t.dump() == read_golden("pv3_cap5.txt"));
}

TEST_CASE("even super quotient through the matrix realization") {
  const int cap = 5;
  PoissonTable t = pk10_table(cap);
  auto A = [](int n) { return "a_" + std::to_string(n); };
  auto B = [](int n) { return "b_" + std::to_string(n); };
  const ExactPoly D = poly_d(), L = poly_l();
  const ExactPoly q = (L * L + D * L) * ratio(1, 4);  // 1/4 (l^2 + dl)

  for (int n = 1; n <= cap; ++n)
    for (int m = 1; n + m <= cap; ++m) {
      CHECK(t.comm.at({A(n), A(m)}) ==
            ConfElement::gen(A(n + m)) + ConfElement::term(q, B(n + m)));
      ConfElement br = ConfElement::term(dl(n, n + m), A(n + m - 1));
      if (n + m > 2)
        br += ConfElement::term(q * dl(n - 1, n + m - 2), B(n + m - 1));
      CHECK_MESSAGE(t.bracket.at({A(n), A(m)}) == br, "bracket a a at " << n << "," << m);
    }
  for (int n = 1; n <= cap; ++n)
    for (int m = 2; n + m <= cap; ++m) {
      CHECK(t.comm.at({A(n), B(m)}) == ConfElement::gen(B(n + m)));
      CHECK(t.comm.at({B(m), A(n)}) == ConfElement::gen(B(n + m)));
      CHECK(t.bracket.at({A(n), B(m)}) ==
            ConfElement::term(dl(n, n + m - 2), B(n + m - 1)));
      CHECK(t.bracket.at({B(m), A(n)}) ==
            ConfElement::term(dl(m - 2, n + m - 2), B(n + m - 1)));
    }
  for (int n = 2; n <= cap; ++n)
    for (int m = 2; n + m <= cap; ++m) {
      CHECK(t.comm.at({B(n), B(m)}) == ConfElement{});
      CHECK(t.bracket.at({B(n), B(m)}) == ConfElement{});
    }
  CHECK(verify_graded_poisson(t, cap).pass());
  CHECK(t.dump() == read_golden("pk10_cap5.txt"));

  PoissonTable h = pk10_hatted_table(t, cap);
  auto H = [](int n) { return "ahat_" + std::to_string(n); };
  for (int m = 2; 1 + m <= cap; ++m) {
    // (ahat_1 l ahat_m) = ahat_{m+1} + 1/8 l^2 b_{m+1}
    CHECK(h.comm.at({H(1), H(m)}) ==
          ConfElement::gen(H(m + 1)) +
              ConfElement::term(L * L * ratio(1, 8), B(m + 1)));
    // [ahat_1 l ahat_m] = (d + (m+1)l) ahat_m + 1/8 ((m-1)l^3 - dl^2) b_m
    CHECK(h.bracket.at({H(1), H(m)}) ==
          ConfElement::term(dl(1, m + 1), H(m)) +
              ConfElement::term(
                  (L * L * L * ratio(m - 1) - D * L * L) * ratio(1, 8), B(m)));
  }
  for (int n = 2; n <= cap; ++n)
    for (int m = 2; n + m <= cap; ++m) {
      // away from index one the shift removes every b-term
      CHECK(h.comm.at({H(n), H(m)}) == ConfElement::gen(H(n + m)));
      CHECK(h.bracket.at({H(n), H(m)}) ==
            ConfElement::term(dl(n, n + m), H(n + m - 1)));
    }
  CHECK(verify_graded_poisson(h, cap).pass());
  CHECK(h.dump() == read_golden("pk10_hatted_cap5.txt"));
}

TEST_CASE("reduced super words stay independent in the matrix model") {
  Envelope k1 = build_envelope(build_k1(), MonomialOrder::Kind::Variant,
                               Bounds{4, 3, 2});
  // generator images and the first basis words
  CHECK(cend2_embed(k1, mono({})) == cend_v());
  CHECK(cend2_embed(k1, mono({}, 1)) == cend_g());
  CHECK(cend2_embed(k1, mono({op_l(0, 0)})) == cend_a(2));
  CHECK(cend2_embed(k1, mono({op_l(0, 0), op_l(0, 0)})) == cend_a(3));
  CHECK(cend2_embed(k1, mono({op_l(1, 1)}, 1)) == cend_b(2) * ratio(-1, 4));
  CHECK(cend2_embed(k1, mono({op_l(0, 0), op_l(1, 1)}, 1)) ==
        cend_b(3) * ratio(-1, 4));

  // the realization is a module morphism: every completed rule maps to zero
  for (const auto& r : k1.sys.rules) {
    CendElement img = cend2_embed(k1, r.lead);
    for (const auto& [m, c] : r.rhs) img = img - cend2_embed(k1, m) * c;
    CHECK_MESSAGE(img.is_zero(),
                  "rule " << mod_mono_str(r.lead, k1.lie->gens) << " image "
                          << img.str());
  }

  IndependenceReport rep = cend2_independence(k1, 3, 2);
  CHECK(rep.words == 34);
  CHECK(rep.rank == 34);
  CHECK(rep.shape_defects.empty());
}

TEST_CASE("randomized rewriting strategies land on the same normal form") {
  Envelope e3 = build_envelope(build_virasoro(3), MonomialOrder::Kind::Variant);
  Envelope k1 = build_envelope(build_k1(), MonomialOrder::Kind::Variant,
                               Bounds{4, 3, 2});
  std::mt19937 rng(20240817);
  // Caps leave room under each system's completion window: bracket
  // coefficients grow the d count and products grow indices along a
  // reduction, and confluence is only certified inside the window.
  auto random_elem = [&](const Envelope& E, int max_len, int max_d, int max_l,
                         int max_r) {
    const int ngen = static_cast<int>(E.lie->gens.names.size());
    ModElement e;
    const int terms = 1 + static_cast<int>(rng() % 3);
    for (int t = 0; t < terms; ++t) {
      ModMonomial m;
      m.gen = static_cast<int>(rng() % ngen);
      const int len = static_cast<int>(rng() % (max_len + 1));
      int nd = 0;
      for (int i = 0; i < len; ++i) {
        switch (rng() % 3) {
          case 0:
            if (nd < max_d) { m.word.push_back(op_d()); ++nd; }
            break;
          case 1:
            m.word.push_back(op_l(static_cast<int>(rng() % (max_l + 1)),
                                  static_cast<int>(rng() % ngen)));
            break;
          default:
            m.word.push_back(op_r(static_cast<int>(rng() % (max_r + 1)),
                                  static_cast<int>(rng() % ngen)));
        }
      }
      mod_add(e, m, ratio(static_cast<long>(rng() % 7) - 3));
    }
    return e;
  };
  for (int trial = 0; trial < 60; ++trial) {
    for (const Envelope* E : {&e3, &k1}) {
      const bool super = E->lie->is_super;
      ModElement e = super ? random_elem(*E, 3, 1, 2, 1)
                           : random_elem(*E, 4, 2, 3, 2);
      ModElement nf = mod_normal_form(E->sys, e);
      CHECK(mod_normal_form(E->sys, nf) == nf);
      for (uint64_t seed : {1u, 2u, 3u})
        CHECK_MESSAGE(mod_normal_form_random(E->sys, e, seed ^ trial) == nf,
                      "strategy split on " << mod_elem_str(e, E->lie->gens));
    }
  }
}
