#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "algfile.hpp"
#include "poisson_model.hpp"

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

void check_same_desc(const ConformalAlgebraDesc& a, const ConformalAlgebraDesc& b) {
  CHECK(a.name == b.name);
  CHECK(a.kind == b.kind);
  CHECK(a.is_super == b.is_super);
  CHECK(a.gens.names == b.gens.names);
  CHECK(a.gens.parity == b.gens.parity);
  CHECK(a.locality.def == b.locality.def);
  CHECK(a.locality.overrides == b.locality.overrides);
  CHECK(a.table == b.table);
  CHECK(a.bracket_table == b.bracket_table);
  CHECK(a.grade == b.grade);
  CHECK(a.grade_cap == b.grade_cap);
}

std::string data_path(const char* name) {
  return std::string(CONFAL_REPO_DIR) + "/data/" + name;
}

int parse_error_line(const std::string& text) {
  try {
    parse_algebra(text);
  } catch (const ConfalError& e) {
    REQUIRE(e.code == kErrParse);
    std::string w = e.what();
    REQUIRE(w.rfind("line ", 0) == 0);
    return std::stoi(w.substr(5));
  }
  FAIL("no parse error raised");
  return -1;
}

}  // namespace

TEST_CASE("virasoro text parses to the defining table") {
  AlgebraFile f = parse_algebra(
      "# comment\n"
      "algebra vir3 lie\n"
      "gen v even\n"
      "locality v v 3\n"
      "prod v v 0 = 1 d^1 v\n"
      "prod v v 1 = 2 v   # trailing comment\n"
      "order variant\n"
      "bounds deg=6 dpow=4 idx=6\n");
  check_same_desc(f.alg, build_virasoro(3));
  CHECK(f.env.order == MonomialOrder::Kind::Variant);
  CHECK(f.env.bounds.max_degree == 6);
  CHECK(f.env.bounds.max_dpow == 4);
  CHECK(f.env.bounds.max_index == 6);

  // locality default inferred one past the top index when undeclared
  AlgebraFile g = parse_algebra(
      "algebra vir2 lie\ngen v even\n"
      "prod v v 0 = 1 d^1 v\nprod v v 1 = 2 v\n");
  check_same_desc(g.alg, build_virasoro(2));
  CHECK(g.env.order == MonomialOrder::Kind::Standard);

  // multi-term sums, zero entries dropped
  AlgebraFile h = parse_algebra(
      "algebra t lie\ngen a even\ngen b even\nlocality a a 2\n"
      "locality a b 2\nlocality b a 2\nlocality b b 2\n"
      "prod a b 1 = 1 d^2 a + -1/3 b + 0 a\n"
      "prod b a 1 = 0\n");
  CHECK(h.alg.table.size() == 1);
  CHECK(h.alg.table.at({"a", "b", 1}) ==
        ConfElement::term(poly_d().pow(2), "a") +
            ConfElement::term(ExactPoly::constant(ratio(-1, 3)), "b"));
}

TEST_CASE("shipped files parse, round-trip and satisfy their axioms") {
  for (const char* name :
       {"vir2.alg", "vir3.alg", "k1.alg", "cur_sl2.alg", "pv2_quadratic.alg"}) {
    CAPTURE(name);
    AlgebraFile f = load_algebra_file(data_path(name));
    AlgebraFile g = parse_algebra(render_algebra(f));
    check_same_desc(f.alg, g.alg);
    CHECK(f.env.order == g.env.order);
    CHECK(f.env.bounds.max_degree == g.env.bounds.max_degree);
    CHECK(f.env.bounds.max_dpow == g.env.bounds.max_dpow);
    CHECK(f.env.bounds.max_index == g.env.bounds.max_index);
    CHECK(render_algebra(f) == render_algebra(g));
    AxiomReport rep = check_axioms(f.alg);
    CHECK_MESSAGE(rep.pass(), name << ": " << rep.summary());
  }
}

TEST_CASE("shipped k1 and pv2 files match the reference constructions") {
  AlgebraFile k = load_algebra_file(data_path("k1.alg"));
  check_same_desc(k.alg, build_k1());
  CHECK(k.env.order == MonomialOrder::Kind::Variant);
  CHECK(k.env.bounds.max_degree == 4);
  CHECK(k.env.bounds.max_dpow == 4);
  CHECK(k.env.bounds.max_index == 2);

  AlgebraFile p = load_algebra_file(data_path("pv2_quadratic.alg"));
  ConformalAlgebraDesc w = make_weyl_poisson(6);
  w.name = "pv2_quadratic";
  check_same_desc(p.alg, w);
}

TEST_CASE("grammar errors carry the offending line number") {
  CHECK(parse_error_line("gen v even\n") == 1);  // header first
  CHECK(parse_error_line("algebra a lie\nalgebra b lie\n") == 2);
  CHECK(parse_error_line("algebra a ring\n") == 1);
  CHECK(parse_error_line("algebra a lie\ngen v even\ngen v even\n") == 3);
  CHECK(parse_error_line("algebra a lie\ngen v odd\n") == 2);  // not super
  CHECK(parse_error_line("algebra a lie\ngen v even\nprod v w 0 = 1 v\n") == 3);
  CHECK(parse_error_line("algebra a lie\ngen v even\nprod v v 0 = 1 q^2 v\n") == 3);
  CHECK(parse_error_line("algebra a lie\ngen v even\nprod v v 0 = 1/0 v\n") == 3);
  CHECK(parse_error_line("algebra a lie\ngen v even\nprod v v 0 = 1 v +\n") == 3);
  CHECK(parse_error_line(
            "algebra a lie\ngen v even\nprod v v 0 = 1 v\nprod v v 0 = 2 v\n") == 4);
  CHECK(parse_error_line("algebra a poisson\ngen v even\nprod v v 0 = 1 v\n") == 3);
  CHECK(parse_error_line("algebra a lie\ngen v even\ncomm v v 0 = 1 v\n") == 3);
  CHECK(parse_error_line("algebra a lie\ngen v even\nflavor sweet\n") == 3);
  CHECK(parse_error_line("algebra a lie\ngen v even\norder fancy\n") == 3);
  CHECK(parse_error_line("algebra a lie\ngen v even\nbounds deg=4\n") == 3);
  // entry at an index the declared locality forbids
  CHECK(parse_error_line("algebra a lie\ngen v even\nlocality v v 1\n"
                         "prod v v 1 = 2 v\n") == 4);
  // grading declarations must be complete and capped
  CHECK(parse_error_line("algebra a lie\ngen v even 1\ngen w even\ngradecap 3\n") == 1);
  CHECK(parse_error_line("algebra a lie\ngen v even 1\n") == 1);
  CHECK(parse_error_line("algebra a lie\ngen v even\ngradecap 3\n") == 1);
}

TEST_CASE("expressions evaluate inside the envelope of a file") {
  AlgebraFile f = load_algebra_file(data_path("vir3.alg"));
  Envelope E = build_envelope(f.alg, f.env.order, f.env.bounds);
  const ModMonomial v{{}, 0};

  CHECK(eval_mod_expr(E, "v") == ModElement{{v, ratio(1)}});
  CHECK(eval_mod_expr(E, "d(v)") == ModElement{{ModMonomial{{op_d()}, 0}, ratio(1)}});
  CHECK(eval_mod_expr(E, "prod(1, v, v)") ==
        ModElement{{ModMonomial{{op_l(1, 0)}, 0}, ratio(1)}});
  CHECK(eval_mod_expr(E, "c:3/2*v + prod(0, v, v)") ==
        ModElement{{v, ratio(3, 2)}, {ModMonomial{{op_l(0, 0)}, 0}, ratio(1)}});
  // (v_(2) (v_(2) v)) = L2 L2 v, which the completed system kills
  CHECK(mod_normal_form(E.sys, eval_mod_expr(E, "prod(2, v, prod(2, v, v))")).empty());
  // d of the same element reduces through d L2 v = 2 L1 v - 2 v
  ModElement dl2 = mod_normal_form(E.sys, eval_mod_expr(E, "d(prod(2, v, v))"));
  ModElement expect;
  mod_add(expect, ModMonomial{{op_l(1, 0)}, 0}, ratio(2));
  mod_add(expect, v, ratio(-2));
  CHECK(dl2 == expect);

  CHECK_THROWS_AS(eval_mod_expr(E, "w"), ConfalError);
  CHECK_THROWS_AS(eval_mod_expr(E, "prod(1, v"), ConfalError);
  CHECK_THROWS_AS(eval_mod_expr(E, "v v"), ConfalError);
  CHECK_THROWS_AS(eval_mod_expr(E, "c:1/2 v"), ConfalError);
}

TEST_CASE("envelope options feed completion as declared") {
  AlgebraFile f = load_algebra_file(data_path("k1.alg"));
  Envelope E = build_envelope(f.alg, f.env.order, f.env.bounds);
  // seven closed rules plus four d-power families instantiated to the window
  CHECK(E.sys.rules.size() == 23);
}
