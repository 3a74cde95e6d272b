#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "confal.h"

namespace {

struct Str {
  char* p = nullptr;
  ~Str() { confal_free_string(p); }
  std::string get() const { return p ? p : ""; }
};

struct Alg {
  confal_algebra* a = nullptr;
  ~Alg() { confal_release(a); }
};

std::string data_path(const char* name) {
  return std::string(CONFAL_REPO_DIR) + "/data/" + name;
}

std::string read_golden(const char* name) {
  std::ifstream in(std::string(CONFAL_REPO_DIR) + "/tests/golden/" + name);
  REQUIRE_MESSAGE(in.good(), "missing golden file " << name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("loading, release and error reporting") {
  CHECK(std::string(confal_version()) == "confal 1.0.0");

  Str err;
  Alg ok{confal_load_file(data_path("vir3.alg").c_str(), &err.p)};
  CHECK(ok.a != nullptr);
  CHECK(err.p == nullptr);

  Str err2;
  Alg missing{confal_load_file("/nonexistent/file.alg", &err2.p)};
  CHECK(missing.a == nullptr);
  CHECK(err2.get().find("cannot open") != std::string::npos);

  Str err3;
  Alg bad{confal_load_string("algebra a lie\ngen v even\nprod v w 0 = 1 v\n",
                             &err3.p)};
  CHECK(bad.a == nullptr);
  CHECK(err3.get().find("line 3") != std::string::npos);
  CHECK(err3.get().find("undeclared generator 'w'") != std::string::npos);
}

TEST_CASE("verify returns zero on pass and one with a violation report") {
  Str err;
  Alg v3{confal_load_file(data_path("vir3.alg").c_str(), &err.p)};
  REQUIRE(v3.a);
  Str rep;
  CHECK(confal_verify(v3.a, 0, &rep.p, &err.p) == 0);
  CHECK(rep.get().find("verify vir3\n") == 0);
  CHECK(rep.get().find("violations=0") != std::string::npos);

  // [v l v] = (d + 3l) v is not skew under the conjugation
  Str err2;
  Alg bad{confal_load_string("algebra crooked lie\ngen v even\nlocality v v 2\n"
                             "prod v v 0 = 1 d^1 v\nprod v v 1 = 3 v\n",
                             &err2.p)};
  REQUIRE(bad.a);
  Str rep2;
  CHECK(confal_verify(bad.a, 0, &rep2.p, &err2.p) == 1);
  CHECK(rep2.get().find("violations=0") == std::string::npos);
  CHECK(rep2.get().find("\n") != std::string::npos);
}

TEST_CASE("completion certificate is deterministic and carries the rules") {
  Str err;
  Alg k1{confal_load_file(data_path("k1.alg").c_str(), &err.p)};
  REQUIRE(k1.a);
  Str cert;
  REQUIRE(confal_complete(k1.a, &cert.p, &err.p) == 0);
  const std::string c = cert.get();
  CHECK(c.find("system k1 order=variant degree<=4 dpow<=4 index<=2\n") == 0);
  CHECK(c.find("rules 23\n") != std::string::npos);
  CHECK(c.find("L2^v v -> (-2) L1^g g\n") != std::string::npos);
  CHECK(c.find("L1^v v -> (1/2) v + (-2) L0^g g\n") != std::string::npos);
  // the four d-power families reach s = 4 under the declared window
  CHECK(c.find("L1^g d d d d g -> (1/2) d d d v + (6) L0^g d d d g\n") !=
        std::string::npos);
  CHECK(c.find("stats seeds=9 ") != std::string::npos);

  Str err2, cert2;
  Alg again{confal_load_file(data_path("k1.alg").c_str(), &err2.p)};
  REQUIRE(again.a);
  REQUIRE(confal_complete(again.a, &cert2.p, &err2.p) == 0);
  CHECK(cert2.get() == c);
}

TEST_CASE("normal form reduces expressions over the envelope") {
  Str err;
  Alg v3{confal_load_file(data_path("vir3.alg").c_str(), &err.p)};
  REQUIRE(v3.a);
  Str a, b, c;
  CHECK(confal_normal_form(v3.a, "prod(2, v, prod(2, v, v))", &a.p, &err.p) == 0);
  CHECK(a.get() == "0\n");
  CHECK(confal_normal_form(v3.a, "d(prod(2, v, v))", &b.p, &err.p) == 0);
  CHECK(b.get() == "(-2) v + (2) L1^v v\n");
  CHECK(confal_normal_form(v3.a, "c:1/2*prod(0, v, v) + d(v)", &c.p, &err.p) == 0);
  CHECK(c.get() == "(1) d v + (1/2) L0^v v\n");

  Str err2, out;
  CHECK(confal_normal_form(v3.a, "prod(1, v", &out.p, &err2.p) == 2);
  CHECK(err2.get().find("expression") != std::string::npos);
}

TEST_CASE("basis enumerates irreducible words ascending") {
  Str err;
  Alg v2{confal_load_file(data_path("vir2.alg").c_str(), &err.p)};
  REQUIRE(v2.a);
  Str out;
  REQUIRE(confal_basis(v2.a, 3, 1, &out.p, &err.p) == 0);
  CHECK(out.get() ==
        "basis vir2 degree<=3 dpow<=1\n"
        "words 6\n"
        "v\n"
        "d v\n"
        "L0^v v\n"
        "d L0^v v\n"
        "L0^v L0^v v\n"
        "d L0^v L0^v v\n");

  Str err2, out2;
  CHECK(confal_basis(v2.a, 0, 1, &out2.p, &err2.p) == 2);
}

TEST_CASE("tables reproduce the golden dumps through the C surface") {
  Str err;
  Alg v2{confal_load_file(data_path("vir2.alg").c_str(), &err.p)};
  REQUIRE(v2.a);
  Str pv2;
  REQUIRE(confal_table(v2.a, "pv2", 6, &pv2.p, &err.p) == 0);
  CHECK(pv2.get() == read_golden("pv2_cap6.txt"));

  Str pk10;
  REQUIRE(confal_table(v2.a, "pk10", 5, &pk10.p, &err.p) == 0);
  CHECK(pk10.get() == read_golden("pk10_cap5.txt"));
  Str hat;
  REQUIRE(confal_table(v2.a, "pk10hat", 5, &hat.p, &err.p) == 0);
  CHECK(hat.get() == read_golden("pk10_hatted_cap5.txt"));

  Str err3;
  Alg v3{confal_load_file(data_path("vir3.alg").c_str(), &err3.p)};
  REQUIRE(v3.a);
  Str gen;
  REQUIRE(confal_table(v3.a, "generic", 0, &gen.p, &err3.p) == 0);
  CHECK(gen.get() == "table vir3 generic\nBRACKET v v = (d + 2*l) v\n");

  Str err4, out4;
  CHECK(confal_table(v3.a, "pv9", 4, &out4.p, &err4.p) == 2);
  CHECK(err4.get().find("unknown table target") != std::string::npos);
  Str err5, out5;
  CHECK(confal_table(v3.a, "pv3", 0, &out5.p, &err5.p) == 2);
}

TEST_CASE("a window too small for the defining relations reports the bound") {
  Str err;
  Alg k1{confal_load_string(
      "algebra k1 lie super\ngen v even\ngen g odd\n"
      "locality v v 3\nlocality v g 2\nlocality g v 2\nlocality g g 2\n"
      "prod v v 0 = 1 d^1 v\nprod v v 1 = 2 v\n"
      "prod v g 0 = 1 d^1 g\nprod v g 1 = 3/2 g\n"
      "prod g v 0 = 1/2 d^1 g\nprod g v 1 = 3/2 g\n"
      "prod g g 0 = -1/2 v\n"
      "order variant\nbounds deg=2 dpow=0 idx=1\n",
      &err.p)};
  REQUIRE(k1.a);
  Str out, err2;
  CHECK(confal_complete(k1.a, &out.p, &err2.p) == 3);
  CHECK(!err2.get().empty());
}
