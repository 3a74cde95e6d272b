#include "algfile.hpp"

#include <fstream>
#include <sstream>

#include "error.hpp"

namespace confal {
namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfalError(kErrParse, "line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

int parse_int(const std::string& t, int line, const char* what) {
  try {
    size_t used = 0;
    int v = std::stoi(t, &used);
    if (used != t.size()) fail(line, std::string("bad ") + what + " '" + t + "'");
    return v;
  } catch (const ConfalError&) {
    throw;
  } catch (...) {
    fail(line, std::string("bad ") + what + " '" + t + "'");
  }
}

Rational parse_coef(const std::string& t, int line) {
  try {
    return parse_rational(t);
  } catch (...) {
    fail(line, "bad rational '" + t + "'");
  }
}

// term group := <rational> [d^<s>] <gen>
ConfElement parse_term(const std::vector<std::string>& tok, size_t lo, size_t hi,
                       const GeneratorSet& gens, int line) {
  if (hi - lo < 2 || hi - lo > 3) fail(line, "term is '<coef> [d^<s>] <gen>'");
  Rational c = parse_coef(tok[lo], line);
  ExactPoly p = ExactPoly::constant(c);
  size_t g = lo + 1;
  if (hi - lo == 3) {
    if (tok[g].rfind("d^", 0) != 0) fail(line, "expected d^<s>, got '" + tok[g] + "'");
    p *= poly_d().pow(parse_int(tok[g].substr(2), line, "d power"));
    ++g;
  }
  if (!gens.contains(tok[g])) fail(line, "undeclared generator '" + tok[g] + "'");
  return ConfElement::term(p, tok[g]);
}

ConfElement parse_sum(const std::vector<std::string>& tok, size_t lo,
                      const GeneratorSet& gens, int line) {
  if (lo >= tok.size()) fail(line, "empty right-hand side");
  if (tok.size() - lo == 1 && tok[lo] == "0") return {};
  ConfElement out;
  size_t start = lo;
  for (size_t i = lo; i <= tok.size(); ++i) {
    if (i == tok.size() || tok[i] == "+") {
      out += parse_term(tok, start, i, gens, line);
      start = i + 1;
      if (i + 1 >= tok.size() && i != tok.size()) fail(line, "trailing '+'");
    }
  }
  return out;
}

std::string poly_file_str(const ExactPoly& p, const std::string& g, int line_unused) {
  (void)line_unused;
  std::string out;
  for (const auto& [e, c] : p.terms()) {
    if (!out.empty()) out += " + ";
    out += rational_str(c);
    if (e[1] || e[2] || e[3])
      throw ConfalError(kErrVerify, "table entry coefficient outside k[d]");
    if (e[0]) out += " d^" + std::to_string(e[0]);
    out += " " + g;
  }
  return out;
}

}  // namespace

AlgebraFile parse_algebra(const std::string& text) {
  AlgebraFile f;
  ConformalAlgebraDesc& a = f.alg;
  bool have_header = false, have_gradecap = false;
  bool have_order = false, have_bounds = false;
  std::map<std::pair<std::string, std::string>, std::pair<int, int>> loc;  // -> (N, line)
  struct Entry {
    int line, n;
    std::string a, b;
  };
  std::vector<Entry> entries;

  std::istringstream in(text);
  std::string raw;
  for (int line = 1; std::getline(in, raw); ++line) {
    if (auto pos = raw.find('#'); pos != std::string::npos) raw.erase(pos);
    std::vector<std::string> tok = split_ws(raw);
    if (tok.empty()) continue;
    const std::string& kw = tok[0];

    if (kw == "algebra") {
      if (have_header) fail(line, "duplicate algebra header");
      if (tok.size() < 3 || tok.size() > 4) fail(line, "algebra <name> <kind> [super]");
      a.name = tok[1];
      if (tok[2] == "lie") a.kind = AlgKind::Lie;
      else if (tok[2] == "assoc") a.kind = AlgKind::Associative;
      else if (tok[2] == "poisson") a.kind = AlgKind::Poisson;
      else fail(line, "kind is lie, assoc or poisson, got '" + tok[2] + "'");
      if (tok.size() == 4) {
        if (tok[3] != "super") fail(line, "trailing token '" + tok[3] + "'");
        a.is_super = true;
      }
      have_header = true;
      continue;
    }
    if (!have_header) fail(line, "file must start with the algebra header");

    if (kw == "gen") {
      if (tok.size() < 3 || tok.size() > 4) fail(line, "gen <name> <even|odd> [<grade>]");
      if (a.gens.contains(tok[1])) fail(line, "duplicate generator '" + tok[1] + "'");
      int par;
      if (tok[2] == "even") par = 0;
      else if (tok[2] == "odd") par = 1;
      else fail(line, "parity is even or odd, got '" + tok[2] + "'");
      if (par == 1 && !a.is_super) fail(line, "odd generator in a non-super algebra");
      a.gens.names.push_back(tok[1]);
      a.gens.parity[tok[1]] = par;
      if (tok.size() == 4) a.grade[tok[1]] = parse_int(tok[3], line, "grade");
    } else if (kw == "gradecap") {
      if (tok.size() != 2) fail(line, "gradecap <n>");
      if (have_gradecap) fail(line, "duplicate gradecap");
      a.grade_cap = parse_int(tok[1], line, "grade cap");
      have_gradecap = true;
    } else if (kw == "locality") {
      if (tok.size() != 4) fail(line, "locality <a> <b> <n>");
      for (int i = 1; i <= 2; ++i)
        if (!a.gens.contains(tok[i])) fail(line, "undeclared generator '" + tok[i] + "'");
      int n = parse_int(tok[3], line, "locality");
      if (n < 0) fail(line, "negative locality");
      if (!loc.emplace(std::pair{tok[1], tok[2]}, std::pair{n, line}).second)
        fail(line, "duplicate locality for (" + tok[1] + ", " + tok[2] + ")");
    } else if (kw == "prod" || kw == "comm" || kw == "bracket") {
      if (kw == "prod" && a.kind == AlgKind::Poisson)
        fail(line, "poisson entries use comm/bracket, not prod");
      if (kw != "prod" && a.kind != AlgKind::Poisson)
        fail(line, kw + " entries require the poisson kind");
      if (tok.size() < 6 || tok[4] != "=")
        fail(line, kw + " <a> <b> <n> = <sum>");
      for (int i = 1; i <= 2; ++i)
        if (!a.gens.contains(tok[i])) fail(line, "undeclared generator '" + tok[i] + "'");
      int n = parse_int(tok[3], line, "product index");
      if (n < 0) fail(line, "negative product index");
      auto& tab = (kw == "bracket") ? a.bracket_table : a.table;
      std::tuple key{tok[1], tok[2], n};
      if (tab.count(key)) fail(line, "duplicate entry " + kw + " " + tok[1] + " " +
                                        tok[2] + " " + std::to_string(n));
      ConfElement e = parse_sum(tok, 5, a.gens, line);
      if (!e.is_zero()) tab.emplace(std::move(key), std::move(e));
      entries.push_back({line, n, tok[1], tok[2]});
    } else if (kw == "order") {
      if (tok.size() != 2) fail(line, "order <std|variant>");
      if (have_order) fail(line, "duplicate order");
      if (tok[1] == "std") f.env.order = MonomialOrder::Kind::Standard;
      else if (tok[1] == "variant") f.env.order = MonomialOrder::Kind::Variant;
      else fail(line, "order is std or variant, got '" + tok[1] + "'");
      have_order = true;
    } else if (kw == "bounds") {
      if (tok.size() != 4) fail(line, "bounds deg=<d> dpow=<s> idx=<n>");
      if (have_bounds) fail(line, "duplicate bounds");
      const char* keys[3] = {"deg=", "dpow=", "idx="};
      int* slots[3] = {&f.env.bounds.max_degree, &f.env.bounds.max_dpow,
                       &f.env.bounds.max_index};
      for (int i = 0; i < 3; ++i) {
        if (tok[i + 1].rfind(keys[i], 0) != 0)
          fail(line, std::string("expected ") + keys[i] + "<n>, got '" + tok[i + 1] + "'");
        *slots[i] = parse_int(tok[i + 1].substr(std::string(keys[i]).size()), line,
                              "bound");
      }
      have_bounds = true;
    } else {
      fail(line, "unknown directive '" + kw + "'");
    }
  }

  if (!have_header) fail(1, "empty file");
  if (a.gens.names.empty()) fail(1, "no generators declared");
  if (!a.grade.empty() && a.grade.size() != a.gens.names.size())
    fail(1, "grading must cover every generator");
  if (!a.grade.empty() && !have_gradecap) fail(1, "graded file without gradecap");
  if (have_gradecap && a.grade.empty()) fail(1, "gradecap without generator grades");

  if (!loc.empty()) {
    int def = loc.begin()->second.first;
    for (const auto& [k, v] : loc) def = std::min(def, v.first);
    a.locality.def = def;
    for (const auto& [k, v] : loc)
      if (v.first != def) a.locality.overrides[k] = v.first;
  } else {
    int top = 0;
    for (const Entry& e : entries) top = std::max(top, e.n + 1);
    a.locality.def = std::max(top, 1);
  }
  for (const Entry& e : entries)
    if (e.n >= a.locality(e.a, e.b))
      fail(e.line, "entry index " + std::to_string(e.n) + " not below locality " +
                       std::to_string(a.locality(e.a, e.b)) + " of (" + e.a + ", " +
                       e.b + ")");
  return f;
}

AlgebraFile load_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw ConfalError(kErrUsage, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_algebra(ss.str());
}

std::string render_algebra(const AlgebraFile& f) {
  const ConformalAlgebraDesc& a = f.alg;
  std::ostringstream out;
  out << "algebra " << a.name << " "
      << (a.kind == AlgKind::Lie ? "lie"
          : a.kind == AlgKind::Poisson ? "poisson" : "assoc")
      << (a.is_super ? " super" : "") << "\n";
  for (const auto& g : a.gens.names) {
    out << "gen " << g << " " << (a.gens.parity.at(g) ? "odd" : "even");
    if (a.graded()) out << " " << a.grade.at(g);
    out << "\n";
  }
  if (a.graded()) out << "gradecap " << a.grade_cap << "\n";
  for (const auto& p : a.gens.names)
    for (const auto& q : a.gens.names)
      out << "locality " << p << " " << q << " " << a.locality(p, q) << "\n";
  auto dump = [&](const char* kw, const auto& tab) {
    for (const auto& [key, e] : tab) {
      out << kw << " " << std::get<0>(key) << " " << std::get<1>(key) << " "
          << std::get<2>(key) << " =";
      bool first = true;
      for (const auto& [g, p] : e.comps) {
        std::string s = poly_file_str(p, g, 0);
        if (s.empty()) continue;
        out << (first ? " " : " + ") << s;
        first = false;
      }
      out << "\n";
    }
  };
  if (a.kind == AlgKind::Poisson) {
    dump("comm", a.table);
    dump("bracket", a.bracket_table);
  } else {
    dump("prod", a.table);
  }
  out << "order "
      << (f.env.order == MonomialOrder::Kind::Standard ? "std" : "variant") << "\n";
  out << "bounds deg=" << f.env.bounds.max_degree << " dpow=" << f.env.bounds.max_dpow
      << " idx=" << f.env.bounds.max_index << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Element expressions.
// ---------------------------------------------------------------------------

namespace {

struct ExprParser {
  const Envelope& E;
  const std::string& s;
  size_t i = 0;

  [[noreturn]] void fail(const std::string& msg) {
    throw ConfalError(kErrParse, "expression offset " + std::to_string(i) + ": " + msg);
  }
  void ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    ws();
    if (i < s.size() && s[i] == c) { ++i; return true; }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  std::string ident() {
    ws();
    size_t j = i;
    while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) ||
                            s[j] == '_'))
      ++j;
    if (j == i) fail("expected a name");
    std::string t = s.substr(i, j - i);
    i = j;
    return t;
  }
  Rational rational_until(char stop) {
    ws();
    size_t j = s.find(stop, i);
    if (j == std::string::npos) fail(std::string("expected '") + stop + "'");
    std::string t = s.substr(i, j - i);
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back())))
      t.pop_back();
    i = j;
    try {
      return parse_rational(t);
    } catch (...) {
      fail("bad rational '" + t + "'");
    }
  }

  ModElement sum() {
    ModElement e = atom();
    while (eat('+')) mod_add(e, atom(), ratio(1));
    return e;
  }
  ModElement atom() {
    ws();
    if (i + 1 < s.size() && s[i] == 'c' && s[i + 1] == ':') {
      i += 2;
      Rational c = rational_until('*');
      expect('*');
      ModElement e = atom();
      ModElement out;
      mod_add(out, e, c);
      return out;
    }
    std::string name = ident();
    if (name == "prod" && eat('(')) {
      ws();
      size_t j = i;
      while (j < s.size() && s[j] != ',') ++j;
      std::string t = s.substr(i, j - i);
      while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back())))
        t.pop_back();
      int n = parse_int(t, 0, "product index");
      i = j;
      expect(',');
      ModElement u = sum();
      expect(',');
      ModElement v = sum();
      expect(')');
      LambdaPoly p = env_lambda_product(E, u, v);
      auto it = p.find(n);
      return it == p.end() ? ModElement{} : it->second;
    }
    if (name == "d" && eat('(')) {
      ModElement e = sum();
      expect(')');
      ModElement out;
      for (const auto& [m, c] : e) {
        ModMonomial dm = m;
        dm.word.insert(dm.word.begin(), op_d());
        mod_add(out, dm, c);
      }
      return out;
    }
    const GeneratorSet& gens = E.lie->gens;
    if (!gens.contains(name)) fail("undeclared generator '" + name + "'");
    ModElement out;
    mod_add(out, ModMonomial{{}, gens.index_of(name)}, ratio(1));
    return out;
  }
};

}  // namespace

ModElement eval_mod_expr(const Envelope& E, const std::string& expr) {
  ExprParser p{E, expr};
  ModElement e = p.sum();
  p.ws();
  if (p.i != expr.size()) p.fail("trailing input");
  return e;
}

}  // namespace confal
