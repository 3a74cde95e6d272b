#include "confal.h"

#include <cstdlib>
#include <cstring>
#include <sstream>

#include "algfile.hpp"
#include "error.hpp"

using namespace confal;

struct confal_algebra {
  AlgebraFile file;
  std::unique_ptr<Envelope> env;

  Envelope& ensure_env() {
    if (!env)
      env = std::make_unique<Envelope>(
          build_envelope(file.alg, file.env.order, file.env.bounds));
    return *env;
  }
};

namespace {

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void set_str(char** slot, const std::string& s) {
  if (slot) *slot = dup(s);
}

template <class F>
int guarded(char** err, F&& f) {
  if (err) *err = nullptr;
  try {
    return f();
  } catch (const ConfalError& e) {
    set_str(err, e.what());
    return e.code == kErrUsage ? kErrParse : e.code;  // usage and parse share 2
  } catch (const std::exception& e) {
    set_str(err, std::string("internal error: ") + e.what());
    return 70;
  } catch (...) {
    set_str(err, "internal error");
    return 70;
  }
}

confal_algebra* load(char** err, AlgebraFile (*go)(const std::string&),
                     const char* arg) {
  confal_algebra* out = nullptr;
  guarded(err, [&] {
    if (!arg) throw ConfalError(kErrUsage, "null input");
    out = new confal_algebra{go(arg), nullptr};
    return 0;
  });
  return out;
}

std::string generic_table(const ConformalAlgebraDesc& a) {
  std::ostringstream os;
  os << "table " << a.name << " generic\n";
  auto emit = [&](const char* kw, Which w) {
    for (const auto& p : a.gens.names)
      for (const auto& q : a.gens.names) {
        if (a.graded() && a.grade_of(p) + a.grade_of(q) > a.grade_cap) continue;
        os << kw << " " << p << " " << q << " = "
           << lambda_product(a, ConfElement::gen(p), ConfElement::gen(q), w).str()
           << "\n";
      }
  };
  if (a.kind == AlgKind::Poisson) {
    emit("COMM", Which::Product);
    emit("BRACKET", Which::Bracket);
  } else if (a.kind == AlgKind::Lie) {
    emit("BRACKET", Which::Bracket);
  } else {
    emit("PROD", Which::Product);
  }
  return os.str();
}

}  // namespace

extern "C" {

const char* confal_version(void) { return "confal 1.0.0"; }

confal_algebra* confal_load_file(const char* path, char** err) {
  return load(err, load_algebra_file, path);
}

confal_algebra* confal_load_string(const char* text, char** err) {
  return load(err, parse_algebra, text);
}

void confal_release(confal_algebra* alg) { delete alg; }

void confal_free_string(char* s) { std::free(s); }

int confal_verify(confal_algebra* alg, int max_dpow, char** report, char** err) {
  return guarded(err, [&] {
    if (!alg) throw ConfalError(kErrUsage, "null algebra");
    AxiomReport rep =
        max_dpow > 0 ? check_axioms(alg->file.alg, max_dpow) : check_axioms(alg->file.alg);
    std::ostringstream os;
    os << "verify " << alg->file.alg.name << "\n" << rep.summary() << "\n";
    for (const auto& v : rep.violations) os << v << "\n";
    set_str(report, os.str());
    return rep.pass() ? 0 : 1;
  });
}

int confal_complete(confal_algebra* alg, char** out, char** err) {
  return guarded(err, [&] {
    if (!alg) throw ConfalError(kErrUsage, "null algebra");
    Envelope& E = alg->ensure_env();
    std::ostringstream os;
    os << certificate(E.sys);
    os << "stats seeds=" << E.stats.seeds << " processed=" << E.stats.processed
       << " discovered=" << E.stats.discovered << " dropped=" << E.stats.dropped
       << "\n";
    set_str(out, os.str());
    return 0;
  });
}

int confal_normal_form(confal_algebra* alg, const char* expr, char** out,
                       char** err) {
  return guarded(err, [&] {
    if (!alg || !expr) throw ConfalError(kErrUsage, "null argument");
    Envelope& E = alg->ensure_env();
    ModElement nf = mod_normal_form(E.sys, eval_mod_expr(E, expr));
    set_str(out, mod_elem_str(nf, E.lie->gens) + "\n");
    return 0;
  });
}

int confal_basis(confal_algebra* alg, int max_degree, int max_dpow, char** out,
                 char** err) {
  return guarded(err, [&] {
    if (!alg) throw ConfalError(kErrUsage, "null algebra");
    if (max_degree < 1 || max_dpow < 0)
      throw ConfalError(kErrUsage, "basis window needs max_degree >= 1, max_dpow >= 0");
    Envelope& E = alg->ensure_env();
    Bounds window{max_degree, max_dpow, alg->file.env.bounds.max_index};
    std::vector<ModMonomial> words = enumerate_reduced(E.sys, window);
    std::ostringstream os;
    os << "basis " << alg->file.alg.name << " degree<=" << max_degree
       << " dpow<=" << max_dpow << "\n";
    os << "words " << words.size() << "\n";
    for (const auto& m : words) os << mod_mono_str(m, E.lie->gens) << "\n";
    set_str(out, os.str());
    return 0;
  });
}

int confal_table(confal_algebra* alg, const char* target, int cap, char** out,
                 char** err) {
  return guarded(err, [&] {
    if (!alg || !target) throw ConfalError(kErrUsage, "null argument");
    const std::string t = target;
    std::string text;
    if (t == "generic") {
      text = generic_table(alg->file.alg);
    } else {
      if (cap < 1) throw ConfalError(kErrUsage, "table cap must be >= 1");
      if (t == "pv2") {
        text = pv2_table(alg->ensure_env(), cap).dump();
      } else if (t == "pv3") {
        text = pv3_table(alg->ensure_env(), cap).dump();
      } else if (t == "pk10") {
        text = pk10_table(cap).dump();
      } else if (t == "pk10hat") {
        PoissonTable base = pk10_table(cap);
        text = pk10_hatted_table(base, cap).dump();
      } else {
        throw ConfalError(kErrUsage, "unknown table target '" + t + "'");
      }
    }
    set_str(out, text);
    return 0;
  });
}

}  // extern "C"
